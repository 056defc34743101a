#include "thetasum/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "thetasum/errors.hpp"

namespace thetasum::specfun {

namespace {

// Godfrey's coefficients for the Lanczos approximation with g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos{
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640561764;
constexpr double kLn2 = 0.69314718055994530941723212145817657;
constexpr double kLnPi = 1.14472988584940017414342735135305871;

bool near_nonpositive_integer(double x) {
  return x <= kPoleTolerance && std::abs(x - std::round(x)) < kPoleTolerance;
}

// Gamma(x) for x >= 1/2.
double lanczos_gamma(double x) {
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) series += kLanczos[k] / (z + static_cast<double>(k));
  const double t = z + kLanczosG + 0.5;
  // Split the power so that t^(z+1/2) does not overflow before exp(-t) is applied.
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half * (half * std::exp(-t)) * series;
}

// Chebyshev-weighted acceleration of the alternating eta series.
constexpr int kEtaTerms = 42;

struct EtaWeights {
  std::array<double, kEtaTerms + 1> d{};
  EtaWeights() {
    const double n = kEtaTerms;
    double term = 1.0 / n;
    double acc = term;
    d[0] = n * acc;
    for (int i = 1; i <= kEtaTerms; ++i) {
      term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i) * (2.0 * i - 1.0));
      acc += term;
      d[i] = n * acc;
    }
  }
};

const EtaWeights& eta_weights() {
  static const EtaWeights weights;
  return weights;
}

// zeta(s) for s >= 1/2, s != 1.
double zeta_alternating(double s) {
  const auto& d = eta_weights().d;
  const double dn = d[kEtaTerms];
  double eta = 0.0;
  for (int k = kEtaTerms - 1; k >= 0; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    eta += sign * (d[k] - dn) / std::pow(k + 1.0, s);
  }
  eta = -eta / dn;
  // 1 - 2^(1-s), kept accurate as s -> 1.
  const double denom = -std::expm1((1.0 - s) * kLn2);
  return eta / denom;
}

// B_{2n}, n = 0..kMaxBernoulli, from tangent numbers in exact arithmetic.
constexpr int kMaxBernoulli = 60;

struct BernoulliTable {
  std::array<double, kMaxBernoulli + 1> b{};
  BernoulliTable() {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    constexpr int n = kMaxBernoulli;
    std::array<cpp_int, n + 1> t;
    t[1] = 1;
    for (int k = 2; k <= n; ++k) t[k] = t[k - 1] * (k - 1);
    for (int k = 2; k <= n; ++k) {
      for (int j = k; j <= n; ++j) t[j] = t[j - 1] * (j - k) + t[j] * (j - k + 2);
    }
    b[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      const cpp_int four_k = cpp_int(1) << (2 * k);
      cpp_int num = t[k] * (2 * k);
      if (k % 2 == 0) num = -num;
      const cpp_rational value(num, four_k * (four_k - 1));
      b[k] = value.convert_to<double>();
    }
  }
};

}  // namespace

double sin_half_pi(double x) {
  const double r = std::fmod(x, 4.0);
  if (r == 0.0 || r == 2.0 || r == -2.0) return 0.0;
  if (r == 1.0 || r == -3.0) return 1.0;
  if (r == -1.0 || r == 3.0) return -1.0;
  return std::sin(0.5 * kPi * r);
}

double gamma_real(double x) {
  if (!std::isfinite(x)) throw DomainError("gamma_real: argument must be finite");
  if (near_nonpositive_integer(x)) {
    throw PoleError("gamma_real: pole at x = " + std::to_string(std::round(x)));
  }
  if (x == std::floor(x) && x >= 1.0 && x <= 171.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  if (x < 0.5) {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return kPi / (sin_half_pi(2.0 * x) * lanczos_gamma(1.0 - x));
  }
  return lanczos_gamma(x);
}

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) throw DomainError("log_gamma: requires finite x > 0");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 15.0) return std::log(gamma_real(x));
  // Stirling series; the first neglected term is below 1e-21 at x = 15.
  constexpr std::array<double, 8> coeff{
      1.0 / 12.0,       -1.0 / 360.0,  1.0 / 1260.0,     -1.0 / 1680.0,
      1.0 / 1188.0,     -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0,
  };
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double corr = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) corr = corr * inv2 + *it;
  corr *= inv;
  return (x - 0.5) * std::log(x) - x + kLogSqrtTwoPi + corr;
}

double digamma_int(int m) {
  if (m < 0) throw DomainError("digamma_int: requires m >= 0");
  // Kahan-compensated harmonic sum.
  double sum = -kEulerGamma;
  double comp = 0.0;
  for (int r = 1; r <= m; ++r) {
    const double y = 1.0 / r - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

namespace {

// Taylor coefficients of zeta about s = 0.
constexpr std::array<double, 15> kZetaTaylorAtZero{
    -0.5,
    -0.91893853320467274178,
    -1.0031782279542924256,
    -1.000785194477042408,
    -0.99987929950057116496,
    -1.000001940896320456,
    -1.0000013011460139596,
    -0.99999983138417361078,
    -1.0000000057646759799,
    -1.0000000009110164892,
    -0.99999999985029924058,
    -1.0000000000094068957,
    -1.0000000000000409258,
    -0.99999999999993460095,
    -1.000000000000006544,
};
constexpr double kZetaTaylorRadius = 0.05;

double zeta_near_zero(double s) {
  double v = 0.0;
  for (auto it = kZetaTaylorAtZero.rbegin(); it != kZetaTaylorAtZero.rend(); ++it) v = v * s + *it;
  return v;
}

}  // namespace

double zeta_real(double s) {
  if (!std::isfinite(s)) throw DomainError("zeta_real: argument must be finite");
  if (std::abs(s - 1.0) < kPoleTolerance) throw PoleError("zeta_real: pole at s = 1");
  if (s >= 0.5) return zeta_alternating(s);
  if (s < 0.0 && std::abs(s - 2.0 * std::round(0.5 * s)) < kPoleTolerance) return 0.0;
  if (std::abs(s) < kZetaTaylorRadius) return zeta_near_zero(s);
  if (1.0 - s > 100.0) {
    const SignedLog parts = zeta_signed_log(s);
    return parts.sign * std::exp(parts.log_abs);
  }
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * zeta_alternating(1.0 - s) *
         gamma_real(1.0 - s) * sin_half_pi(s);
}

SignedLog zeta_signed_log(double s) {
  if (!std::isfinite(s) || s >= 0.5) throw DomainError("zeta_signed_log: requires s < 1/2");
  if (s < 0.0 && std::abs(s - 2.0 * std::round(0.5 * s)) < kPoleTolerance) {
    return {-std::numeric_limits<double>::infinity(), 0};
  }
  if (std::abs(s) < kZetaTaylorRadius) {
    const double v = zeta_near_zero(s);
    return {std::log(std::abs(v)), v < 0 ? -1 : 1};
  }
  const double sine = sin_half_pi(s);
  const double zeta_dual = zeta_alternating(1.0 - s);
  const double log_abs = s * kLn2 + (s - 1.0) * kLnPi + std::log(std::abs(zeta_dual)) +
                         log_gamma(1.0 - s) + std::log(std::abs(sine));
  const int sign = ((sine < 0) != (zeta_dual < 0)) ? -1 : 1;
  return {log_abs, sign};
}

double bernoulli_even(int n) {
  if (n < 1 || n > kMaxBernoulli) {
    throw RangeError("bernoulli_even: n must lie in [1, 60], got " + std::to_string(n));
  }
  static const BernoulliTable table;
  return table.b[n];
}

double pochhammer(double x, int j) {
  if (j < 0) throw DomainError("pochhammer: requires j >= 0");
  double p = 1.0;
  for (int r = 0; r < j; ++r) p *= x + r;
  return p;
}

double coeff_c(int m, int j) {
  if (m < 1 || j < 0) throw DomainError("coeff_c: requires m >= 1 and j >= 0");
  // Running ratio keeps intermediates finite long after (m)_j and j! overflow.
  double c = 1.0;
  for (int r = 0; r < j; ++r) c *= (m + r) * (m + 0.5 + r) / (r + 1.0);
  return c;
}

}  // namespace thetasum::specfun
