#include "thetasum/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "thetasum/errors.hpp"
#include "thetasum/oracle.hpp"
#include "thetasum/specfun.hpp"

namespace thetasum::engine {

namespace sf = thetasum::specfun;

namespace {

constexpr double kPi = sf::kPi;
constexpr double kPiSquared = kPi * kPi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Relative floor below which further n-terms of the even transform are dropped.
constexpr double kNFloor = 1e-18;
// Relative size of the first omitted term in the automatic classical sum.
constexpr double kClassicalFloor = 1e-17;
constexpr int kClassicalMaxTerms = 1000;

void require_re_positive(Complex a) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !(a.real() > 0.0)) {
    throw DomainError("precondition failed: Re(a) > 0");
  }
}

// Principal-branch a^p.
Complex principal_pow(Complex a, double p) { return std::exp(p * std::log(a)); }

Complex int_pow(Complex z, int k) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

// (-1)^k zeta(w - 2k) a^k / k!. Past s = -40 the zeta value and a^k / k! are
// combined in log form so neither overflows on its own.
Complex algebraic_term(double w, int k, Complex a, Complex log_a) {
  const double s = w - 2.0 * k;
  const double parity = (k % 2 == 0) ? 1.0 : -1.0;
  if (s >= -40.0) {
    Complex power{1.0, 0.0};
    for (int i = 1; i <= k; ++i) power *= a / static_cast<double>(i);
    return parity * sf::zeta_real(s) * power;
  }
  const sf::SignedLog z = sf::zeta_signed_log(s);
  if (z.sign == 0) return {0.0, 0.0};
  const Complex log_mag = z.log_abs + static_cast<double>(k) * log_a - sf::log_gamma(k + 1.0);
  return parity * z.sign * std::exp(log_mag);
}

struct ClassicalSum {
  Complex value;
  int n_terms = 0;
  double first_omitted = 0.0;
};

ClassicalSum classical_sum(Complex a, int n_max, bool automatic) {
  require_re_positive(a);
  if (n_max < 1) throw DomainError("precondition failed: n_max >= 1");
  const Complex root = std::sqrt(kPi / a);
  const Complex head = 0.5 * root - 0.5;
  Complex dual{0.0, 0.0};
  int n = 1;
  for (;; ++n) {
    dual += std::exp(-kPiSquared * static_cast<double>(n) * n / a);
    const double next = std::abs(root * std::exp(-kPiSquared * static_cast<double>(n + 1) * (n + 1) / a));
    if (automatic) {
      if (next < kClassicalFloor * std::abs(head + root * dual) || n >= n_max) {
        return {head + root * dual, n, next};
      }
    } else if (n >= n_max) {
      return {head + root * dual, n, next};
    }
  }
}

double near_odd_distance(double w) {
  const double k = std::max(0.0, std::round((w - 1.0) / 2.0));
  return std::abs(w - 2.0 * k - 1.0);
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

std::optional<int> even_index(double w) {
  const double half = std::round(w / 2.0);
  if (half >= 1.0 && std::abs(w - 2.0 * half) <= kIntegerTolerance) return static_cast<int>(half);
  return std::nullopt;
}

std::optional<int> odd_index(double w) {
  const double m = std::round((w - 1.0) / 2.0);
  if (m >= 0.0 && std::abs(w - 2.0 * m - 1.0) <= kIntegerTolerance) return static_cast<int>(m);
  return std::nullopt;
}

MethodChoice auto_method(double w) {
  if (even_index(w)) return MethodChoice::EvenTransform;
  if (std::abs(w) <= kIntegerTolerance) return MethodChoice::ClassicalPJ;
  return MethodChoice::Generic;
}

Complex classical_pj_rhs(Complex a, int n_max) { return classical_sum(a, n_max, false).value; }

Complex classical_pj_rhs(Complex a) { return classical_sum(a, kClassicalMaxTerms, true).value; }

Complex j_term(const SumSpec& spec) {
  require_valid(spec);
  if (even_index(spec.w)) {
    throw EvenExponentError("w = " + std::to_string(spec.w) + " is an even integer; use the even transform");
  }
  const Complex log_a = std::log(spec.a);
  if (const auto m = odd_index(spec.w)) {
    const Complex lead = int_pow(-spec.a, *m) / sf::gamma_real(*m + 1.0);
    return lead * (sf::kEulerGamma - 0.5 * log_a + 0.5 * sf::digamma_int(*m));
  }
  return 0.5 * sf::gamma_real(0.5 - 0.5 * spec.w) * std::exp(0.5 * (spec.w - 1.0) * log_a);
}

Evaluation eval_generic(const SumSpec& spec, const TruncationPolicy& policy, const Limits& limits) {
  require_valid(spec);
  require_valid(policy);
  const Complex j = j_term(spec);  // also rejects even w
  const auto skip = odd_index(spec.w);
  const Complex log_a = std::log(spec.a);

  Evaluation out;
  out.method = MethodChoice::Generic;
  out.near_odd_warning = !skip && near_odd_distance(spec.w) < kNearOddWidth;

  // Terms of the primed sum in order, with their k.
  std::vector<std::pair<int, Complex>> terms;
  auto next_k = [&, k = 0]() mutable {
    if (skip && k == *skip) ++k;
    return k++;
  };
  auto push = [&] {
    const int k = next_k();
    terms.emplace_back(k, algebraic_term(spec.w, k, spec.a, log_a));
    out.term_log.append("k", k, std::abs(terms.back().second));
  };

  // kept = number of leading entries of `terms` included in the sum.
  std::size_t kept = 0;
  const auto cap = static_cast<std::size_t>(limits.max_k);
  if (const auto* fixed = std::get_if<policy::Fixed>(&policy)) {
    // Fixed(N) keeps the terms with k < N; the k = m term does not count.
    const int bound = std::min(fixed->count, limits.max_k);
    while (true) {
      push();
      if (terms.back().first >= bound) break;
      ++kept;
    }
  } else {
    const auto* target = std::get_if<policy::ErrorTarget>(&policy);
    const std::size_t limit = target ? std::min(cap, static_cast<std::size_t>(target->cap)) : cap;
    push();
    while (kept < limit) {
      if (target && std::abs(terms[kept].second) < target->eps) break;
      push();
      // First local minimum: the term at `kept` is no larger than its successor.
      if (std::abs(terms[kept + 1].second) >= std::abs(terms[kept].second)) break;
      ++kept;
    }
  }

  Complex sum{0.0, 0.0};
  for (std::size_t i = kept; i-- > 0;) sum += terms[i].second;
  out.value = j + sum;
  out.err_estimate = std::abs(terms[kept].second);
  out.terms_used["k"] = static_cast<int>(kept);
  return out;
}

UpsilonResult upsilon(Complex a, int m, int n, const TruncationPolicy& policy, const Limits& limits, TermLog* log) {
  require_re_positive(a);
  require_valid(policy);
  if (m < 1 || n < 1) throw DomainError("precondition failed: m >= 1 and n >= 1");

  const std::string series = "j[n=" + std::to_string(n) + "]";
  const Complex x = -a / (kPiSquared * static_cast<double>(n) * n);
  Complex term{1.0, 0.0};
  auto advance = [&](int j) { term *= (m + j) * (m + 0.5 + j) / (j + 1.0) * x; };

  // Keep terms j = 0..last; `term` ends as the first omitted one.
  Complex sum{0.0, 0.0};
  int last = 0;
  if (const auto* fixed = std::get_if<policy::Fixed>(&policy)) {
    const int count = std::min(fixed->count, limits.max_j);
    for (int j = 0; j < count; ++j) {
      if (log) log->append(series, j, std::abs(term));
      sum += term;
      advance(j);
    }
    last = count - 1;
  } else {
    const auto* target = std::get_if<policy::ErrorTarget>(&policy);
    const int limit = target ? std::min(limits.max_j, target->cap) : limits.max_j;
    for (int j = 0;; ++j) {
      if (log) log->append(series, j, std::abs(term));
      sum += term;
      const double current = std::abs(term);
      advance(j);
      last = j;
      if (j + 1 >= limit) break;
      if (std::abs(term) >= current) break;  // j is the least term
      if (target && std::abs(term) < target->eps) break;
    }
  }
  if (log) log->append(series, last + 1, std::abs(term));
  return {sum, last, std::abs(term)};
}

Evaluation eval_even(const SumSpec& spec, int m, const TruncationPolicy& policy, NTerms n_max, const Limits& limits) {
  require_valid(spec);
  require_valid(policy);
  if (m < 1) throw DomainError("precondition failed: m >= 1");
  if (std::abs(spec.w - 2.0 * m) > kIntegerTolerance) {
    throw MismatchError("w = " + std::to_string(spec.w) + " is not 2m for m = " + std::to_string(m));
  }
  if (n_max && *n_max < 1) throw DomainError("precondition failed: n_max >= 1");

  const Complex a = spec.a;
  Evaluation out;
  out.method = MethodChoice::EvenTransform;

  // Gamma(1/2 - m) from Gamma(1/2) = sqrt(pi) by the downward recurrence.
  double gamma_half = sf::kSqrtPi;
  for (int r = 1; r <= m; ++r) gamma_half /= 0.5 - r;
  const Complex head = 0.5 * gamma_half * principal_pow(a, m - 0.5);
  double magnitude_total = std::abs(head);

  Complex algebraic{0.0, 0.0};
  Complex power{1.0, 0.0};
  for (int k = 0; k <= m; ++k) {
    if (k > 0) power *= a / static_cast<double>(k);
    const double parity = (k % 2 == 0) ? 1.0 : -1.0;
    const Complex term = parity * sf::zeta_real(2.0 * (m - k)) * power;
    out.term_log.append("k", k, std::abs(term));
    algebraic += term;
    magnitude_total += std::abs(term);
  }
  out.terms_used["k"] = m + 1;

  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const Complex prefactor = sign * principal_pow(a / kPi, 2.0 * m - 0.5);
  const int n_cap = n_max ? std::min(*n_max, limits.max_n) : limits.max_n;

  auto exp_factor = [&](int n) {
    return std::exp(-kPiSquared * static_cast<double>(n) * n / a) / std::pow(static_cast<double>(n), 2.0 * m);
  };

  Complex tail{0.0, 0.0};
  double upsilon_omitted = 0.0;
  int n = 1;
  for (;; ++n) {
    const Complex e = exp_factor(n);
    out.term_log.append("n", n, std::abs(e));
    const UpsilonResult u = upsilon(a, m, n, policy, limits, &out.term_log);
    out.j0_per_n.push_back(u.j_used);
    if (n == 1) {
      out.terms_used["j"] = u.j_used + 1;
      upsilon_omitted = std::abs(e) * u.first_omitted;
    }
    tail += u.value * e;
    magnitude_total += std::abs(prefactor * u.value * e);
    if (n >= n_cap) break;
    if (!n_max && std::abs(e) < kNFloor * std::abs(head + algebraic + prefactor * tail)) break;
  }
  out.terms_used["n"] = n;

  out.value = head + algebraic + prefactor * tail;
  const double n_omitted = std::abs(exp_factor(n + 1));
  out.err_estimate = std::abs(prefactor) * (upsilon_omitted + n_omitted) + 4.0 * kEps * magnitude_total;
  return out;
}

double optimal_index_heuristic(double a, int m, int n) {
  if (!(std::abs(a) > 0.0)) throw DomainError("precondition failed: a != 0");
  return kPiSquared * static_cast<double>(n) * n / std::abs(a) - (2.0 * m + 0.5);
}

double optimal_index_m2(double a) {
  if (!(a > 0.0)) throw DomainError("precondition failed: a > 0");
  return kPiSquared / a - 2.5;
}

Evaluation eval(const SumSpec& spec, MethodChoice method, const TruncationPolicy& policy, const Limits& limits) {
  switch (method) {
    case MethodChoice::Direct: {
      const oracle::OracleResult r = oracle::direct_sum(spec);
      Evaluation out;
      out.method = MethodChoice::Direct;
      out.value = r.value;
      out.terms_used["n"] = static_cast<int>(r.n_terms);
      out.err_estimate = r.tail_bound + r.rounding_bound;
      return out;
    }
    case MethodChoice::Generic:
      return eval_generic(spec, policy, limits);
    case MethodChoice::EvenTransform: {
      require_valid(spec);
      const auto m = even_index(spec.w);
      if (!m) throw MismatchError("even transform requires w = 2m, got w = " + std::to_string(spec.w));
      return eval_even(spec, *m, policy, std::nullopt, limits);
    }
    case MethodChoice::ClassicalPJ: {
      require_valid(spec, /*allow_zero_w=*/true);
      if (std::abs(spec.w) > kIntegerTolerance) {
        throw MismatchError("classical transformation requires w = 0, got w = " + std::to_string(spec.w));
      }
      const ClassicalSum c = classical_sum(spec.a, kClassicalMaxTerms, true);
      Evaluation out;
      out.method = MethodChoice::ClassicalPJ;
      out.value = c.value;
      out.terms_used["n"] = c.n_terms;
      out.err_estimate = c.first_omitted;
      return out;
    }
  }
  throw DomainError("unknown method");
}

SlopeFit remainder_fit(double w, int N, std::span<const double> a_grid) {
  if (!std::isfinite(w) || !(w > 0.0)) throw DomainError("precondition failed: w > 0");
  if (even_index(w)) throw EvenExponentError("remainder_slope: w must not be an even integer");
  if (!(N > 0.5 * w + 0.5)) throw DomainError("precondition failed: N > w/2 + 1/2");
  if (a_grid.size() < 4) throw DomainError("precondition failed: at least 4 grid points");
  for (double a : a_grid) {
    if (!(a > 0.0 && a <= 0.2)) throw DomainError("precondition failed: grid points in (0, 0.2]");
  }

  SlopeFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (double a : a_grid) {
    const SumSpec spec{{a, 0.0}, w};
    const oracle::OracleResult ref = oracle::direct_sum(spec);
    const Evaluation approx = eval_generic(spec, policy::Fixed{N});
    const double remainder = std::abs(ref.value - approx.value);
    const double floor = ref.tail_bound + ref.rounding_bound;
    if (remainder < 100.0 * floor) {
      throw PrecisionError("remainder " + std::to_string(remainder) + " at a = " + std::to_string(a) +
                           " is below 100x the oracle error bound " + std::to_string(floor));
    }
    fit.remainders.push_back(remainder);
    xs.push_back(std::log(a));
    ys.push_back(std::log(remainder));
  }
  fit.slope = least_squares_slope(xs, ys);
  return fit;
}

double remainder_slope(double w, int N, std::span<const double> a_grid) { return remainder_fit(w, N, a_grid).slope; }

}  // namespace thetasum::engine
