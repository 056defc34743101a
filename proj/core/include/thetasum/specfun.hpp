#pragma once

// Real-argument special functions needed by the expansions of
//   S(a;w) = sum_{n>=1} exp(-a n^2) / n^w.
//
// Every function here is pure. Precomputed tables are built once on first use
// and are immutable afterwards, so concurrent calls are safe.

namespace thetasum::specfun {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kSqrtPi = 1.77245385090551602729816748334114518;

/// Distance below which an argument is treated as sitting on a pole.
inline constexpr double kPoleTolerance = 1e-12;

/// Gamma function. Throws PoleError at 0, -1, -2, ...
double gamma_real(double x);

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double log_gamma(double x);

/// psi(m + 1) = -gamma + H_m, the digamma function at a positive integer.
double digamma_int(int m);

/// Riemann zeta on the real line. Throws PoleError at s = 1.
///
/// s >= 1/2 uses an accelerated alternating (eta) series; s < 1/2 goes through
/// the functional equation
///   zeta(s) = 2^s pi^(s-1) zeta(1-s) Gamma(1-s) sin(pi s / 2).
/// A Taylor series about 0 covers |s| < 0.05. Trivial zeros at negative even
/// integers are returned as exactly 0.
double zeta_real(double s);

/// ln|zeta(s)| together with the sign of zeta(s), for s < 1/2.
///
/// Used where zeta(s) itself overflows (large negative s) but a product such as
/// zeta(w - 2k) a^k / k! is still representable. A trivial zero yields
/// sign == 0 and log_abs == -inf.
struct SignedLog {
  double log_abs;
  int sign;
};
SignedLog zeta_signed_log(double s);

/// Bernoulli number B_{2n}, 1 <= n <= 60. Throws RangeError otherwise.
///
/// The table is built from tangent numbers in exact integer arithmetic and
/// rounded once to binary64.
double bernoulli_even(int n);

/// Rising factorial x (x+1) ... (x+j-1); 1 when j == 0.
double pochhammer(double x, int j);

/// Inverse-factorial coefficient c_j = (m)_j (m+1/2)_j / j!.
double coeff_c(int m, int j);

/// sin(pi x / 2) with the argument reduced exactly modulo 4 first.
double sin_half_pi(double x);

}  // namespace thetasum::specfun
