#pragma once

#include <optional>
#include <span>

#include "thetasum/types.hpp"

namespace thetasum::engine {

/// Tolerance used to recognise integer exponents.
inline constexpr double kIntegerTolerance = 1e-9;
/// Distance to an odd integer below which the generic expansion is flagged.
inline constexpr double kNearOddWidth = 0.05;

/// Right-hand side of the classical theta transformation
///   sum_{n>=1} exp(-a n^2) = sqrt(pi/a)/2 - 1/2 + sqrt(pi/a) sum_{n=1}^{n_max} exp(-pi^2 n^2 / a).
Complex classical_pj_rhs(Complex a, int n_max);
/// Same, with n_max chosen so the first omitted term is below 1e-17 relative.
Complex classical_pj_rhs(Complex a);

/// Contribution of the pole at s = (1 - w)/2 to the small-a expansion.
///
/// For w = 2m+1: ((-a)^m / m!) (gamma - log(a)/2 + psi(m+1)/2).
/// Otherwise:    Gamma(1/2 - w/2) a^((w-1)/2) / 2.
/// Throws EvenExponentError for even integer w.
Complex j_term(const SumSpec& spec);

/// Small-a expansion for w not an even integer:
///   J(a;w) + sum'_{k<N} (-1)^k zeta(w - 2k) a^k / k!
/// with the k = m term dropped when w = 2m+1.
///
/// Under OptimalFirstMin, N is the index of the first local minimum of |term_k|
/// (that term is the first omitted one), capped at limits.max_k.
Evaluation eval_generic(const SumSpec& spec, const TruncationPolicy& policy, const Limits& limits = {});

struct UpsilonResult {
  Complex value;
  /// Index of the last term kept (the least term under OptimalFirstMin).
  int j_used = 0;
  /// Magnitude of the first term not kept.
  double first_omitted = 0.0;
};

/// Tail factor Upsilon_n(a;m) = sum_j c_j (-a / (pi^2 n^2))^j, truncated per policy.
/// Kept-term magnitudes, plus the first omitted one, go to `log` when given.
UpsilonResult upsilon(Complex a, int m, int n, const TruncationPolicy& policy, const Limits& limits = {},
                      TermLog* log = nullptr);

/// Number of n-terms; nullopt selects the automatic rule.
using NTerms = std::optional<int>;

/// Poisson-Jacobi-type transform for w = 2m:
///   Gamma(1/2-m) a^(m-1/2)/2 + sum_{k=0}^{m} (-1)^k zeta(2m-2k) a^k / k!
///   + (-1)^m (a/pi)^(2m-1/2) sum_{n=1}^{n_max} Upsilon_n(a;m) exp(-pi^2 n^2 / a) / n^(2m).
///
/// Automatic n_max: smallest n with |exp(-pi^2 n^2/a)| / n^(2m) < 1e-18 |value so far|,
/// capped at limits.max_n.
/// Throws MismatchError if |w - 2m| > 1e-9.
Evaluation eval_even(const SumSpec& spec, int m, const TruncationPolicy& policy, NTerms n_max = std::nullopt,
                     const Limits& limits = {});

/// pi^2 n^2 / |a| - (2m + 1/2). A labelled heuristic for the least-term index.
double optimal_index_heuristic(double a, int m, int n);
/// pi^2 / a - 5/2, the least-term predictor quoted for m = 2, n = 1.
double optimal_index_m2(double a);

/// Method dispatch. Direct delegates to the oracle.
Evaluation eval(const SumSpec& spec, MethodChoice method, const TruncationPolicy& policy, const Limits& limits = {});

/// The method picked when none is requested: EvenTransform for even integer w, else Generic.
MethodChoice auto_method(double w);

/// Even-exponent index m if w is within 1e-9 of 2m, m >= 1.
std::optional<int> even_index(double w);
/// Odd-exponent index m if w is within 1e-9 of 2m+1, m >= 0.
std::optional<int> odd_index(double w);

struct SlopeFit {
  double slope = 0.0;
  std::vector<double> remainders;
};

/// Least-squares slope of log|R_N(a)| against log a, where R_N is the oracle
/// minus the generic expansion truncated at N terms.
///
/// Requires w not even, N > w/2 + 1/2 and at least 4 grid points in (0, 0.2].
/// Throws PrecisionError when some |R_N| is below 100x the oracle error bound.
SlopeFit remainder_fit(double w, int N, std::span<const double> a_grid);
double remainder_slope(double w, int N, std::span<const double> a_grid);

}  // namespace thetasum::engine
