#pragma once

#include <complex>

#include "thetasum/types.hpp"

namespace thetasum::oracle {

/// Smallest tolerance the direct sum accepts; binary64 cannot certify tighter.
inline constexpr double kMinTolerance = 1e-16;

/// Largest number of terms direct_sum will add before giving up.
inline constexpr long kMaxTerms = 10'000'000;

struct OracleResult {
  std::complex<double> value;
  long n_terms = 0;
  /// Rigorous bound on the omitted tail.
  double tail_bound = 0.0;
  /// n_terms * machine epsilon * sum |term|.
  double rounding_bound = 0.0;
};

/// Direct summation of sum_{n>=1} exp(-a n^2) / n^w with compensated
/// accumulation.
///
/// Stops at the least n whose tail bound
///   T(n) = |exp(-a (n+1)^2)| / ((n+1)^w (1 - exp(-Re(a) (2n+3))))
/// is <= eps. w = 0 is accepted so the classical theta identity can be checked.
///
/// Throws DomainError for Re(a) <= 0, w < 0 or eps < 1e-16, and
/// ConvergenceError when more than 10^7 terms would be needed.
OracleResult direct_sum(const SumSpec& spec, double eps = kMinTolerance);

struct OracleComparison {
  double abs_error = 0.0;
  double tail_bound = 0.0;
  double rounding_bound = 0.0;
};

/// |value - S(a;w)| with the oracle's own error bounds alongside.
OracleComparison compare_to_oracle(std::complex<double> value, const SumSpec& spec);

/// |value - S(a;w)| against direct_sum at eps = 1e-16.
double abs_error(std::complex<double> value, const SumSpec& spec);

}  // namespace thetasum::oracle
