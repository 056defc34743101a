#include "thetasum/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "thetasum/errors.hpp"

namespace thetasum::oracle {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log T(n), the bound on sum_{k>n} |term_k|.
double log_tail_bound(double re_a, double w, double n) {
  const double next = n + 1.0;
  return -re_a * next * next - w * std::log(next) - std::log(-std::expm1(-re_a * (2.0 * n + 3.0)));
}

}  // namespace

OracleResult direct_sum(const SumSpec& spec, double eps) {
  require_valid(spec, /*allow_zero_w=*/true);
  if (!(eps >= kMinTolerance)) throw DomainError("precondition failed: oracle eps >= 1e-16");

  const double re_a = spec.a.real();
  const double log_eps = std::log(eps);
  if (log_tail_bound(re_a, spec.w, static_cast<double>(kMaxTerms)) > log_eps) {
    throw ConvergenceError("direct summation needs more than 1e7 terms at Re(a) = " + std::to_string(re_a) +
                           "; use an expansion instead");
  }

  const bool real_a = spec.a.imag() == 0.0;
  CompensatedSum re;
  CompensatedSum im;
  double abs_total = 0.0;
  long n = 0;
  double log_tail = 0.0;
  do {
    ++n;
    const double nn = static_cast<double>(n);
    const double log_n = std::log(nn);
    if (real_a) {
      const double term = std::exp(-re_a * nn * nn - spec.w * log_n);
      re.add(term);
      abs_total += term;
    } else {
      const Complex term = std::exp(-spec.a * (nn * nn) - spec.w * log_n);
      re.add(term.real());
      im.add(term.imag());
      abs_total += std::abs(term);
    }
    log_tail = log_tail_bound(re_a, spec.w, nn);
  } while (log_tail > log_eps);

  OracleResult out;
  out.value = {re.value(), im.value()};
  out.n_terms = n;
  // A few ulps of headroom so the bound survives the rounding in exp/log.
  out.tail_bound = std::exp(log_tail) * (1.0 + 64.0 * std::numeric_limits<double>::epsilon());
  out.rounding_bound = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * abs_total;
  return out;
}

OracleComparison compare_to_oracle(std::complex<double> value, const SumSpec& spec) {
  const OracleResult ref = direct_sum(spec, kMinTolerance);
  return {std::abs(value - ref.value), ref.tail_bound, ref.rounding_bound};
}

double abs_error(std::complex<double> value, const SumSpec& spec) {
  return compare_to_oracle(value, spec).abs_error;
}

}  // namespace thetasum::oracle
