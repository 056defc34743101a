#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "thetasum/types.hpp"

namespace thetasum::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kPrecondition = 2,
  kConvergence = 3,
  kUnwritable = 4,
};

/// Parses "RE", "RE+IMj", "RE-IMj" or "IMj". Throws DomainError otherwise.
Complex parse_complex(std::string_view text);
/// Comma-separated list of parse_complex tokens.
std::vector<Complex> parse_complex_list(std::string_view text);

/// Shortest form that reads back to the same binary64 (17 significant digits).
std::string format_real(double x);

inline constexpr std::string_view kSweepHeader =
    "a_re,a_im,w,method,value_re,value_im,err_estimate,abs_err_vs_oracle,terms_k,terms_j,terms_n,j0";

struct SweepConfig {
  std::vector<Complex> a_values;
  double w = 0.0;
  /// Empty means the automatic choice per w.
  std::vector<MethodChoice> methods;
  TruncationPolicy policy = policy::OptimalFirstMin{};
  std::string output_path;
};

/// One CSV data row (no trailing newline) for an evaluation at `a`.
/// `abs_err` < 0 leaves the oracle column empty.
std::string sweep_row(Complex a, double w, const Evaluation& e, double abs_err);

/// Evaluates every (a, method) pair and writes the CSV. Returns an exit code;
/// diagnostics go to `err`.
int cmd_sweep(const SweepConfig& config, const Limits& limits, std::ostream& err);

/// Full command-line entry point: eval, table1, sweep, verify.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thetasum::cli
