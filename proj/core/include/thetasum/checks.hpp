#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Self-verification suites run by `thetasum verify`. Each check evaluates one
// invariant over its full parameter grid and reports the worst case found.

namespace thetasum::checks {

enum class Suite { Specfun, Engine, Oracle, Appendix, All };

std::optional<Suite> parse_suite(std::string_view text);
std::string_view to_string(Suite suite);

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  /// Human-readable requirement, e.g. "<= 1e-11".
  std::string required;
};

std::vector<CheckResult> run(Suite suite);

/// Literal m = 1 specialisation of the even transform:
///   pi^2/6 + a/2 - sqrt(pi a) - (a/pi)^(3/2) exp(-pi^2/a) sum_{j<M} (3/2)_j (-a/pi^2)^j
/// (n = 1 only). Shared with the tests as an independent fixture.
double literal_s2(double a, int M);

/// Literal m = 2 specialisation, n = 1 only:
///   pi^4/90 - pi^2 a/6 - a^2/4 + (2/3) sqrt(pi) a^(3/2)
///   + (a/pi)^(7/2) exp(-pi^2/a) sum_{j<M} (5/2)_j (2)_j / j! (-a/pi^2)^j
double literal_s4(double a, int M);

}  // namespace thetasum::checks
