#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace thetasum {

using Complex = std::complex<double>;

/// One instance of S(a;w) = sum_{n>=1} exp(-a n^2) / n^w.
struct SumSpec {
  Complex a;
  double w = 0.0;
};

/// Throws DomainError unless Re(a) > 0 and w is finite with w > 0
/// (w >= 0 when allow_zero_w is set).
void require_valid(const SumSpec& spec, bool allow_zero_w = false);

namespace policy {

/// Keep exactly `count` terms.
struct Fixed {
  int count = 1;
};

/// Truncate at the first local minimum of |term| (ties go to the smaller index).
struct OptimalFirstMin {};

/// Add terms until one falls below eps, at most `cap` of them, never past the
/// least term.
struct ErrorTarget {
  double eps = 1e-16;
  int cap = 1;
};

}  // namespace policy

using TruncationPolicy = std::variant<policy::Fixed, policy::OptimalFirstMin, policy::ErrorTarget>;

/// Throws DomainError on count < 1, eps <= 0 or cap < 1.
void require_valid(const TruncationPolicy& policy);

/// Parses "optimal", "fixed:N" or "target:EPS[:CAP]".
TruncationPolicy parse_policy(std::string_view text);
std::string to_string(const TruncationPolicy& policy);

enum class MethodChoice { Direct, Generic, EvenTransform, ClassicalPJ };

std::string_view to_string(MethodChoice method);
/// Accepts direct, generic, even, classical.
std::optional<MethodChoice> parse_method(std::string_view text);

/// Per-series record of term magnitudes in the order they were generated.
class TermLog {
 public:
  struct Entry {
    std::string series;
    int index = 0;
    double magnitude = 0.0;
  };

  /// Throws std::logic_error if `index` does not exceed the last index logged
  /// for the same series, or if magnitude is negative.
  void append(std::string series, int index, double magnitude);

  const std::vector<Entry>& entries() const { return entries_; }
  /// (index, magnitude) pairs of one series, in order.
  std::vector<std::pair<int, double>> series(std::string_view name) const;
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::map<std::string, int, std::less<>> last_index_;
};

struct Evaluation {
  Complex value;
  MethodChoice method = MethodChoice::Direct;
  /// Number of terms taken from each series ("k", "j", "n").
  std::map<std::string, int, std::less<>> terms_used;
  /// Magnitude of the first omitted term (plus a rounding floor for the even transform).
  double err_estimate = 0.0;
  TermLog term_log;
  /// Least-term index of the tail series, one entry per n for the even transform.
  std::vector<int> j0_per_n;
  /// w lies within 0.05 of an odd integer without being one.
  bool near_odd_warning = false;
};

/// Safety caps on series lengths.
struct Limits {
  int max_k = 400;
  int max_j = 2000;
  int max_n = 50;
};

/// Reads THETA_SUM_MAX_TERMS: either a single integer applied to every cap or
/// a list such as "k=100,j=500,n=10". Returns defaults when the variable is unset.
/// Throws DomainError on a malformed value.
Limits limits_from_env();
Limits parse_limits(std::string_view text);

}  // namespace thetasum
