#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "thetasum/checks.hpp"
#include "thetasum/engine.hpp"
#include "thetasum/errors.hpp"
#include "thetasum/oracle.hpp"
#include "thetasum/table1.hpp"

namespace thetasum::cli {

namespace {

std::optional<double> to_double(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string format_complex(Complex z) { return fmt::format("{}{:+}i", format_real(z.real()), z.imag()); }

struct Timer {
  bool enabled = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  void report(std::ostream& err) const {
    if (!enabled) return;
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    fmt::print(err, "elapsed: {:.3f} ms\n", ms);
  }
};

std::string count_or_empty(const Evaluation& e, std::string_view key) {
  const auto it = e.terms_used.find(key);
  return it == e.terms_used.end() ? std::string{} : std::to_string(it->second);
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string a = "1";
  double w = 0.0;
  std::string method = "auto";
  std::string policy = "optimal";
  std::string n_max = "auto";
  double eps = oracle::kMinTolerance;
};

int cmd_eval(const EvalArgs& args, const Limits& limits, std::ostream& out) {
  const SumSpec spec{parse_complex(args.a), args.w};
  const TruncationPolicy policy = parse_policy(args.policy);
  MethodChoice method = engine::auto_method(spec.w);
  if (args.method != "auto") {
    const auto parsed = parse_method(args.method);
    if (!parsed) throw DomainError("unknown method '" + args.method + "'");
    method = *parsed;
  }
  require_valid(spec, method == MethodChoice::ClassicalPJ || method == MethodChoice::Direct);

  Evaluation e;
  if (method == MethodChoice::EvenTransform && args.n_max != "auto") {
    const auto n = to_double(args.n_max);
    if (!n || *n < 1 || *n != std::floor(*n)) throw DomainError("precondition failed: --nmax is auto or an integer >= 1");
    const auto m = engine::even_index(spec.w);
    if (!m) throw MismatchError("even transform requires w = 2m");
    e = engine::eval_even(spec, *m, policy, static_cast<int>(*n), limits);
  } else {
    e = engine::eval(spec, method, policy, limits);
  }

  fmt::print(out, "method: {}\n", to_string(e.method));
  fmt::print(out, "a: {}\n", format_complex(spec.a));
  fmt::print(out, "w: {}\n", format_real(spec.w));
  if (e.method != MethodChoice::Direct && e.method != MethodChoice::ClassicalPJ) {
    fmt::print(out, "policy: {}\n", to_string(policy));
  }
  fmt::print(out, "value_re: {}\n", format_real(e.value.real()));
  fmt::print(out, "value_im: {}\n", format_real(e.value.imag()));
  fmt::print(out, "err_estimate: {:.6e}\n", e.err_estimate);
  std::string terms;
  for (const auto& [name, count] : e.terms_used) terms += fmt::format(" {}={}", name, count);
  fmt::print(out, "terms_used:{}\n", terms);
  if (!e.j0_per_n.empty()) {
    std::string j0;
    for (std::size_t i = 0; i < e.j0_per_n.size(); ++i) j0 += fmt::format(" n={}:{}", i + 1, e.j0_per_n[i]);
    fmt::print(out, "j0:{}\n", j0);
  }
  if (e.near_odd_warning) {
    fmt::print(out, "warning: w is within {} of an odd integer; the generic expansion loses accuracy here\n",
               engine::kNearOddWidth);
  }

  try {
    const oracle::OracleResult ref = oracle::direct_sum({spec.a, spec.w}, args.eps);
    fmt::print(out, "oracle_value_re: {}\n", format_real(ref.value.real()));
    fmt::print(out, "oracle_value_im: {}\n", format_real(ref.value.imag()));
    fmt::print(out, "oracle_terms: {}\n", ref.n_terms);
    fmt::print(out, "oracle_tail_bound: {:.3e}\n", ref.tail_bound);
    fmt::print(out, "oracle_rounding_bound: {:.3e}\n", ref.rounding_bound);
    fmt::print(out, "abs_error: {:.6e}\n", std::abs(e.value - ref.value));
  } catch (const ConvergenceError&) {
    fmt::print(out, "abs_error: n/a (direct summation infeasible at this a)\n");
  }
  return kOk;
}

// --- table1 -----------------------------------------------------------------

struct Table1Args {
  std::string rows;
  std::string csv_path;
};

struct Table1Row {
  PublishedRow published;
  double oracle_sum = 0.0;
  double expansion = 0.0;
  double abs_error = 0.0;
  int j0 = 0;
  bool noise = false;
};

int cmd_table1(const Table1Args& args, const Limits& limits, std::ostream& out, std::ostream& err) {
  std::vector<PublishedRow> selected;
  if (args.rows.empty()) {
    selected.assign(kPublishedRows.begin(), kPublishedRows.end());
  } else {
    std::stringstream ss(args.rows);
    std::string token;
    while (std::getline(ss, token, ',')) {
      const auto a = to_double(trim(token));
      const auto it = std::find_if(kPublishedRows.begin(), kPublishedRows.end(),
                                   [&](const PublishedRow& r) { return a && std::abs(r.a - *a) < 1e-12; });
      if (it == kPublishedRows.end()) {
        throw DomainError("--rows: '" + token + "' is not one of 0.10 0.20 0.25 0.50 0.75 1.00 1.50 2.00");
      }
      selected.push_back(*it);
    }
  }

  std::vector<Table1Row> rows;
  for (const auto& p : selected) {
    const SumSpec spec{{p.a, 0.0}, 4.0};
    // Only the n = 1 tail term, as in the published computation.
    const Evaluation e = engine::eval_even(spec, 2, policy::OptimalFirstMin{}, 1, limits);
    const double ref = oracle::direct_sum(spec).value.real();
    rows.push_back({p, ref, e.value.real(), std::abs(e.value.real() - ref), e.j0_per_n.front(),
                    p.error < kBinary64NoiseFloor});
  }

  fmt::print(out, "S(a;4), m = 2, n = 1 tail term, least-term truncation\n");
  fmt::print(out, "{:>6} {:>10} {:>10} {:>11} {:>4} {:>9} {:>11}  {}\n", "a", "S(a;4)", "expansion", "abs_error",
             "j0", "pub_j0", "pub_err", "status");
  for (const auto& r : rows) {
    fmt::print(out, "{:>6.2f} {:>10.6f} {:>10.6f} {:>11.3e} {:>4} {:>9} {:>11.3e}  {}\n", r.published.a, r.oracle_sum,
               r.expansion, r.abs_error, r.j0, r.published.j0, r.published.error,
               r.noise ? "binary64-noise" : "reachable");
  }

  if (!args.csv_path.empty()) {
    std::ofstream csv(args.csv_path);
    if (!csv) {
      fmt::print(err, "error: cannot write '{}'\n", args.csv_path);
      return kUnwritable;
    }
    csv << "a,sum_oracle,expansion,abs_error,j0,published_j0,published_error,status\n";
    for (const auto& r : rows) {
      csv << fmt::format("{},{},{},{},{},{},{},{}\n", format_real(r.published.a), format_real(r.oracle_sum),
                         format_real(r.expansion), format_real(r.abs_error), r.j0, r.published.j0,
                         format_real(r.published.error), r.noise ? "binary64-noise" : "reachable");
    }
    if (!csv) {
      fmt::print(err, "error: failed writing '{}'\n", args.csv_path);
      return kUnwritable;
    }
  }
  return kOk;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(const std::string& suite_name, std::ostream& out) {
  const auto suite = checks::parse_suite(suite_name);
  if (!suite) throw DomainError("--suite must be one of specfun, engine, oracle, appendix, all");
  const auto results = checks::run(*suite);
  int failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    fmt::print(out, "{} [{}] {}: measured {:.6g}, required {}\n", r.pass ? "PASS" : "FAIL", r.suite, r.name,
               r.measured, r.required);
  }
  fmt::print(out, "{} of {} checks passed\n", results.size() - failed, results.size());
  return failed == 0 ? kOk : kCheckFailed;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConvergenceError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kConvergence;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kPrecondition;
  }
}

}  // namespace

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  const auto fail = [&] {
    return DomainError("cannot parse complex number '" + std::string(text) + "' (expected RE, RE+IMj or IMj)");
  };
  if (s.empty()) throw fail();
  if (s.back() != 'j') {
    const auto re = to_double(s);
    if (!re) throw fail();
    return {*re, 0.0};
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) {
    const auto im = to_double(body);
    if (!im) throw fail();
    return {0.0, *im};
  }
  const auto re = to_double(body.substr(0, split));
  const auto im = to_double(body.substr(split));
  if (!re || !im) throw fail();
  return {*re, *im};
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_complex(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string sweep_row(Complex a, double w, const Evaluation& e, double abs_err) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}", format_real(a.real()), format_real(a.imag()),
                     format_real(w), to_string(e.method), format_real(e.value.real()), format_real(e.value.imag()),
                     format_real(e.err_estimate), abs_err < 0.0 ? std::string{} : format_real(abs_err),
                     count_or_empty(e, "k"), count_or_empty(e, "j"), count_or_empty(e, "n"),
                     e.j0_per_n.empty() ? std::string{} : std::to_string(e.j0_per_n.front()));
}

int cmd_sweep(const SweepConfig& config, const Limits& limits, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (config.a_values.empty()) throw DomainError("precondition failed: at least one a value");
    for (const Complex a : config.a_values) require_valid(SumSpec{a, config.w}, true);
    require_valid(config.policy);
    const std::vector<MethodChoice> methods =
        config.methods.empty() ? std::vector{engine::auto_method(config.w)} : config.methods;

    // Rows are independent; compute them concurrently and write in input order.
    std::vector<std::future<std::string>> rows;
    for (const Complex a : config.a_values) {
      for (const MethodChoice method : methods) {
        rows.push_back(std::async(std::launch::async, [&config, &limits, a, method] {
          const SumSpec spec{a, config.w};
          const Evaluation e = engine::eval(spec, method, config.policy, limits);
          double abs_err = -1.0;
          try {
            abs_err = oracle::abs_error(e.value, spec);
          } catch (const ConvergenceError&) {
          }
          return sweep_row(a, config.w, e, abs_err);
        }));
      }
    }
    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (auto& f : rows) lines.push_back(f.get());

    std::ofstream csv(config.output_path);
    if (!csv) {
      fmt::print(err, "error: cannot write '{}'\n", config.output_path);
      return kUnwritable;
    }
    csv << kSweepHeader << '\n';
    for (const auto& line : lines) csv << line << '\n';
    csv.flush();
    if (!csv) {
      fmt::print(err, "error: failed writing '{}'\n", config.output_path);
      return kUnwritable;
    }
    return kOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate S(a;w) = sum_{n>=1} exp(-a n^2) / n^w by direct summation and small-a expansions"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "Report wall-clock time on stderr");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate S(a;w) at one point");
  eval->add_option("--a", eval_args.a, "Gaussian parameter, RE or RE+IMj")->required();
  eval->add_option("--w", eval_args.w, "Algebraic exponent")->required();
  eval->add_option("--method", eval_args.method, "auto, direct, generic, even or classical");
  eval->add_option("--policy", eval_args.policy, "optimal, fixed:N or target:EPS[:CAP]");
  eval->add_option("--nmax", eval_args.n_max, "Tail terms for the even transform: auto or N");
  eval->add_option("--eps", eval_args.eps, "Oracle tail tolerance (>= 1e-16)");

  Table1Args table_args;
  auto* table1 = app.add_subcommand("table1", "Reproduce the S(a;4) error table");
  table1->add_option("--rows", table_args.rows, "Comma-separated subset of a values");
  table1->add_option("--csv", table_args.csv_path, "Also write the table as CSV");

  std::string sweep_a;
  std::string sweep_methods;
  std::string sweep_policy = "optimal";
  SweepConfig sweep_config;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a list of a values and write CSV");
  sweep->add_option("--a", sweep_a, "Comma-separated a values (RE or RE+IMj)")->required();
  sweep->add_option("--w", sweep_config.w, "Algebraic exponent")->required();
  sweep->add_option("--methods", sweep_methods, "Comma-separated methods (default: auto)");
  sweep->add_option("--policy", sweep_policy, "optimal, fixed:N or target:EPS[:CAP]");
  sweep->add_option("--out", sweep_config.output_path, "Output CSV path")->required();

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run the invariant and remainder-scaling checks");
  verify->add_option("--suite", suite, "specfun, engine, oracle, appendix or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kPrecondition;
  }

  Limits limits;
  try {
    limits = limits_from_env();
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kPrecondition;
  }

  Timer timer{timing};
  int code = kOk;
  if (eval->parsed()) {
    code = guarded(err, [&] { return cmd_eval(eval_args, limits, out); });
  } else if (table1->parsed()) {
    code = guarded(err, [&] { return cmd_table1(table_args, limits, out, err); });
  } else if (sweep->parsed()) {
    code = guarded(err, [&]() -> int {
      sweep_config.a_values = parse_complex_list(sweep_a);
      sweep_config.policy = parse_policy(sweep_policy);
      if (!sweep_methods.empty() && sweep_methods != "auto") {
        std::stringstream ss(sweep_methods);
        std::string token;
        while (std::getline(ss, token, ',')) {
          const auto m = parse_method(trim(token));
          if (!m) throw DomainError("unknown method '" + token + "'");
          sweep_config.methods.push_back(*m);
        }
      }
      return cmd_sweep(sweep_config, limits, err);
    });
  } else if (verify->parsed()) {
    code = guarded(err, [&] { return cmd_verify(suite, out); });
  }
  timer.report(err);
  return code;
}

}  // namespace thetasum::cli
