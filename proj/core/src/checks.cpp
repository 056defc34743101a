#include "thetasum/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>

#include "thetasum/engine.hpp"
#include "thetasum/errors.hpp"
#include "thetasum/oracle.hpp"
#include "thetasum/specfun.hpp"
#include "thetasum/table1.hpp"

namespace thetasum::checks {

namespace sf = thetasum::specfun;

namespace {

constexpr double kPi = sf::kPi;

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

CheckResult at_most(std::string suite, std::string name, double measured, double bound) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "<= %.3g", bound);
  return {std::move(suite), std::move(name), measured <= bound, measured, buf};
}

CheckResult in_band(std::string suite, std::string name, double measured, double lo, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "in [%.3g, %.3g]", lo, hi);
  return {std::move(suite), std::move(name), measured >= lo && measured <= hi, measured, buf};
}

// 2^(-2j) (2m)_(2j) / j!, the duplication form of c_j.
double coeff_c_duplication(int m, int j) {
  double c = 1.0;
  for (int r = 0; r < j; ++r) c *= (2.0 * m + 2 * r) * (2.0 * m + 2 * r + 1) / (4.0 * (r + 1));
  return c;
}

void specfun_suite(std::vector<CheckResult>& out) {
  const std::string s = "specfun";
  {
    double worst = 0.0;
    double fact = 1.0;
    for (int n = 1; n <= 15; ++n) {
      fact *= (2.0 * n - 1) * (2.0 * n);
      const double zeta = sf::zeta_real(2.0 * n);
      const double via_b = std::pow(2.0 * kPi, 2.0 * n) * std::abs(sf::bernoulli_even(n)) / (2.0 * fact);
      worst = std::max(worst, rel(via_b, zeta));
    }
    out.push_back(at_most(s, "Bernoulli-zeta identity, n = 1..15 (rel)", worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (double x : {-5.5, -2.3, -0.7, 0.3}) {
      const double rhs = std::pow(2.0, x) * std::pow(kPi, x - 1.0) * sf::zeta_real(1.0 - x) *
                         sf::gamma_real(1.0 - x) * std::sin(0.5 * kPi * x);
      worst = std::max(worst, rel(sf::zeta_real(x), rhs));
    }
    out.push_back(at_most(s, "zeta reflection consistency (rel)", worst, 1e-10));
  }
  {
    double worst = 0.0;
    for (int k = 1; k <= 20; ++k) worst = std::max(worst, std::abs(sf::zeta_real(-2.0 * k)));
    out.push_back(at_most(s, "trivial zeros zeta(-2k), k = 1..20", worst, 0.0));
  }
  {
    double worst = 0.0;
    for (int m = 1; m <= 5; ++m) {
      for (int j = 0; j <= 30; ++j) worst = std::max(worst, rel(sf::coeff_c(m, j), coeff_c_duplication(m, j)));
    }
    out.push_back(at_most(s, "c_j two-form equality, m <= 5, j <= 30 (rel)", worst, 1e-12));
  }
  out.push_back(at_most(s, "zeta(2) = pi^2/6 (rel)", rel(sf::zeta_real(2.0), kPi * kPi / 6.0), 1e-14));
  out.push_back(at_most(s, "zeta(4) = pi^4/90 (rel)", rel(sf::zeta_real(4.0), std::pow(kPi, 4) / 90.0), 1e-14));
  {
    std::mt19937_64 rng(20240521);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    double worst = 0.0;
    int done = 0;
    while (done < 100) {
      const double x = dist(rng);
      if (x < 0.5 && std::abs(x - std::round(x)) < 1e-3) continue;
      if (x + 1.0 < 0.5 && std::abs(x + 1.0 - std::round(x + 1.0)) < 1e-3) continue;
      worst = std::max(worst, rel(sf::gamma_real(x + 1.0), x * sf::gamma_real(x)));
      ++done;
    }
    out.push_back(at_most(s, "gamma recurrence, 100 random x (rel)", worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (int m = 1; m <= 50; ++m) worst = std::max(worst, std::abs(sf::digamma_int(m) - sf::digamma_int(m - 1) - 1.0 / m));
    out.push_back(at_most(s, "digamma recurrence, m = 1..50", worst, 1e-15));
  }
}

void engine_suite(std::vector<CheckResult>& out) {
  const std::string s = "engine";
  const policy::OptimalFirstMin optimal;
  {
    double worst = 0.0;
    for (double w : {0.5, 1.0, 1.5, 2.5, 3.0, 5.25}) {
      for (double a : {0.01, 0.05, 0.1}) {
        const SumSpec spec{{a, 0.0}, w};
        worst = std::max(worst, oracle::abs_error(engine::eval_generic(spec, optimal).value, spec));
      }
    }
    out.push_back(at_most(s, "generic expansion vs oracle (abs)", worst, 1e-11));
  }
  {
    double worst_ratio = 0.0;
    double worst_rel_est = 0.0;
    for (int m = 1; m <= 3; ++m) {
      for (double a : {0.5, 1.0, 2.0}) {
        const SumSpec spec{{a, 0.0}, 2.0 * m};
        const Evaluation e = engine::eval_even(spec, m, optimal);
        worst_ratio = std::max(worst_ratio, oracle::abs_error(e.value, spec) / e.err_estimate);
        if (a <= 1.0) worst_rel_est = std::max(worst_rel_est, e.err_estimate / std::abs(e.value));
      }
    }
    out.push_back(at_most(s, "even transform error / err_estimate", worst_ratio, 10.0));
    out.push_back(at_most(s, "even transform err_estimate / |value|, a <= 1", worst_rel_est, 1e-3));
  }
  {
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0, kPi}) {
      const SumSpec spec{{a, 0.0}, 0.0};
      worst = std::max(worst, std::abs(engine::classical_pj_rhs(spec.a) - oracle::direct_sum(spec).value));
    }
    out.push_back(at_most(s, "classical theta identity (abs)", worst, 1e-13));
  }
  {
    double worst = 0.0;
    for (double a : {0.5, 1.0}) {
      for (int M : {1, 3, 5}) {
        const policy::Fixed fixed{M};
        const auto e1 = engine::eval_even({{a, 0.0}, 2.0}, 1, fixed, 1).value.real();
        const auto e2 = engine::eval_even({{a, 0.0}, 4.0}, 2, fixed, 1).value.real();
        worst = std::max({worst, rel(e1, literal_s2(a, M)), rel(e2, literal_s4(a, M))});
      }
    }
    out.push_back(at_most(s, "m = 1, 2 specialisations (rel)", worst, 1e-13));
  }
  {
    double worst = 0.0;
    for (double theta : {-1.2, -0.6, 0.0, 0.6, 1.2}) {
      const SumSpec spec{std::polar(0.5, theta), 4.0};
      worst = std::max(worst, oracle::abs_error(engine::eval_even(spec, 2, optimal).value, spec));
    }
    out.push_back(at_most(s, "sector validity a = 0.5 e^(i theta) (abs)", worst, 1e-9));
  }
  {
    // Count rows whose reported j0 is not a local minimum of the logged magnitudes.
    double violations = 0.0;
    for (const auto& row : kPublishedRows) {
      const Evaluation e = engine::eval_even({{row.a, 0.0}, 4.0}, 2, optimal, 1);
      const auto terms = e.term_log.series("j[n=1]");
      const auto j0 = static_cast<std::size_t>(e.j0_per_n.front());
      const bool right = j0 + 1 < terms.size() && terms[j0].second <= terms[j0 + 1].second;
      const bool left = j0 == 0 || terms[j0].second < terms[j0 - 1].second;
      if (!(right && left)) violations += 1.0;
    }
    out.push_back(at_most(s, "least-term consistency (violations)", violations, 0.0));
  }
  {
    double previous = 0.0;
    double drops = 0.0;
    double worst_factor = 1.0;
    double worst_j0 = 0.0;
    for (const auto& row : kPublishedRows) {
      const SumSpec spec{{row.a, 0.0}, 4.0};
      const Evaluation e = engine::eval_even(spec, 2, optimal, 1);
      worst_j0 = std::max(worst_j0, std::abs(static_cast<double>(e.j0_per_n.front() - row.j0)));
      if (row.error < kBinary64NoiseFloor) continue;
      const double err = oracle::abs_error(e.value, spec);
      if (err < previous) drops += 1.0;
      previous = err;
      worst_factor = std::max({worst_factor, err / row.error, row.error / err});
    }
    out.push_back(at_most(s, "monotone degradation in a (drops)", drops, 0.0));
    out.push_back(at_most(s, "published errors, reachable rows (factor)", worst_factor, 2.0));
    out.push_back(at_most(s, "least-term index vs published j0 (|diff|)", worst_j0, 2.0));
  }
}

void oracle_suite(std::vector<CheckResult>& out) {
  const std::string s = "oracle";
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(0.05, 5.0);
    std::uniform_real_distribution<double> im(-2.0, 2.0);
    std::uniform_real_distribution<double> wd(0.0, 6.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      double w = wd(rng);
      if (w == 0.0) w = 1.0;
      const SumSpec spec{{re(rng), im(rng)}, w};
      const oracle::OracleResult r = oracle::direct_sum(spec);
      // Re-sum to twice the cut-off.
      Complex extra{0.0, 0.0};
      for (long n = r.n_terms + 1; n <= 2 * r.n_terms; ++n) {
        const double nn = static_cast<double>(n);
        extra += std::exp(-spec.a * (nn * nn) - w * std::log(nn));
      }
      worst = std::max(worst, std::abs(extra) / r.tail_bound);
    }
    out.push_back(at_most(s, "tail bound soundness (change / bound)", worst, 1.0));
  }
  {
    double worst = 0.0;
    for (double a : {0.05, 0.3, 1.0, 4.0}) {
      for (double w : {0.5, 2.0, 4.5}) {
        const SumSpec spec{{a, 0.0}, w};
        const oracle::OracleResult r = oracle::direct_sum(spec);
        double partial = 0.0;
        double prev = 0.0;
        for (long n = 1; n <= r.n_terms; ++n) {
          const double nn = static_cast<double>(n);
          partial += std::exp(-a * nn * nn) / std::pow(nn, w);
          if (partial < prev) worst = std::max(worst, prev - partial);
          worst = std::max(worst, partial - (r.value.real() + r.tail_bound + r.rounding_bound));
          prev = partial;
        }
      }
    }
    out.push_back(at_most(s, "monotone partial sums bounded by value + bound", worst, 0.0));
  }
  {
    const SumSpec spec{{1e-6, 0.0}, 6.0};
    out.push_back(at_most(s, "zeta limit w = 6, a = 1e-6 (abs)",
                          std::abs(oracle::direct_sum(spec).value.real() - sf::zeta_real(6.0)), 1e-5));
  }
}

void appendix_suite(std::vector<CheckResult>& out) {
  const std::string s = "appendix";
  const std::array<double, 4> grid{0.1, 0.05, 0.025, 0.0125};
  // The remainder must decay at least like a^(N - 1/2); its leading behaviour
  // is the first omitted term, which scales like a^N.
  for (auto [w, N] : {std::pair{1.3, 2}, std::pair{3.0, 3}}) {
    const double slope = engine::remainder_slope(w, N, grid);
    char name[96];
    std::snprintf(name, sizeof name, "remainder decay w = %.2g, N = %d: slope >= N - 1/2 - 0.15", w, N);
    char bound[32];
    std::snprintf(bound, sizeof bound, ">= %.2f", N - 0.65);
    out.push_back({s, name, slope >= N - 0.65, slope, bound});
    std::snprintf(name, sizeof name, "remainder decay w = %.2g, N = %d: slope ~ N", w, N);
    out.push_back(in_band(s, name, slope, N - 0.15, N + 0.15));
  }
  {
    bool raised = false;
    double slope = 0.0;
    try {
      slope = engine::remainder_slope(1.3, 8, grid);
    } catch (const PrecisionError&) {
      raised = true;
    }
    out.push_back({s, "w = 1.3, N = 8 flagged as below the noise floor", raised, raised ? 1.0 : slope,
                   "PrecisionError"});
  }
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view text) {
  if (text == "specfun") return Suite::Specfun;
  if (text == "engine") return Suite::Engine;
  if (text == "oracle") return Suite::Oracle;
  if (text == "appendix") return Suite::Appendix;
  if (text == "all") return Suite::All;
  return std::nullopt;
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::Specfun: return "specfun";
    case Suite::Engine: return "engine";
    case Suite::Oracle: return "oracle";
    case Suite::Appendix: return "appendix";
    case Suite::All: return "all";
  }
  return "unknown";
}

std::vector<CheckResult> run(Suite suite) {
  std::vector<CheckResult> out;
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Specfun) specfun_suite(out);
  if (all || suite == Suite::Engine) engine_suite(out);
  if (all || suite == Suite::Oracle) oracle_suite(out);
  if (all || suite == Suite::Appendix) appendix_suite(out);
  return out;
}

double literal_s2(double a, int M) {
  double series = 0.0;
  double poch = 1.0;  // (3/2)_j
  for (int j = 0; j < M; ++j) {
    series += poch * std::pow(-a / (kPi * kPi), j);
    poch *= 1.5 + j;
  }
  return kPi * kPi / 6.0 + a / 2.0 - std::sqrt(kPi * a) -
         std::pow(a / kPi, 1.5) * std::exp(-kPi * kPi / a) * series;
}

double literal_s4(double a, int M) {
  double series = 0.0;
  double coeff = 1.0;  // (5/2)_j (2)_j / j!
  for (int j = 0; j < M; ++j) {
    series += coeff * std::pow(-a / (kPi * kPi), j);
    coeff *= (2.5 + j) * (2.0 + j) / (j + 1.0);
  }
  return std::pow(kPi, 4) / 90.0 - kPi * kPi * a / 6.0 - a * a / 4.0 + 2.0 / 3.0 * std::sqrt(kPi) * std::pow(a, 1.5) +
         std::pow(a / kPi, 3.5) * std::exp(-kPi * kPi / a) * series;
}

}  // namespace thetasum::checks
