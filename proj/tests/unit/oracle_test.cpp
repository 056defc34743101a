#include "thetasum/oracle.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "reference/reference_values.hpp"
#include "thetasum/errors.hpp"
#include "thetasum/specfun.hpp"

namespace thetasum::oracle {
namespace {

TEST(DirectSum, ReferenceValues) {
  for (const auto& p : reference::kDirectSums) {
    const OracleResult r = direct_sum({p.a, p.w});
    const double tol = 4.0 * (r.tail_bound + r.rounding_bound) + 1e-300;
    EXPECT_LE(std::abs(r.value - p.value), tol) << "a = " << p.a << ", w = " << p.w;
  }
}

TEST(DirectSum, PublishedSumOfW4AtAEqualsOne) {
  const OracleResult r = direct_sum({{1.0, 0.0}, 4.0});
  EXPECT_NEAR(r.value.real(), 0.369026, 5e-7);
}

TEST(DirectSum, LargeAIsDominatedByFirstTerm) {
  const OracleResult r = direct_sum({{50.0, 0.0}, 4.0});
  EXPECT_DOUBLE_EQ(r.value.real(), std::exp(-50.0));
  EXPECT_EQ(r.n_terms, 1);
}

TEST(DirectSum, Preconditions) {
  EXPECT_THROW(direct_sum({{0.0, 0.0}, 4.0}), DomainError);
  EXPECT_THROW(direct_sum({{-1.0, 2.0}, 4.0}), DomainError);
  EXPECT_THROW(direct_sum({{1.0, 0.0}, -1.0}), DomainError);
  EXPECT_THROW(direct_sum({{1.0, 0.0}, 2.0}, 1e-17), DomainError);
  EXPECT_THROW(direct_sum({{1.0, 0.0}, std::nan("")}), DomainError);
}

TEST(DirectSum, TooSmallAIsAConvergenceError) {
  EXPECT_THROW(direct_sum({{1e-14, 0.0}, 0.5}), ConvergenceError);
}

TEST(DirectSum, LooserToleranceUsesFewerTerms) {
  const SumSpec spec{{0.05, 0.0}, 2.0};
  const OracleResult tight = direct_sum(spec, 1e-16);
  const OracleResult loose = direct_sum(spec, 1e-6);
  EXPECT_LT(loose.n_terms, tight.n_terms);
  EXPECT_LE(loose.tail_bound, 1e-6);
  EXPECT_GT(loose.tail_bound, tight.tail_bound);
  EXPECT_LE(std::abs(loose.value - tight.value), loose.tail_bound);
}

TEST(DirectSum, TailBoundIsSoundOnRandomSpecs) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> re(0.05, 5.0);
  std::uniform_real_distribution<double> im(-3.0, 3.0);
  std::uniform_real_distribution<double> wd(1e-6, 6.0);
  for (int i = 0; i < 50; ++i) {
    const SumSpec spec{{re(rng), im(rng)}, wd(rng)};
    const OracleResult r = direct_sum(spec);
    Complex extra{0.0, 0.0};
    for (long n = r.n_terms + 1; n <= 2 * r.n_terms; ++n) {
      const double nn = static_cast<double>(n);
      extra += std::exp(-spec.a * (nn * nn)) / std::pow(nn, spec.w);
    }
    EXPECT_LE(std::abs(extra), r.tail_bound) << "a = " << spec.a << ", w = " << spec.w;
  }
}

TEST(DirectSum, TailBoundShrinksWithMoreTerms) {
  const SumSpec spec{{0.2, 0.1}, 1.5};
  double previous = INFINITY;
  for (double eps : {1e-4, 1e-8, 1e-12, 1e-16}) {
    const OracleResult r = direct_sum(spec, eps);
    EXPECT_LT(r.tail_bound, previous);
    previous = r.tail_bound;
  }
}

TEST(DirectSum, PartialSumsIncreaseForRealA) {
  const SumSpec spec{{0.3, 0.0}, 2.5};
  const OracleResult r = direct_sum(spec);
  double partial = 0.0;
  for (long n = 1; n <= r.n_terms; ++n) {
    const double next = partial + std::exp(-0.3 * n * n) / std::pow(n, 2.5);
    EXPECT_GT(next, partial);
    partial = next;
    EXPECT_LE(partial, r.value.real() + r.tail_bound + r.rounding_bound);
  }
}

TEST(DirectSum, ApproachesZetaAsAVanishes) {
  const OracleResult r = direct_sum({{1e-6, 0.0}, 6.0});
  EXPECT_NEAR(r.value.real(), std::pow(specfun::kPi, 6) / 945.0, 1e-5);
}

TEST(AbsError, AgainstItselfIsZero) {
  const SumSpec spec{{0.7, 0.2}, 3.0};
  EXPECT_EQ(abs_error(direct_sum(spec).value, spec), 0.0);
  const OracleComparison c = compare_to_oracle(direct_sum(spec).value + 1e-3, spec);
  EXPECT_NEAR(c.abs_error, 1e-3, 1e-15);
  EXPECT_GT(c.rounding_bound, 0.0);
}

TEST(AbsError, PropagatesConvergenceError) {
  EXPECT_THROW(abs_error({1.0, 0.0}, {{1e-15, 0.0}, 1.0}), ConvergenceError);
}

}  // namespace
}  // namespace thetasum::oracle
