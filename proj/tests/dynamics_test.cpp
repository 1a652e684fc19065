#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fqsl/dynamics.hpp"
#include "fqsl/errors.hpp"
#include "fqsl/orthogonality.hpp"
#include "oracles.hpp"

namespace fqsl {
namespace {

TEST(SurvivalSeries, Grid) {
  const auto s = survival_series(ProbabilityDistribution::uniform(), 2 * kPi, 5);
  ASSERT_EQ(s.times.size(), 5u);
  ASSERT_EQ(s.values.size(), 5u);
  EXPECT_EQ(s.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(s.times.back(), 2 * kPi);
  EXPECT_EQ(s.values.front(), 1.0);
  EXPECT_THROW(survival_series(ProbabilityDistribution::uniform(), 0.0, 10), InvalidInput);
  EXPECT_THROW(survival_series(ProbabilityDistribution::uniform(), 1.0, 1), InvalidInput);
}

TEST(SurvivalSeries, QubitIsCosSquared) {
  const auto s = survival_series(ProbabilityDistribution({0.5, 0, 0, 0, 0, 0.5}), 2 * kPi, 1001);
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    const double c = std::cos(2 * s.times[k]);
    ASSERT_NEAR(s.values[k], c * c, 1e-14);
  }
  EXPECT_NEAR(survival_probability(ProbabilityDistribution({0.5, 0, 0, 0, 0, 0.5}), 3 * kPi / 4), 0.0, 1e-15);
}

TEST(SurvivalSeries, UniformPlateauMaximum) {
  const auto dist = ProbabilityDistribution::uniform();
  double best = 0.0;
  for (int k = 0; k <= 200000; ++k) {
    const double phi = kPi / 2 + (kPi / 6) * k / 200000.0;
    best = std::max(best, survival_probability(dist, phi));
  }
  EXPECT_NEAR(best, 1.0 / 576, 1e-9);
  EXPECT_LE(best, 0.002);
}

TEST(SurvivalSeries, DegenerateSplitInvariance) {
  const auto a = survival_series(ProbabilityDistribution({0.2, 0.2, 0.2, 0.0, 0.2, 0.2}));
  const auto b = survival_series(ProbabilityDistribution({0.2, 0.2, 0.05, 0.15, 0.2, 0.2}));
  for (std::size_t k = 0; k < a.values.size(); ++k) ASSERT_NEAR(a.values[k], b.values[k], 1e-12);
}

TEST(SurvivalSeries, ReflectionAndRevival) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0, 2 * kPi);
  for (int trial = 0; trial < 1000; ++trial) {
    const ProbabilityDistribution d(testing::random_simplex_point(rng));
    EXPECT_NEAR(survival_probability(d, 2 * kPi), 1.0, 1e-12);
    const double phi = unit(rng);
    ASSERT_NEAR(survival_probability(d, phi), survival_probability(d, 2 * kPi - phi), 1e-12);
    ASSERT_NEAR(survival_probability(d, phi), std::norm(testing::overlap_oracle(d.values(), phi)), 1e-12);
  }
}

TEST(SurvivalSeries, ZerosMatchSolverRoots) {
  const auto d = ProbabilityDistribution::uniform();
  const std::size_t steps = 4096;
  const auto s = survival_series(d, 2 * kPi, steps);
  const double h = 2 * kPi / (steps - 1);
  for (double root : solve_orthogonality(d).roots) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < steps; ++k)
      if (std::abs(s.times[k] - root) < std::abs(s.times[best] - root)) best = k;
    // Local minimum of the series sits within one grid step of each root.
    std::size_t lo = best > 3 ? best - 3 : 0, hi = std::min(steps - 1, best + 3), arg = lo;
    for (std::size_t k = lo; k <= hi; ++k)
      if (s.values[k] < s.values[arg]) arg = k;
    EXPECT_LE(std::abs(s.times[arg] - root), h);
  }
}

}  // namespace
}  // namespace fqsl
