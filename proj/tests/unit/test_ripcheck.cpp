#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sphcs/error.hpp"
#include "sphcs/ripcheck.hpp"
#include "sphcs/sensing.hpp"

namespace sphcs {
namespace {

ComplexMatrix column_normalized(ComplexMatrix a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) a.col(j).normalize();
  return a;
}

TEST(Threshold, ValueAndExamples) {
  EXPECT_NEAR(recovery_threshold(), 3.0 / (4.0 + std::sqrt(6.0)), 1e-15);
  EXPECT_NEAR(recovery_threshold(), 0.465153077, 1e-9);
  EXPECT_TRUE(recovery_threshold_met(0.40));
  EXPECT_FALSE(recovery_threshold_met(0.4652));
  EXPECT_TRUE(recovery_threshold_met(0.0));
  EXPECT_THROW(recovery_threshold_met(-0.1), ParameterError);
}

TEST(Binomial, ValuesAndSaturation) {
  EXPECT_EQ(binomial(12, 2), 66u);
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(binomial(256, 4), 174792640u);
  EXPECT_EQ(binomial(1000, 500), UINT64_MAX);
}

TEST(ExactRip, OrthonormalColumns) {
  const ComplexMatrix q = Eigen::HouseholderQR<Eigen::MatrixXcd>(oracle::gaussian_matrix(8, 8, 1))
                              .householderQ();
  for (std::size_t s = 1; s <= 4; ++s) {
    const auto r = restricted_isometry_constant(q.leftCols(6), s);
    EXPECT_NEAR(r.delta, 0.0, 1e-12);
    EXPECT_EQ(r.supports_checked, binomial(6, s));
    EXPECT_TRUE(r.exact);
  }
}

TEST(ExactRip, DuplicateColumns) {
  ComplexMatrix a = column_normalized(oracle::gaussian_matrix(5, 6, 2));
  a.col(4) = a.col(1);
  const auto r = restricted_isometry_constant(a, 2);
  EXPECT_NEAR(r.delta, 1.0, 1e-12);
  EXPECT_EQ(r.extremal_support, (std::vector<std::size_t>{1, 4}));
}

TEST(ExactRip, MatchesClosedFormTwoByTwo) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ComplexMatrix a = oracle::gaussian_matrix(8, 12, 10 + seed);
    double expect = 0.0;
    for (Eigen::Index i = 0; i < 12; ++i) {
      for (Eigen::Index j = i + 1; j < 12; ++j) {
        const auto [lo, hi] = oracle::hermitian2x2_eigen(a.col(i).squaredNorm(), a.col(j).squaredNorm(),
                                                         a.col(i).dot(a.col(j)));
        expect = std::max({expect, hi - 1.0, 1.0 - lo});
      }
    }
    EXPECT_NEAR(restricted_isometry_constant(a, 2).delta, expect, 1e-12);
  }
}

TEST(ExactRip, Errors) {
  const ComplexMatrix a = oracle::gaussian_matrix(4, 6, 3);
  EXPECT_THROW(restricted_isometry_constant(a, 0), ParameterError);
  EXPECT_THROW(restricted_isometry_constant(a, 7), ParameterError);
  EXPECT_THROW(restricted_isometry_constant(a, 3, 10), BudgetError);
  const ComplexMatrix big = oracle::gaussian_matrix(4, 256, 3);
  EXPECT_THROW(restricted_isometry_constant(big, 4), BudgetError);
}

TEST(ExactRip, InvariantUnderPermutationAndPhases) {
  CounterStream rng(derive_key(30, 0));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ComplexMatrix a = oracle::gaussian_matrix(6, 9, 20 + seed);
    ComplexMatrix b(6, 9);
    std::vector<Eigen::Index> perm{3, 7, 0, 8, 1, 5, 2, 6, 4};
    for (Eigen::Index j = 0; j < 9; ++j) {
      b.col(j) = a.col(perm[j]) * std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    }
    for (std::size_t s : {1u, 2u, 3u}) {
      EXPECT_NEAR(restricted_isometry_constant(a, s).delta, restricted_isometry_constant(b, s).delta,
                  1e-12);
    }
  }
}

TEST(ExactRip, MonotoneInSparsity) {
  const ComplexMatrix a = oracle::gaussian_matrix(10, 12, 4);
  double prev = 0.0;
  for (std::size_t s = 1; s <= 5; ++s) {
    const double d = restricted_isometry_constant(a, s).delta;
    EXPECT_GE(d, prev - 1e-14);
    prev = d;
  }
}

TEST(RandomizedRip, CoversTinyInstance) {
  const ComplexMatrix a = oracle::gaussian_matrix(4, 5, 5);
  const auto exact = restricted_isometry_constant(a, 2);
  const auto randomized = randomized_rip_lower_bound(a, 2, 2000, 1);
  EXPECT_FALSE(randomized.exact);
  EXPECT_EQ(randomized.supports_checked, 2000u);
  EXPECT_NEAR(randomized.delta, exact.delta, 1e-14);
}

TEST(RandomizedRip, IsALowerBoundAndReproducible) {
  const ComplexMatrix a = oracle::gaussian_matrix(8, 14, 6);
  const double exact = restricted_isometry_constant(a, 3).delta;
  const auto r1 = randomized_rip_lower_bound(a, 3, 50, 9);
  const auto r2 = randomized_rip_lower_bound(a, 3, 50, 9);
  EXPECT_LE(r1.delta, exact + 1e-14);
  EXPECT_EQ(r1.delta, r2.delta);
  EXPECT_EQ(r1.extremal_support, r2.extremal_support);
  EXPECT_THROW(randomized_rip_lower_bound(a, 3, 0, 9), ParameterError);
}

TEST(EnsembleRip, MedianDeltaDecreasesWithSamples) {
  // Qualitative trend only: delta_2 of the rescaled preconditioned ensemble,
  // D = 4 (N = 16), median over 10 seeds.
  auto median_delta = [](std::size_t m, std::size_t s) {
    std::vector<double> d;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto e = build_ensemble(4, sample_points(m, SamplingMeasure::kProduct, 1000 * m + seed));
      d.push_back(restricted_isometry_constant(isometry_normalized(e), s).delta);
    }
    std::nth_element(d.begin(), d.begin() + 5, d.end());
    return d[5];
  };
  const double d40 = median_delta(40, 2);
  const double d160 = median_delta(160, 2);
  const double d640 = median_delta(640, 2);
  EXPECT_GT(d40, d160);
  EXPECT_GT(d160, d640);
  EXPECT_LE(median_delta(160, 1), d160);
  EXPECT_LE(d160, median_delta(160, 3));
}

}  // namespace
}  // namespace sphcs
