#include <gtest/gtest.h>

#include <cmath>

#include "ergodesk/residual.hpp"
#include "oracles.hpp"

using namespace ergodesk;

namespace {

SystemSpec product() { return SystemSpec::product(RotationNumber::silver(), BernoulliSpec::fair_coin()); }
SystemSpec skew() { return SystemSpec::skew(RotationNumber::silver()); }

// Dense oracle at window 4, grid 16, cutoff 2, frozen from oracle::dense_residual.
constexpr double kR0One = 0.517638090205039;
constexpr double kR0Two = 0.765366864730175;

ResidualOptions at(int window) {
  ResidualOptions o;
  o.window = window;
  return o;
}

}  // namespace

TEST(Residual, FrozenOracleValuesStillReproduce) {
  EXPECT_NEAR(oracle::dense_residual(oracle::silver(), 1, 4, 16, 2), kR0One, 1e-9);
}

TEST(Residual, LibraryDenseReferenceMatchesOracle) {
  auto s = product();
  EXPECT_NEAR(dense_reference_residual(s, 0, 4, 16, 2), 0.0, 1e-7);
  EXPECT_NEAR(dense_reference_residual(s, 1, 4, 16, 2), kR0One, 1e-7);
  EXPECT_NEAR(dense_reference_residual(s, -1, 4, 16, 2), kR0One, 1e-7);
  EXPECT_NEAR(dense_reference_residual(s, 2, 4, 16, 2), kR0Two, 1e-7);
  EXPECT_NEAR(dense_reference_residual(s, -2, 4, 16, 2), kR0Two, 1e-7);
}

TEST(Residual, StructuredSearchMatchesDenseAtSmallWindow) {
  auto s = product();
  for (std::int64_t k : {-2, -1, 0, 1, 2}) {
    ResidualOptions o = at(4);
    o.grid = 16;
    double structured = quasi_eigen_residual_search(s, k, o).residual;
    EXPECT_NEAR(structured, dense_reference_residual(s, k, 4, 16, 2), 1e-7) << k;
  }
}

TEST(Residual, ProperFunctionHasZeroResidual) {
  for (int n : {4, 8}) {
    auto r = quasi_eigen_residual_search(product(), 0, at(n));
    EXPECT_LE(r.residual, 1e-8);
    EXPECT_GT(r.basis_size, 0u);
  }
}

TEST(Residual, SkewWitnessIsFound) {
  auto r = quasi_eigen_residual_search(skew(), 1, at(4));
  EXPECT_LE(r.residual, 1e-8);
  ASSERT_FALSE(r.profile.empty());
}

// A larger window enlarges the trial space on a fixed grid, so the minimum
// cannot grow; it stays above r0 / 2 all the same.
TEST(Residual, NonzeroKBoundedBelowAcrossWindows) {
  for (std::int64_t k : {1, -1, 2, -2}) {
    double r0 = std::abs(k) == 1 ? kR0One : kR0Two;
    double prev = 0;
    for (int n : {4, 8}) {
      ResidualOptions o = at(n);
      o.grid = 64;
      double r = quasi_eigen_residual_search(product(), k, o).residual;
      EXPECT_GE(r, r0 / 2) << k << " " << n;
      if (prev > 0) EXPECT_LE(r, prev + 1e-9) << k;
      prev = r;
    }
  }
}

TEST(Residual, Thresholds) {
  auto t = calibrate_thresholds(product(), 1);
  EXPECT_NEAR(t.r0, kR0One, 1e-7);
  EXPECT_NEAR(t.reject_at, kR0One / 2, 1e-7);
  EXPECT_EQ(classify_residual(1e-9, t), QuasiEigenVerdict::exists);
  EXPECT_EQ(classify_residual(0.4, t), QuasiEigenVerdict::absent);
  EXPECT_EQ(classify_residual(0.1, t), QuasiEigenVerdict::inconclusive);
  EXPECT_EQ(to_string(QuasiEigenVerdict::absent), "absent");
}

TEST(Residual, InvalidInputs) {
  ResidualOptions small = at(8);
  small.grid = 16;
  EXPECT_THROW(quasi_eigen_residual_search(product(), 1, small), std::invalid_argument);
  EXPECT_THROW(quasi_eigen_residual_search(product(), 1, at(1)), std::invalid_argument);
  EXPECT_THROW(quasi_eigen_residual_search(SystemSpec::rotation(RotationNumber::silver()), 1, at(4)),
               std::invalid_argument);
  EXPECT_THROW(quasi_eigen_residual_search(SystemSpec::bernoulli(BernoulliSpec::fair_coin()), 1, at(4)),
               std::invalid_argument);
  EXPECT_THROW(dense_reference_residual(skew(), 1, 4, 16, 2), std::invalid_argument);
  EXPECT_THROW(dense_reference_residual(product(), 1, 9, 64, 2), std::invalid_argument);
}
