#include <cmath>
#include <numbers>

#include "dcmap/painleve.hpp"

#include "gtest/gtest.h"

namespace {

using dcmap::Error;
using dcmap::ErrorKind;

constexpr double kPi = std::numbers::pi;

TEST(Dpii, IdentityIsConstant) {
  const auto sol = dcmap::dpii_solve(1.0, 150);
  for (int n = 0; n <= 150; ++n) EXPECT_NEAR(sol.alpha(n), kPi / 4, 1e-15) << n;
}

TEST(Dpii, StartsAtCPiOverFour) {
  for (double c : {0.5, 1.5}) EXPECT_NEAR(dcmap::dpii_solve(c, 5).alpha(0), c * kPi / 4, 1e-15);
}

TEST(Dpii, ResidualsVanishAndStayUnitary) {
  for (double c : {0.5, 1.25, 1.5}) {
    const auto sol = dcmap::dpii_solve(c, 200);
    for (int n = 1; n < 200; ++n) ASSERT_LT(dcmap::dpii_residual(sol, n), 1e-13) << n;
    EXPECT_LT(sol.max_drift(), dcmap::kMaxUnitaryDrift);
    for (int n = 0; n <= 200; ++n) {
      ASSERT_GT(sol.alpha(n), 0.0);
      ASSERT_LT(sol.alpha(n), kPi / 2);
      ASSERT_NEAR(std::abs(sol.u(n)), 1.0, 1e-15);
    }
  }
}

TEST(Dpii, ComplementaryExponentsMirror) {
  const auto a = dcmap::dpii_solve(0.5, 120);
  const auto b = dcmap::dpii_solve(1.5, 120);
  for (int n = 0; n <= 120; ++n) EXPECT_NEAR(a.alpha(n) + b.alpha(n), kPi / 2, 1e-13) << n;
}

TEST(Dpii, MatchesLatticeAngles) {
  for (double c : {0.5, 1.5}) {
    const auto lat = dcmap::generate(dcmap::MapKind::Zc, c, 32);
    const auto sol = dcmap::dpii_solve(c, 31);
    for (int n = 0; n <= 30; ++n) {
      EXPECT_NEAR(dcmap::alpha_from_lattice(lat, n), sol.alpha(n), 1e-12) << "c=" << c << " n=" << n;
    }
  }
}

TEST(Dpii, BinaryPrecisionLosesTheBranch) {
  dcmap::PainleveOptions opts;
  opts.precision_bits = 53;
  try {
    dcmap::dpii_solve(1.5, 100, opts);
    FAIL() << "expected BranchLoss";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BranchLoss);
    ASSERT_TRUE(e.where().has_value());
  }
}

TEST(Dpii, ArgumentErrors) {
  EXPECT_THROW(dcmap::dpii_solve(1.5, 0), Error);
  const auto sol = dcmap::dpii_solve(1.5, 10);
  EXPECT_THROW(dcmap::dpii_residual(sol, 0), Error);
  EXPECT_THROW(dcmap::dpii_residual(sol, 10), Error);
  EXPECT_THROW(sol.alpha(11), Error);
}

TEST(AlphaFromLattice, ZeroEdge) {
  auto lat = dcmap::generate(dcmap::MapKind::Zc, 1.0, 4);
  lat.set(2, 1, lat.at(1, 1));
  try {
    dcmap::alpha_from_lattice(lat, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroEdge);
  }
}

}  // namespace
