#include <cmath>
#include <numbers>
#include <vector>

#include "dcmap/lattice.hpp"
#include "oracles.hpp"

#include "gtest/gtest.h"

namespace {

using dcmap::complex;
using dcmap::ConformalLattice;
using dcmap::Error;
using dcmap::ErrorKind;
using dcmap::ExtendedComplex;
using dcmap::MapKind;

constexpr double kPi = std::numbers::pi;

double dist(const ExtendedComplex& a, complex b) { return std::abs(a.value() - b); }

TEST(Generate, IdentityIsExact) {
  const auto lat = dcmap::generate(MapKind::Zc, 1.0, 30);
  for (int n = 0; n <= 30; ++n)
    for (int m = 0; m <= 30; ++m) ASSERT_LT(dist(lat.at(n, m), complex(n, m)), 1e-12) << n << "," << m;
}

TEST(Generate, ZcAxisSeeds) {
  for (double c : {0.5, 1.5}) {
    const auto lat = dcmap::generate(MapKind::Zc, c, 10);
    EXPECT_EQ(lat.at(0, 0), ExtendedComplex(0.0));
    EXPECT_LT(dist(lat.at(1, 0), 1.0), 1e-15);
    EXPECT_LT(dist(lat.at(0, 1), std::polar(1.0, c * kPi / 2)), 1e-15);
    // Constraint at (1,0) by hand: c (x - 0) = 2 (x - 1).
    EXPECT_LT(dist(lat.at(2, 0), 2.0 / (2.0 - c)), 1e-14);
    // The imaginary axis is the real one rotated by c pi / 2.
    for (int k = 0; k <= 10; ++k) {
      EXPECT_LT(dist(lat.at(0, k), std::polar(1.0, c * kPi / 2) * lat.at(k, 0).value()), 1e-12 * (1 + k * k));
    }
  }
}

TEST(Generate, ZcSatisfiesBothEquations) {
  for (double c : {0.5, 1.25, 1.5}) {
    const auto lat = dcmap::generate(MapKind::Zc, c, 30);
    for (int n = 0; n < 30; ++n)
      for (int m = 0; m < 30; ++m) ASSERT_LT(oracle::quad_defect(lat, n, m), 1e-12L) << n << "," << m;
    for (int n = 1; n < 30; ++n)
      for (int m = 1; m < 30; ++m) ASSERT_LT(oracle::constraint_defect(lat, n, m), 1e-11L) << n << "," << m;
    EXPECT_LT(dcmap::max_cross_ratio_defect(lat), 1e-12);
    EXPECT_LT(dcmap::max_constraint_residual(lat), 1e-12);
  }
}

TEST(Generate, ZcIsSymmetricAboutTheBisector) {
  // Reflection in the line at angle c pi / 4 swaps n and m.
  for (double c : {0.5, 1.5}) {
    const auto lat = dcmap::generate(MapKind::Zc, c, 25);
    const complex rot = std::polar(1.0, c * kPi / 2);
    for (int n = 0; n <= 25; ++n)
      for (int m = 0; m <= 25; ++m) {
        const complex mirrored = rot * std::conj(lat.at(n, m).value());
        ASSERT_LT(dist(lat.at(m, n), mirrored), 1e-12 * (1 + std::abs(mirrored))) << n << "," << m;
      }
  }
}

TEST(Generate, Z2InitialDataAndAxes) {
  const auto lat = dcmap::generate(MapKind::Z2, 2.0, 20);
  EXPECT_LT(dist(lat.at(1, 1), complex(0, 2 / kPi)), 1e-15);
  EXPECT_LT(dist(lat.at(0, 2), -1.0), 1e-15);
  for (int k = 0; k <= 20; ++k) {
    EXPECT_LT(dist(lat.at(k, 0), static_cast<double>(oracle::z2_axis(k))), 1e-9) << k;
    EXPECT_LT(dist(lat.at(0, k), -static_cast<double>(oracle::z2_axis(k))), 1e-9) << k;
  }
  for (int n = 1; n < 20; ++n)
    for (int m = 1; m < 20; ++m) ASSERT_LT(oracle::constraint_defect(lat, n, m), 1e-11L);
}

TEST(Generate, LogInitialDataAndAxes) {
  const auto lat = dcmap::generate(MapKind::Log, 0.0, 20);
  EXPECT_TRUE(lat.at(0, 0).is_infinite());
  EXPECT_LT(dist(lat.at(1, 1), complex(0, kPi / 2)), 1e-15);
  EXPECT_LT(dist(lat.at(0, 1), complex(0, kPi)), 1e-15);
  EXPECT_LT(dist(lat.at(0, 2), complex(1, kPi)), 1e-15);
  for (int k = 1; k <= 20; ++k) {
    const double x = static_cast<double>(oracle::log_axis(k));
    EXPECT_LT(dist(lat.at(k, 0), x), 1e-12) << k;
    EXPECT_LT(dist(lat.at(0, k), complex(x, kPi)), 1e-12) << k;
  }
  for (int n = 1; n < 20; ++n)
    for (int m = 1; m < 20; ++m) {
      if (n == 1 && m == 1) continue;
      ASSERT_LT(oracle::constraint_defect(lat, n, m), 1e-11L) << n << "," << m;
    }
}

TEST(Generate, FillOrdersAgree) {
  dcmap::GenerateOptions row;
  row.order = dcmap::FillOrder::RowMajor;
  for (MapKind kind : {MapKind::Zc, MapKind::Z2, MapKind::Log}) {
    const auto a = dcmap::generate(kind, 1.5, 30);
    const auto b = dcmap::generate(kind, 1.5, 30, row);
    EXPECT_EQ(a.values(), b.values()) << dcmap::to_string(kind);
  }
}

TEST(Generate, AutomaticPrecisionIsConverged) {
  dcmap::GenerateOptions more;
  more.precision_bits = dcmap::default_precision_bits(60) + 256;
  const auto a = dcmap::generate(MapKind::Zc, 1.5, 60);
  const auto b = dcmap::generate(MapKind::Zc, 1.5, 60, more);
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    const complex x = a.values()[k].value(), y = b.values()[k].value();
    ASSERT_LE(std::abs(x - y), 1e-14 * std::max(1.0, std::abs(y))) << k;
  }
}

TEST(Generate, DoublePrecisionDrifts) {
  // Rounding grows by about 3 + 2 sqrt 2 per diagonal step, so a binary64
  // construction is far off long before size 40.
  dcmap::GenerateOptions low;
  low.precision_bits = 53;
  const auto a = dcmap::generate(MapKind::Zc, 1.5, 40);
  const auto b = dcmap::generate(MapKind::Zc, 1.5, 40, low);
  EXPECT_GT(std::abs(a.at(35, 35).value() - b.at(35, 35).value()), 1e-3);
}

TEST(Generate, RejectsBadArguments) {
  EXPECT_THROW(dcmap::generate(MapKind::Zc, 2.5, 10), Error);
  EXPECT_THROW(dcmap::generate(MapKind::Zc, 0.0, 10), Error);
  EXPECT_THROW(dcmap::generate(MapKind::Zc, 1.0, 1), Error);
  try {
    dcmap::generate(MapKind::Zc, 2.0, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Generate, NaiveKeepsEquidistantAxes) {
  const auto lat = dcmap::generate_naive(1.5, 12);
  for (int k = 0; k <= 12; ++k) {
    EXPECT_LT(dist(lat.at(k, 0), static_cast<double>(k)), 1e-12);
    EXPECT_LT(dist(lat.at(0, k), std::polar(static_cast<double>(k), 0.75 * kPi)), 1e-12);
  }
  EXPECT_LT(dcmap::max_cross_ratio_defect(lat), 1e-10);
  EXPECT_GT(dcmap::max_constraint_residual(lat), 1e-3);
}

TEST(BoundaryExtend, Z2AndLogSteps) {
  const std::vector<ExtendedComplex> z2{0.0, 0.0, 1.0};
  EXPECT_LT(dist(dcmap::boundary_extend(MapKind::Z2, 2.0, z2), 2.0), 1e-15);
  const std::vector<ExtendedComplex> log{ExtendedComplex::infinity(), 0.0};
  EXPECT_LT(dist(dcmap::boundary_extend(MapKind::Log, 0.0, log), 1.0), 1e-15);
  const std::vector<ExtendedComplex> log3{ExtendedComplex::infinity(), 0.0, 1.0, 2.0};
  EXPECT_LT(dist(dcmap::boundary_extend(MapKind::Log, 0.0, log3), 2.5), 1e-15);
}

TEST(BoundaryExtend, SingularStep) {
  // c f_1 (x - f_0) = 2 (x - f_1)(f_1 - f_0) loses x when c f_1 = 2 (f_1 - f_0).
  const std::vector<ExtendedComplex> axis{1.0, 2.0};
  try {
    dcmap::boundary_extend(MapKind::Zc, 1.0, axis);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularStep);
  }
  EXPECT_THROW(dcmap::boundary_extend(MapKind::Zc, 1.0, std::vector<ExtendedComplex>{1.0}), Error);
}

TEST(DualMap, Z2DualIsNegatedLog) {
  const auto z2 = dcmap::generate(MapKind::Z2, 2.0, 30);
  const auto log = dcmap::generate(MapKind::Log, 0.0, 30);
  const auto dual = dcmap::dual_map(z2, {1, 0}, 0.0);
  EXPECT_EQ(dual.kind(), MapKind::Log);
  EXPECT_LT(dcmap::duality_defect(z2, dual), 1e-12);
  for (int n = 0; n <= 30; ++n)
    for (int m = 0; m <= 30; ++m) {
      const auto& l = log.at(n, m);
      if (l.is_infinite()) continue;
      ASSERT_TRUE(dual.at(n, m).is_finite());
      ASSERT_LT(std::abs(-dual.at(n, m).value() - l.value()), 1e-9 * (1 + std::abs(l.value()))) << n << "," << m;
    }
}

TEST(DualMap, ZcDualHasComplementaryExponent) {
  const auto lat = dcmap::generate(MapKind::Zc, 1.5, 20);
  const auto dual = dcmap::dual_map(lat, {0, 0}, 0.0);
  EXPECT_EQ(dual.kind(), MapKind::Zc);
  EXPECT_DOUBLE_EQ(dual.c(), 0.5);
  EXPECT_LT(dcmap::max_cross_ratio_defect(dual), 1e-10);
}

TEST(DualMap, ZeroEdgeBetweenFiniteVertices) {
  auto lat = dcmap::generate(MapKind::Zc, 1.0, 3);
  lat.set(1, 1, lat.at(1, 0));
  try {
    dcmap::dual_map(lat, {0, 0}, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroEdge);
  }
}

TEST(ConstraintResidual, DetectsPerturbation) {
  auto lat = dcmap::generate(MapKind::Zc, 1.5, 10);
  EXPECT_LT(dcmap::constraint_residual(lat, {4, 5}), 1e-13);
  lat.set(4, 5, lat.at(4, 5).value() + complex(1e-3, 0));
  EXPECT_GT(dcmap::constraint_residual(lat, {4, 5}), 1e-6);
  lat.set(4, 4, ExtendedComplex::infinity());
  EXPECT_TRUE(std::isnan(dcmap::constraint_residual(lat, {4, 5})));
}

TEST(Lattice, IndexingAndKinds) {
  ConformalLattice lat(MapKind::Zc, 1.0, 3);
  EXPECT_TRUE(lat.contains(3, 3));
  EXPECT_FALSE(lat.contains(4, 0));
  EXPECT_THROW(lat.at(-1, 0), Error);
  EXPECT_THROW(ConformalLattice(MapKind::Zc, 1.0, 2, std::vector<ExtendedComplex>(4)), Error);
  EXPECT_EQ(dcmap::parse_map_kind("log"), MapKind::Log);
  EXPECT_THROW(dcmap::parse_map_kind("z3"), Error);
  EXPECT_EQ(dcmap::canonical_exponent(MapKind::Z2, 0.3), 2.0);
  EXPECT_EQ(dcmap::canonical_exponent(MapKind::Log, 0.3), 0.0);
}

}  // namespace
