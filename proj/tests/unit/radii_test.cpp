#include <cmath>
#include <numbers>

#include "dcmap/radii.hpp"
#include "oracles.hpp"

#include "gtest/gtest.h"

namespace {

using dcmap::Error;
using dcmap::ErrorKind;
using dcmap::MapKind;
using dcmap::RadiusField;
using dcmap::SublatticeLabel;

constexpr double kPi = std::numbers::pi;

TEST(SublatticeLabel, IndexRoundTrip) {
  for (int N = -5; N <= 5; ++N)
    for (int M = std::abs(N); M <= 8; ++M) {
      const SublatticeLabel z{N, M};
      EXPECT_EQ(SublatticeLabel::from_index(z.to_index()), z);
      const auto i = z.to_index();
      EXPECT_EQ((i.n + i.m) % 2, 0);
    }
  EXPECT_FALSE((SublatticeLabel{3, 2}).in_quadrant());
}

TEST(ExtractRadii, IdentityIsUnit) {
  const auto field = dcmap::extract_radii(dcmap::generate(MapKind::Zc, 1.0, 12));
  for (const auto& z : field.labels()) EXPECT_NEAR(field.at(z), 1.0, 1e-12);
  const auto xy = dcmap::xy_from_radii(field);
  EXPECT_NEAR(xy.x({0, 3}), 0.0, 1e-12);
  EXPECT_NEAR(xy.y({0, 3}), 0.0, 1e-12);
}

TEST(ExtractRadii, Seeds) {
  for (double c : {0.5, 1.5}) {
    const auto field = dcmap::extract_radii(dcmap::generate(MapKind::Zc, c, 10));
    EXPECT_NEAR(field.at({0, 0}), 1.0, 1e-10);
    EXPECT_NEAR(field.at({0, 1}), std::tan(c * kPi / 4), 1e-10);
    EXPECT_NEAR(field.at({1, 1}), c / (2 - c), 1e-10);
    EXPECT_DOUBLE_EQ(field.c(), c);
  }
}

TEST(ExtractRadii, Z2BorderAndPoint) {
  const auto field = dcmap::extract_radii(dcmap::generate(MapKind::Z2, 2.0, 30));
  EXPECT_TRUE(dcmap::is_point(field.at({0, 0})));
  for (int N = 1; N <= 15; ++N) EXPECT_NEAR(field.at({N, N}), N, 1e-10 * N) << N;
  EXPECT_DOUBLE_EQ(field.c(), 2.0);
}

TEST(ExtractRadii, LogLineAndReciprocal) {
  const auto z2 = dcmap::extract_radii(dcmap::generate(MapKind::Z2, 2.0, 30));
  const auto log = dcmap::extract_radii(dcmap::generate(MapKind::Log, 0.0, 30));
  EXPECT_TRUE(dcmap::is_line(log.at({0, 0})));
  EXPECT_DOUBLE_EQ(log.c(), 0.0);
  for (const auto& z : log.labels()) {
    if (z == SublatticeLabel{0, 0}) continue;
    EXPECT_NEAR(log.at(z) * z2.at(z), 1.0, 1e-9) << z.N << "," << z.M;
  }
}

TEST(ExtractRadii, EquiViolationOnPerturbedVertex) {
  auto lat = dcmap::generate(MapKind::Zc, 1.5, 8);
  lat.set(3, 4, lat.at(3, 4).value() + dcmap::complex(1e-4, 0));
  try {
    dcmap::extract_radii(lat);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EquiViolation);
    ASSERT_TRUE(e.where().has_value());
  }
}

TEST(RadiusResiduals, VanishOnZc) {
  for (double c : {0.5, 1.5}) {
    const auto field = dcmap::extract_radii(dcmap::generate(MapKind::Zc, c, 40));
    const auto labels = dcmap::residual_labels(field);
    ASSERT_GT(labels.size(), 300u);
    for (const auto& z : labels) ASSERT_LT(dcmap::radius_residuals(field, z).max(), 1e-12) << z.N << "," << z.M;
    const auto xy = dcmap::xy_from_radii(field);
    for (const auto& z : dcmap::xy_residual_labels(xy)) ASSERT_LT(dcmap::xy_residuals(xy, z).max(), 1e-11);
  }
}

TEST(RadiusResiduals, NonFiniteStencil) {
  const auto field = dcmap::extract_radii(dcmap::generate(MapKind::Z2, 2.0, 10));
  try {
    dcmap::radius_residuals(field, {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFiniteRadius);
  }
  const auto zc = dcmap::extract_radii(dcmap::generate(MapKind::Zc, 1.5, 4));
  EXPECT_THROW(dcmap::radius_residuals(zc, {0, 4}), Error);
}

TEST(SignCondition, HoldsOnZcAndFailsOnFabrication) {
  const auto field = dcmap::extract_radii(dcmap::generate(MapKind::Zc, 1.5, 30));
  for (const auto& z : field.labels()) {
    if (!field.contains(z.shifted(0, -1)) || !field.contains(z.shifted(1, 0))) continue;
    ASSERT_TRUE(dcmap::sign_condition(field, z)) << z.N << "," << z.M;
  }
  RadiusField fake(1.5, 4);
  fake.set({0, 1}, 1.0);
  fake.set({0, 0}, 2.0);
  fake.set({1, 1}, 2.0);
  EXPECT_FALSE(dcmap::sign_condition(fake, {0, 1}));
}

TEST(DualRadii, ReciprocalAndInvolution) {
  const auto field = dcmap::extract_radii(dcmap::generate(MapKind::Zc, 1.5, 12));
  const auto dual = dcmap::dual_radii(field);
  EXPECT_DOUBLE_EQ(dual.c(), 0.5);
  const auto back = dcmap::dual_radii(dual);
  for (const auto& z : field.labels()) {
    EXPECT_DOUBLE_EQ(dual.at(z), 1.0 / field.at(z));
    EXPECT_NEAR(back.at(z), field.at(z), 1e-15 * field.at(z));
  }
  // The reciprocal field solves the equations with exponent 2 - c.
  for (const auto& z : dcmap::residual_labels(dual)) ASSERT_LT(dcmap::radius_residuals(dual, z).max(), 1e-12);
}

TEST(LabelGrid, MissingAndOutOfRange) {
  dcmap::LabelGrid grid(4);
  EXPECT_FALSE(grid.contains({0, 1}));
  EXPECT_THROW(grid.at({0, 1}), Error);
  EXPECT_THROW(grid.set({0, 9}, 1.0), Error);
  grid.set({1, 1}, 3.0);
  EXPECT_EQ(grid.at({1, 1}), 3.0);
  EXPECT_EQ(grid.labels().size(), 1u);
}

}  // namespace
