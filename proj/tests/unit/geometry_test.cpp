#include <array>
#include <vector>

#include "dcmap/geometry.hpp"
#include "oracles.hpp"

#include "gtest/gtest.h"

namespace {

using dcmap::complex;
using dcmap::ExtendedComplex;
using dcmap::LatticeIndex;
using dcmap::MapKind;
using dcmap::PairSearch;
using dcmap::QuadCell;

QuadCell quad(int n, int m, std::array<complex, 4> p) {
  return {{n, m}, {ExtendedComplex(p[0]), ExtendedComplex(p[1]), ExtendedComplex(p[2]), ExtendedComplex(p[3])}};
}

QuadCell unit_square(int n, int m, complex origin) {
  return quad(n, m, {origin, origin + 1.0, origin + complex(1, 1), origin + complex(0, 1)});
}

TEST(QuadCells, CountAndOrder) {
  const auto lat = dcmap::generate(MapKind::Zc, 1.0, 5);
  const auto cells = dcmap::quad_cells(lat);
  ASSERT_EQ(cells.size(), 25u);
  EXPECT_EQ(cells[7].index, (LatticeIndex{1, 2}));
  EXPECT_EQ(cells[7].vertices[2], lat.at(2, 3));
}

TEST(Overlap, SharedEdgeAndVertexAreDisjoint) {
  const std::vector<QuadCell> cells{unit_square(0, 0, 0.0), unit_square(1, 0, 1.0), unit_square(1, 1, complex(1, 1))};
  const auto r = dcmap::is_embedded(cells);
  EXPECT_TRUE(r.ok);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(Overlap, OverlappingSquaresGiveWitness) {
  const std::vector<QuadCell> cells{unit_square(0, 0, 0.0), unit_square(0, 1, complex(0, 1)),
                                    unit_square(3, 3, complex(0.5, 0.5))};
  for (auto search : {PairSearch::SpatialHash, PairSearch::BruteForce}) {
    const auto r = dcmap::is_embedded(cells, {}, search);
    ASSERT_FALSE(r.ok);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->first, (LatticeIndex{0, 0}));
    EXPECT_EQ(r.witness->second, (LatticeIndex{3, 3}));
  }
}

TEST(Overlap, BowTieAndDegenerate) {
  const std::vector<QuadCell> bow{quad(0, 0, {0.0, complex(1, 1), 1.0, complex(0, 1)})};
  const auto r = dcmap::is_embedded(bow);
  EXPECT_FALSE(r.ok);
  ASSERT_EQ(r.self_intersecting.size(), 1u);
  EXPECT_EQ(r.witness->first, r.witness->second);

  const std::vector<QuadCell> flat{quad(2, 0, {0.0, 1.0, 2.0, 3.0})};
  const auto d = dcmap::is_embedded(flat);
  EXPECT_FALSE(d.ok);
  EXPECT_EQ(d.degenerate.size(), 1u);
}

TEST(Overlap, ConcaveQuadIsTriangulatedCorrectly) {
  // Dart with its reflex vertex at 0.5+0.5i. A box in the notch lies inside
  // the hull but outside the dart.
  const std::vector<QuadCell> cells{quad(0, 0, {0.0, complex(1, 0.5), 0.0 + complex(0, 1), complex(0.5, 0.5)}),
                                    quad(0, 1, {complex(0.6, 0.45), complex(0.9, 0.48), complex(0.9, 0.52),
                                                complex(0.6, 0.55)})};
  EXPECT_FALSE(dcmap::is_embedded(cells).ok);
  const std::vector<QuadCell> outside{cells[0], quad(0, 1, {complex(0.3, 0.45), complex(0.45, 0.48),
                                                            complex(0.45, 0.52), complex(0.3, 0.55)})};
  EXPECT_TRUE(dcmap::is_embedded(outside).ok);
}

TEST(Embedding, GeneratedLatticesAreEmbedded) {
  for (double c : {0.5, 1.0, 1.5}) {
    const auto r = dcmap::is_embedded(dcmap::generate(MapKind::Zc, c, 20));
    EXPECT_TRUE(r.ok) << "c=" << c;
    EXPECT_TRUE(dcmap::is_immersed(dcmap::generate(MapKind::Zc, c, 20)).ok);
  }
  const auto z2 = dcmap::is_embedded(dcmap::generate(MapKind::Z2, 2.0, 20));
  EXPECT_TRUE(z2.ok);
  ASSERT_EQ(z2.exempt.size(), 1u);
  EXPECT_EQ(z2.exempt[0], (LatticeIndex{0, 0}));
  const auto log = dcmap::is_embedded(dcmap::generate(MapKind::Log, 0.0, 20));
  EXPECT_TRUE(log.ok);
  ASSERT_EQ(log.excluded_infinite.size(), 1u);
}

TEST(Embedding, NaiveLatticeIsNotImmersed) {
  const auto lat = dcmap::generate_naive(1.5, 12);
  const auto r = dcmap::is_immersed(lat);
  ASSERT_FALSE(r.ok);
  ASSERT_TRUE(r.witness.has_value());
  const auto [a, b] = *r.witness;
  EXPECT_LE(std::abs(a.n - b.n), 1);
  EXPECT_LE(std::abs(a.m - b.m), 1);
  EXPECT_FALSE(dcmap::is_embedded(lat).ok);
}

TEST(Embedding, HashMatchesBruteForceOnRandomSoups) {
  oracle::Gen gen(20260401);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<QuadCell> cells;
    const int count = gen.integer(2, 40);
    for (int k = 0; k < count; ++k) {
      const complex o = gen.point(10.0);
      const double s = gen.uniform(0.1, 2.0);
      const complex r = gen.unit() * s;
      cells.push_back(quad(k, 0, {o, o + r, o + r * complex(1, 1), o + r * complex(0, 1)}));
    }
    const auto hashed = dcmap::is_embedded(cells, {}, PairSearch::SpatialHash);
    const auto brute = dcmap::is_embedded(cells, {}, PairSearch::BruteForce);
    ASSERT_EQ(hashed.ok, brute.ok) << "trial " << trial;
    ASSERT_EQ(hashed.witness, brute.witness) << "trial " << trial;
  }
}

TEST(Circles, IncidenceHoldsOnGeneratedPatterns) {
  for (auto [kind, c] : std::vector<std::pair<MapKind, double>>{
           {MapKind::Zc, 0.5}, {MapKind::Zc, 1.5}, {MapKind::Z2, 2.0}, {MapKind::Log, 0.0}}) {
    const auto pattern = dcmap::circles(dcmap::generate(kind, c, 20));
    const auto r = dcmap::incidence_check(pattern);
    EXPECT_TRUE(r.ok()) << dcmap::to_string(kind);
    EXPECT_GT(r.neighbor_pairs, 150u);
    EXPECT_GT(r.half_neighbor_pairs, 150u);
  }
}

TEST(Circles, LineAndPointCircles) {
  const auto log = dcmap::circles(dcmap::generate(MapKind::Log, 0.0, 6));
  const auto* line = log.find({0, 0});
  ASSERT_NE(line, nullptr);
  EXPECT_TRUE(dcmap::is_line(line->radius));
  ASSERT_TRUE(line->line_through.has_value());
  const auto r = dcmap::incidence_check(log);
  ASSERT_EQ(r.skipped.size(), 1u);

  const auto z2 = dcmap::circles(dcmap::generate(MapKind::Z2, 2.0, 6));
  EXPECT_TRUE(dcmap::is_point(z2.find({0, 0})->radius));
  EXPECT_EQ(dcmap::incidence_check(z2).skipped.size(), 1u);
}

TEST(Circles, PerturbedRadiusIsReported) {
  auto pattern = dcmap::circles(dcmap::generate(MapKind::Zc, 1.5, 10));
  pattern.set_radius({1, 3}, pattern.find({1, 3})->radius * 1.01);
  const auto r = dcmap::incidence_check(pattern);
  EXPECT_FALSE(r.ok());
  bool orth = false, tangent = false;
  for (const auto& v : r.violations) (v.tangency ? tangent : orth) = true;
  EXPECT_TRUE(orth);
  EXPECT_TRUE(tangent);
  EXPECT_EQ(pattern.find({20, 1}), nullptr);
}

TEST(Circles, PairCounts) {
  const auto pattern = dcmap::circles(dcmap::generate(MapKind::Zc, 1.0, 4));
  // Even vertices of the 5x5 grid and their orthogonal / tangent neighbours.
  EXPECT_EQ(pattern.circles().size(), 13u);
  EXPECT_EQ(pattern.neighbor_pairs().size(), 16u);
  EXPECT_EQ(pattern.half_neighbor_pairs().size(), 16u);
}

}  // namespace
