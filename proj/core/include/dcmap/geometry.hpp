#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dcmap/radii.hpp"

namespace dcmap {

struct Circle {
  SublatticeLabel label;
  ExtendedComplex center;
  /// kLineRadius for a straight line, 0 for a point.
  double radius = 0;
  /// Two points of a line circle (its finite lattice neighbours).
  std::optional<std::array<complex, 2>> line_through;
};

class CirclePattern {
 public:
  CirclePattern(std::vector<Circle> circles, int lattice_size);

  const std::vector<Circle>& circles() const { return circles_; }
  int lattice_size() const { return size_; }
  const Circle* find(SublatticeLabel z) const;
  void set_radius(SublatticeLabel z, double r);

  /// Circles sharing two intersection points (z and z+1, z and z+i); each
  /// unordered pair once.
  std::vector<std::pair<SublatticeLabel, SublatticeLabel>> neighbor_pairs() const;
  /// Circles touching at one vertex (z and z+1+i, z and z-1+i).
  std::vector<std::pair<SublatticeLabel, SublatticeLabel>> half_neighbor_pairs() const;

 private:
  std::size_t slot(SublatticeLabel z) const;

  std::vector<Circle> circles_;
  std::vector<int> lookup_;
  int size_;
};

/// One circle per even vertex, centred at f(n,m) with the extracted radius.
CirclePattern circles(const ConformalLattice& lat, const ToleranceConfig& tol = {});

struct IncidenceViolation {
  SublatticeLabel a;
  SublatticeLabel b;
  bool tangency = false;  ///< false: orthogonality test
  double defect = 0;
};

struct IncidenceReport {
  std::size_t neighbor_pairs = 0;
  std::size_t half_neighbor_pairs = 0;
  std::vector<IncidenceViolation> violations;
  /// Line and point circles, left out of the metric tests.
  std::vector<SublatticeLabel> skipped;

  bool ok() const { return violations.empty(); }
};

/// Neighbours must intersect orthogonally, |O1-O2|^2 = r1^2 + r2^2, and
/// half-neighbours touch, |O1-O2| = r1 + r2, both relative to rel_tol.
IncidenceReport incidence_check(const CirclePattern& pattern, const ToleranceConfig& tol = {});

struct QuadCell {
  LatticeIndex index;
  std::array<ExtendedComplex, 4> vertices;  ///< f(n,m), f(n+1,m), f(n+1,m+1), f(n,m+1)
};

std::vector<QuadCell> quad_cells(const ConformalLattice& lat);

struct OverlapReport {
  bool ok = true;
  /// Lexicographically smallest violating pair; (q, q) for a quad that is
  /// self-intersecting or degenerate on its own.
  std::optional<std::pair<LatticeIndex, LatticeIndex>> witness;
  std::vector<LatticeIndex> self_intersecting;
  std::vector<LatticeIndex> degenerate;
  /// Seed quads of Z^2 whose coincident vertices come from the initial data.
  std::vector<LatticeIndex> exempt;
  /// Quads with the infinite vertex; planar tests do not apply.
  std::vector<LatticeIndex> excluded_infinite;
  std::size_t pairs_tested = 0;
};

enum class PairSearch { SpatialHash, BruteForce };

/// Open interiors of edge- or vertex-adjacent quads are disjoint.
OverlapReport is_immersed(const ConformalLattice& lat, const ToleranceConfig& tol = {});

/// Open interiors of all quad pairs are disjoint.
OverlapReport is_embedded(const ConformalLattice& lat, const ToleranceConfig& tol = {},
                          PairSearch search = PairSearch::SpatialHash);

/// Same as is_embedded for an arbitrary quad collection (no seed exemptions).
OverlapReport is_embedded(std::span<const QuadCell> cells, const ToleranceConfig& tol = {},
                          PairSearch search = PairSearch::SpatialHash);

}  // namespace dcmap
