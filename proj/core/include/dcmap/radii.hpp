#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "dcmap/lattice.hpp"

namespace dcmap {

/// Label z = N + iM of a circle; the centre is the even vertex
/// n = N + M, m = M - N. Labels of the quadrant satisfy M >= |N|.
struct SublatticeLabel {
  int N = 0;
  int M = 0;

  LatticeIndex to_index() const { return {N + M, M - N}; }
  static SublatticeLabel from_index(LatticeIndex i) { return {(i.n - i.m) / 2, (i.n + i.m) / 2}; }
  bool in_quadrant() const { return M >= (N < 0 ? -N : N); }
  SublatticeLabel shifted(int dN, int dM) const { return {N + dN, M + dM}; }

  friend auto operator<=>(const SublatticeLabel&, const SublatticeLabel&) = default;
};

/// Radius of a straight-line circle (the Log circle at z = 0).
inline constexpr double kLineRadius = std::numeric_limits<double>::infinity();

inline bool is_line(double r) { return std::isinf(r); }
/// Zero radius: the circle degenerates to its centre (Z^2 at z = 0).
inline bool is_point(double r) { return r == 0.0; }
inline bool is_proper_radius(double r) { return std::isfinite(r) && r > 0.0; }

/// Values stored per label for the even vertices of a lattice of given size.
class LabelGrid {
 public:
  explicit LabelGrid(int lattice_size);

  int lattice_size() const { return size_; }
  bool in_range(SublatticeLabel z) const;
  bool contains(SublatticeLabel z) const;
  /// Throws MissingNeighbor if z has no stored value.
  double at(SublatticeLabel z) const;
  void set(SublatticeLabel z, double value);
  std::vector<SublatticeLabel> labels() const;

 private:
  std::size_t slot(SublatticeLabel z) const;

  int size_;
  std::vector<double> values_;
};

class RadiusField {
 public:
  RadiusField(double c, int lattice_size) : c_(c), grid_(lattice_size) {}

  double c() const { return c_; }
  int lattice_size() const { return grid_.lattice_size(); }
  bool contains(SublatticeLabel z) const { return grid_.contains(z); }
  double at(SublatticeLabel z) const { return grid_.at(z); }
  void set(SublatticeLabel z, double r) { grid_.set(z, r); }
  std::vector<SublatticeLabel> labels() const { return grid_.labels(); }

 private:
  double c_;
  LabelGrid grid_;
};

/// X and Y edge variables, (1+X)/(1-X) = R(N+1,M)/R(N,M) and
/// (1+Y)/(1-Y) = R(N,M)/R(N,M-1).
class EdgeRatioField {
 public:
  EdgeRatioField(double c, int lattice_size) : c_(c), x_(lattice_size), y_(lattice_size) {}

  double c() const { return c_; }
  int lattice_size() const { return x_.lattice_size(); }
  bool has_x(SublatticeLabel z) const { return x_.contains(z); }
  bool has_y(SublatticeLabel z) const { return y_.contains(z); }
  double x(SublatticeLabel z) const { return x_.at(z); }
  double y(SublatticeLabel z) const { return y_.at(z); }
  void set_x(SublatticeLabel z, double v) { x_.set(z, v); }
  void set_y(SublatticeLabel z, double v) { y_.set(z, v); }

 private:
  double c_;
  LabelGrid x_;
  LabelGrid y_;
};

/// Circle radii |f(n,m) - f(n+1,m)| at every even vertex, after checking that
/// all available edges at the vertex share one length (EquiViolation
/// otherwise). An infinite centre yields kLineRadius. The field exponent is
/// canonical_exponent(kind, c).
RadiusField extract_radii(const ConformalLattice& lat, const ToleranceConfig& tol = {});

struct RadiusResiduals {
  double ln_r = 0;
  double square = 0;
  double ri = 0;
  double le = 0;
  double up = 0;

  double max() const;
};

/// Defects of the five radius equations at z, each divided by the sum of the
/// magnitudes of its expanded monomials. Needs z, z +- 1, z +- i and z + 1 + i.
RadiusResiduals radius_residuals(const RadiusField& field, SublatticeLabel z);

/// Labels whose full radius_residuals stencil is stored with proper radii.
std::vector<SublatticeLabel> residual_labels(const RadiusField& field);

/// (c - 1)(R(z)^2 - R(z-i) R(z+1)) >= -abs_tol * max(1, R(z)^2).
bool sign_condition(const RadiusField& field, SublatticeLabel z, const ToleranceConfig& tol = {});

EdgeRatioField xy_from_radii(const RadiusField& field);

/// Inverse of the edge-variable map: (1 + t) / (1 - t).
inline double ratio_from_edge_variable(double t) { return (1.0 + t) / (1.0 - t); }

struct XyResiduals {
  double ri_t = 0;
  double square_t = 0;
  double in_r = 0;
  double out_r = 0;

  double max() const;
};

/// Normalized defects of the X/Y forms of (Ri), (square) and the inner and
/// outer compatibility relations at z. Needs X(N,M), X(N,M+1), X(N-1,M),
/// Y(N,M), Y(N,M+1), Y(N+1,M+1).
XyResiduals xy_residuals(const EdgeRatioField& xy, SublatticeLabel z);

std::vector<SublatticeLabel> xy_residual_labels(const EdgeRatioField& xy);

/// Pointwise reciprocal with exponent 2 - c; lines and points swap.
RadiusField dual_radii(const RadiusField& field);

}  // namespace dcmap
