#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dcmap/numerics.hpp"

namespace dcmap {

enum class MapKind { Zc, Z2, Log };

const char* to_string(MapKind kind) noexcept;
/// Parses "zc", "z2" or "log". Throws InvalidArgument otherwise.
MapKind parse_map_kind(std::string_view text);

/// Exponent implied by the kind: 2 for Z2, 0 for Log (the c = 0 convention of
/// the radius equations); Zc carries its own.
double canonical_exponent(MapKind kind, double c);

struct LatticeIndex {
  int n = 0;
  int m = 0;
  friend auto operator<=>(const LatticeIndex&, const LatticeIndex&) = default;
};

/// Values f(n,m) for 0 <= n, m <= size of a discrete conformal map.
class ConformalLattice {
 public:
  ConformalLattice(MapKind kind, double c, int size);
  ConformalLattice(MapKind kind, double c, int size, std::vector<ExtendedComplex> values);

  MapKind kind() const { return kind_; }
  double c() const { return c_; }
  int size() const { return size_; }

  bool contains(int n, int m) const { return n >= 0 && m >= 0 && n <= size_ && m <= size_; }
  bool contains(LatticeIndex i) const { return contains(i.n, i.m); }

  const ExtendedComplex& at(int n, int m) const;
  const ExtendedComplex& at(LatticeIndex i) const { return at(i.n, i.m); }
  void set(int n, int m, ExtendedComplex value);

  /// Row-major storage, index n * (size + 1) + m.
  const std::vector<ExtendedComplex>& values() const { return values_; }

 private:
  std::size_t offset(int n, int m) const;

  MapKind kind_;
  double c_;
  int size_;
  std::vector<ExtendedComplex> values_;
};

enum class FillOrder { AntiDiagonal, RowMajor };

struct GenerateOptions {
  FillOrder order = FillOrder::AntiDiagonal;
  /// Working precision of the construction in bits; 0 selects 128 + 3 * size.
  /// Forward propagation amplifies rounding by about 3 + 2*sqrt(2) per
  /// diagonal step, so binary64 (53) is only usable for small sizes.
  long precision_bits = 0;
  ToleranceConfig tol{};
};

long default_precision_bits(int size);

/// Next axis value f(n+1) from f(0..n) via the constraint restricted to an
/// axis, in the regularized form
///   Zc, Z2:  c f_n (x - f_{n-1}) = 2n (x - f_n)(f_n - f_{n-1})
///   Log:         (x - f_{n-1}) =  n (x - f_n)(f_n - f_{n-1})
/// with f_{n-1} possibly infinite for Log. Throws SingularStep when the
/// coefficient of x vanishes.
ExtendedComplex boundary_extend(MapKind kind, double c, std::span<const ExtendedComplex> axis,
                                const ToleranceConfig& tol = {});

/// Builds Z^c (0 < c < 2), Z^2 or Log on 0 <= n, m <= size. Seeds the initial
/// data, extends both axes with the constraint and fills the interior with
/// solve_fourth. Errors carry the offending lattice index.
ConformalLattice generate(MapKind kind, double c, int size, const GenerateOptions& opts = {});

/// Equidistant axes f(n,0) = n, f(0,m) = e^{ic pi/2} m filled by the
/// cross-ratio equation alone, without the constraint.
ConformalLattice generate_naive(double c, int size, const GenerateOptions& opts = {});

/// Dual map: f*(n+1,m) - f*(n,m) = -1 / (f(n+1,m) - f(n,m)) and
/// f*(n,m+1) - f*(n,m) = 1 / (f(n,m+1) - f(n,m)), with f*(anchor_at) =
/// anchor_value. Vertices reachable only through zero-length edges become the
/// point at infinity; a zero edge between two otherwise finite vertices throws
/// ZeroEdge. The result kind is Log for Z2, Z2 for Log and Zc(2 - c) for Zc.
ConformalLattice dual_map(const ConformalLattice& lat, LatticeIndex anchor_at,
                          ExtendedComplex anchor_value, const ToleranceConfig& tol = {});

/// Largest relative mismatch between the edges of dual and the duality rule
/// applied to lat, over all edges with finite endpoints.
double duality_defect(const ConformalLattice& lat, const ConformalLattice& dual);

/// Normalized defect of the regularized constraint at an interior index
/// (1 <= n, m < size). For Log the left side is 1 and the weights are n, m.
/// Returns NaN if a stencil value is infinite.
double constraint_residual(const ConformalLattice& lat, LatticeIndex at);

/// |q + 1| over every elementary quadrilateral with four finite, pairwise
/// distinct vertices; max over the lattice.
double max_cross_ratio_defect(const ConformalLattice& lat, const ToleranceConfig& tol = {});

/// Max constraint_residual over all interior indices with finite stencils.
double max_constraint_residual(const ConformalLattice& lat);

}  // namespace dcmap
