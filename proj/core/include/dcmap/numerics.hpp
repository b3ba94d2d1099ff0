#pragma once

#include <complex>

#include "dcmap/error.hpp"

namespace dcmap {

using complex = std::complex<double>;

struct ToleranceConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  /// Relative threshold below which a difference of lattice values is
  /// treated as zero (scaled by the magnitude of the operands, floor 1).
  double degenerate_tol = 1e-12;

  /// Throws InvalidArgument unless every tolerance is strictly positive.
  void validate() const;
};

/// A point of the extended complex plane: a finite value or the single
/// projective point at infinity.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;
  constexpr ExtendedComplex(double re, double im = 0.0) : value_(re, im) {}
  constexpr ExtendedComplex(complex z) : value_(z) {}

  static constexpr ExtendedComplex infinity() {
    ExtendedComplex z;
    z.infinite_ = true;
    return z;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  /// Finite value. Throws InvalidArgument at infinity.
  complex value() const;
  double re() const { return value().real(); }
  double im() const { return value().imag(); }

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ && b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  complex value_{};
  bool infinite_ = false;
};

/// q(a,b,c,d) = (a-b)(c-d) / ((b-c)(d-a)).
///
/// One argument may be infinite; the two factors containing it cancel.
/// Throws DegenerateQuad if a remaining denominator factor vanishes and
/// InvalidArgument if more than one argument is infinite.
ExtendedComplex cross_ratio(const ExtendedComplex& a, const ExtendedComplex& b,
                            const ExtendedComplex& c, const ExtendedComplex& d,
                            const ToleranceConfig& tol = {});

/// The vertex d completing the cyclic quadrilateral (a, b, c, d) to a
/// conformal square, q(a,b,c,d) = -1:
///   d = (ab + bc - 2ac) / (2b - a - c).
/// With b the shared neighbour of a and c, this fills the lattice corner
/// opposite to b. Throws DegenerateQuad when the inputs are not pairwise
/// distinct or 2b = a + c.
ExtendedComplex solve_fourth(const ExtendedComplex& a, const ExtendedComplex& b,
                             const ExtendedComplex& c, const ToleranceConfig& tol = {});

}  // namespace dcmap
