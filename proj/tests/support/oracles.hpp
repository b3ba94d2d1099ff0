#pragma once

// Independent reference computations for the tests. Everything here is
// written against the raw formulas in long double and shares no code with
// the library beyond the lattice container.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "dcmap/lattice.hpp"

namespace oracle {

using cld = std::complex<long double>;

inline cld widen(std::complex<double> z) { return {z.real(), z.imag()}; }

inline cld cross_ratio(cld a, cld b, cld c, cld d) { return (a - b) * (c - d) / ((b - c) * (d - a)); }

/// |q + 1| of quad (n,m) with vertices in cyclic order.
inline long double quad_defect(const dcmap::ConformalLattice& lat, int n, int m) {
  const cld a = widen(lat.at(n, m).value()), b = widen(lat.at(n + 1, m).value());
  const cld c = widen(lat.at(n + 1, m + 1).value()), d = widen(lat.at(n, m + 1).value());
  return std::abs(cross_ratio(a, b, c, d) + 1.0L);
}

/// Unregularized constraint
///   c f = 2n (f+ - f)(f - f-)/(f+ - f-) + 2m (...)
/// (Log: 1 = n (...) + m (...)), relative to the largest term.
inline long double constraint_defect(const dcmap::ConformalLattice& lat, int n, int m) {
  const bool log = lat.kind() == dcmap::MapKind::Log;
  const long double c = dcmap::canonical_exponent(lat.kind(), lat.c());
  auto v = [&](int i, int j) { return widen(lat.at(i, j).value()); };
  const cld f = v(n, m);
  const cld tn = (v(n + 1, m) - f) * (f - v(n - 1, m)) / (v(n + 1, m) - v(n - 1, m));
  const cld tm = (v(n, m + 1) - f) * (f - v(n, m - 1)) / (v(n, m + 1) - v(n, m - 1));
  const long double wn = log ? n : 2.0L * n, wm = log ? m : 2.0L * m;
  const cld lhs = log ? cld(1.0L) : c * f;
  const cld rhs = wn * tn + wm * tm;
  const long double scale = std::max({std::abs(lhs), std::abs(wn * tn), std::abs(wm * tm), 1e-300L});
  return std::abs(lhs - rhs) / scale;
}

/// Z^2 on the real axis: floor(n^2 / 4).
inline long double z2_axis(int n) { return std::floor(static_cast<long double>(n) * n / 4.0L); }

/// Log on the real axis from Log(1,0) = 0, Log(2,0) = 1 and the axis form of
/// the constraint, 1 = n (x - b)(b - a) / (x - a).
inline long double log_axis(int n) {
  if (n == 1) return 0;
  long double a = 0, b = 1;
  for (int k = 2; k < n; ++k) {
    const long double x = (1.0L * a - k * b * (b - a)) / (1.0L - k * (b - a));
    a = b;
    b = x;
  }
  return b;
}

/// Hand-rolled generators for property tests.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::complex<double> point(double scale) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
  std::complex<double> unit() { return std::polar(1.0, uniform(0, 2 * std::numbers::pi)); }
  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace oracle
