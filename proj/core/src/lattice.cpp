#include "dcmap/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>

#include "detail/mp_real.hpp"

namespace dcmap {

using detail::MpComplex;
using detail::MpReal;

const char* to_string(MapKind kind) noexcept {
  switch (kind) {
    case MapKind::Zc: return "zc";
    case MapKind::Z2: return "z2";
    case MapKind::Log: return "log";
  }
  return "?";
}

MapKind parse_map_kind(std::string_view text) {
  if (text == "zc") return MapKind::Zc;
  if (text == "z2") return MapKind::Z2;
  if (text == "log") return MapKind::Log;
  throw Error(ErrorKind::InvalidArgument, "unknown map kind '" + std::string(text) + "'");
}

double canonical_exponent(MapKind kind, double c) {
  switch (kind) {
    case MapKind::Z2: return 2.0;
    case MapKind::Log: return 0.0;
    case MapKind::Zc: return c;
  }
  return c;
}

ConformalLattice::ConformalLattice(MapKind kind, double c, int size)
    : ConformalLattice(kind, c, size,
                       std::vector<ExtendedComplex>(
                           static_cast<std::size_t>(size + 1) * static_cast<std::size_t>(size + 1))) {}

ConformalLattice::ConformalLattice(MapKind kind, double c, int size,
                                   std::vector<ExtendedComplex> values)
    : kind_(kind), c_(c), size_(size), values_(std::move(values)) {
  if (size < 0) throw Error(ErrorKind::InvalidArgument, "negative lattice size");
  const auto side = static_cast<std::size_t>(size) + 1;
  if (values_.size() != side * side) {
    throw Error(ErrorKind::InvalidArgument, "lattice value count does not match size");
  }
}

std::size_t ConformalLattice::offset(int n, int m) const {
  if (!contains(n, m)) {
    throw Error(ErrorKind::InvalidArgument, "lattice index out of range",
                ErrorLocation{ErrorLocation::Space::Lattice, n, m});
  }
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(size_ + 1) +
         static_cast<std::size_t>(m);
}

const ExtendedComplex& ConformalLattice::at(int n, int m) const { return values_[offset(n, m)]; }

void ConformalLattice::set(int n, int m, ExtendedComplex value) { values_[offset(n, m)] = value; }

long default_precision_bits(int size) { return 128 + 3L * std::max(size, 0); }

ExtendedComplex boundary_extend(MapKind kind, double c, std::span<const ExtendedComplex> axis,
                                const ToleranceConfig& tol) {
  if (axis.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "boundary_extend needs at least two axis values");
  }
  const int n = static_cast<int>(axis.size()) - 1;
  const ExtendedComplex& prev = axis[axis.size() - 2];
  const ExtendedComplex& cur = axis[axis.size() - 1];
  const ErrorLocation where{ErrorLocation::Space::Sequence, n + 1, 0};
  if (cur.is_infinite()) {
    throw Error(ErrorKind::SingularStep, "current axis value is infinite", where);
  }
  const complex b = cur.value();

  if (kind == MapKind::Log) {
    // As f_{n-1} -> infinity the regularized equation divided by f_{n-1}
    // gives x = f_n + 1/n.
    if (prev.is_infinite()) {
      if (n == 0) throw Error(ErrorKind::SingularStep, "zero weight at n = 0", where);
      return b + 1.0 / static_cast<double>(n);
    }
    const complex a = prev.value();
    const complex step = static_cast<double>(n) * (b - a);
    const complex coef = 1.0 - step;
    if (std::abs(coef) <= tol.degenerate_tol * std::max(1.0, std::abs(step))) {
      throw Error(ErrorKind::SingularStep, "vanishing coefficient of the unknown", where);
    }
    return (a - step * b) / coef;
  }

  if (prev.is_infinite()) {
    throw Error(ErrorKind::SingularStep, "infinite axis value for a power map", where);
  }
  const double cc = canonical_exponent(kind, c);
  const complex a = prev.value();
  const complex lead = cc * b;
  const complex step = 2.0 * static_cast<double>(n) * (b - a);
  const complex coef = lead - step;
  if (std::abs(coef) <= tol.degenerate_tol * std::max(std::abs(lead), std::abs(step))) {
    throw Error(ErrorKind::SingularStep, "vanishing coefficient of the unknown", where);
  }
  return (lead * a - step * b) / coef;
}

namespace {

// Working grid of the high-precision construction; nullopt is infinity.
class MpGrid {
 public:
  MpGrid(int size, long prec)
      : size_(size), cells_(static_cast<std::size_t>(size + 1) * (size + 1)), prec_(prec) {}

  std::optional<MpComplex>& operator()(int n, int m) {
    return cells_[static_cast<std::size_t>(n) * (size_ + 1) + m];
  }
  long prec() const { return prec_; }

  ConformalLattice round(MapKind kind, double c) {
    ConformalLattice out(kind, c, size_);
    for (int n = 0; n <= size_; ++n) {
      for (int m = 0; m <= size_; ++m) {
        const auto& v = (*this)(n, m);
        out.set(n, m, v ? ExtendedComplex(v->to_complex()) : ExtendedComplex::infinity());
      }
    }
    return out;
  }

 private:
  int size_;
  std::vector<std::optional<MpComplex>> cells_;
  long prec_;
};

bool below(const MpReal& x, double tol, const MpReal& scale) {
  return compare(x, tol * scale) <= 0;
}

MpReal mp_max(const MpReal& a, const MpReal& b) { return compare(a, b) >= 0 ? a : b; }

// Axis step in the working precision; mirrors boundary_extend.
MpComplex extend_axis(MapKind kind, const MpReal& c, const MpComplex& prev, const MpComplex& cur,
                      int n, const ToleranceConfig& tol, ErrorLocation where) {
  const long prec = cur.re.precision();
  const MpReal one(1.0, prec);
  if (kind == MapKind::Log) {
    const MpComplex step = static_cast<double>(n) * (cur - prev);
    const MpComplex coef = MpComplex(one, MpReal(prec)) - step;
    if (below(abs(coef), tol.degenerate_tol, mp_max(one, abs(step)))) {
      throw Error(ErrorKind::SingularStep, "vanishing coefficient of the unknown", where);
    }
    return (prev - step * cur) / coef;
  }
  const MpComplex lead = c * cur;
  const MpComplex step = (2.0 * n) * (cur - prev);
  const MpComplex coef = lead - step;
  if (below(abs(coef), tol.degenerate_tol, mp_max(abs(lead), abs(step)))) {
    throw Error(ErrorKind::SingularStep, "vanishing coefficient of the unknown", where);
  }
  return (lead * prev - step * cur) / coef;
}

MpComplex fill_corner(const MpComplex& a, const MpComplex& b, const MpComplex& c,
                      const ToleranceConfig& tol, ErrorLocation where) {
  const long prec = a.re.precision();
  const MpReal scale = mp_max(MpReal(1.0, prec), mp_max(abs(a), mp_max(abs(b), abs(c))));
  if (below(abs(a - b), tol.degenerate_tol, scale) || below(abs(b - c), tol.degenerate_tol, scale) ||
      below(abs(a - c), tol.degenerate_tol, scale)) {
    throw Error(ErrorKind::DegenerateQuad, "coincident vertices in elementary quadrilateral", where);
  }
  const MpComplex den = 2.0 * b - a - c;
  if (below(abs(den), tol.degenerate_tol, scale)) {
    throw Error(ErrorKind::DegenerateQuad, "singular conformal-square solve", where);
  }
  return (a * b + b * c - 2.0 * (a * c)) / den;
}

void fill_interior(MpGrid& grid, int size, FillOrder order, bool skip_corner,
                   const ToleranceConfig& tol) {
  auto cell = [&](int n, int m) {
    if (skip_corner && n == 1 && m == 1) return;
    const ErrorLocation where{ErrorLocation::Space::Lattice, n, m};
    auto& a = grid(n - 1, m);
    auto& b = grid(n - 1, m - 1);
    auto& c = grid(n, m - 1);
    if (!a || !b || !c) {
      throw Error(ErrorKind::DegenerateQuad, "infinite vertex in interior fill", where);
    }
    grid(n, m) = fill_corner(*a, *b, *c, tol, where);
  };
  if (order == FillOrder::RowMajor) {
    for (int n = 1; n <= size; ++n)
      for (int m = 1; m <= size; ++m) cell(n, m);
    return;
  }
  for (int s = 2; s <= 2 * size; ++s) {
    for (int n = std::max(1, s - size); n <= std::min(size, s - 1); ++n) cell(n, s - n);
  }
}

void extend_axes(MpGrid& grid, MapKind kind, const MpReal& c, int size, int first,
                 const ToleranceConfig& tol) {
  for (int n = first; n < size; ++n) {
    grid(n + 1, 0) = extend_axis(kind, c, *grid(n - 1, 0), *grid(n, 0), n, tol,
                                 {ErrorLocation::Space::Lattice, n + 1, 0});
    grid(0, n + 1) = extend_axis(kind, c, *grid(0, n - 1), *grid(0, n), n, tol,
                                 {ErrorLocation::Space::Lattice, 0, n + 1});
  }
}

void check_common(int size, const GenerateOptions& opts) {
  if (size < 2) throw Error(ErrorKind::InvalidArgument, "lattice size must be at least 2");
  if (opts.precision_bits != 0 && opts.precision_bits < 24) {
    throw Error(ErrorKind::InvalidArgument, "working precision below 24 bits");
  }
  opts.tol.validate();
}

}  // namespace

ConformalLattice generate(MapKind kind, double c, int size, const GenerateOptions& opts) {
  check_common(size, opts);
  if (kind == MapKind::Zc && !(c > 0.0 && c < 2.0)) {
    throw Error(ErrorKind::InvalidArgument, "Z^c requires 0 < c < 2");
  }
  const double exponent = canonical_exponent(kind, c);
  const long prec = opts.precision_bits ? opts.precision_bits : default_precision_bits(size);
  MpGrid grid(size, prec);
  const MpReal zero(prec);
  const MpReal pi = MpReal::pi(prec);
  const MpReal cc(exponent, prec);
  auto real = [&](double x) { return MpComplex(MpReal(x, prec), zero); };

  int first_axis_step = 1;
  switch (kind) {
    case MapKind::Zc:
      grid(0, 0) = real(0.0);
      grid(1, 0) = real(1.0);
      grid(0, 1) = MpComplex::polar_unit(0.5 * (cc * pi));
      break;
    case MapKind::Z2:
      grid(0, 0) = real(0.0);
      grid(1, 0) = real(0.0);
      grid(0, 1) = real(0.0);
      grid(2, 0) = real(1.0);
      grid(0, 2) = real(-1.0);
      grid(1, 1) = MpComplex(zero, MpReal(2.0, prec) / pi);
      first_axis_step = 2;
      break;
    case MapKind::Log:
      grid(0, 0) = std::nullopt;
      grid(1, 0) = real(0.0);
      grid(0, 1) = MpComplex(zero, pi);
      grid(2, 0) = real(1.0);
      grid(0, 2) = MpComplex(MpReal(1.0, prec), pi);
      grid(1, 1) = MpComplex(zero, 0.5 * pi);
      first_axis_step = 2;
      break;
  }
  extend_axes(grid, kind, cc, size, first_axis_step, opts.tol);
  fill_interior(grid, size, opts.order, kind != MapKind::Zc, opts.tol);
  return grid.round(kind, exponent);
}

ConformalLattice generate_naive(double c, int size, const GenerateOptions& opts) {
  check_common(size, opts);
  if (!(c > 0.0 && c < 2.0)) throw Error(ErrorKind::InvalidArgument, "naive map requires 0 < c < 2");
  const long prec = opts.precision_bits ? opts.precision_bits : default_precision_bits(size);
  MpGrid grid(size, prec);
  const MpReal zero(prec);
  const MpComplex ray = MpComplex::polar_unit(0.5 * (MpReal(c, prec) * MpReal::pi(prec)));
  for (int k = 0; k <= size; ++k) {
    grid(k, 0) = MpComplex(MpReal(static_cast<double>(k), prec), zero);
    grid(0, k) = static_cast<double>(k) * ray;
  }
  fill_interior(grid, size, opts.order, false, opts.tol);
  return grid.round(MapKind::Zc, c);
}

namespace {

bool is_zero_edge(const ExtendedComplex& a, const ExtendedComplex& b, const ToleranceConfig& tol) {
  if (a.is_infinite() || b.is_infinite()) return false;
  const double scale = std::max({1.0, std::abs(a.value()), std::abs(b.value())});
  return std::abs(a.value() - b.value()) < tol.degenerate_tol * scale;
}

// Increment of the dual along the edge from -> to (unit step in n or m).
complex dual_increment(const ExtendedComplex& from, const ExtendedComplex& to, bool along_n) {
  if (from.is_infinite() || to.is_infinite()) return 0.0;
  const complex inc = 1.0 / (to.value() - from.value());
  return along_n ? -inc : inc;
}

MapKind dual_kind(MapKind kind) {
  switch (kind) {
    case MapKind::Z2: return MapKind::Log;
    case MapKind::Log: return MapKind::Z2;
    case MapKind::Zc: return MapKind::Zc;
  }
  return kind;
}

}  // namespace

ConformalLattice dual_map(const ConformalLattice& lat, LatticeIndex anchor_at,
                          ExtendedComplex anchor_value, const ToleranceConfig& tol) {
  if (!lat.contains(anchor_at)) throw Error(ErrorKind::InvalidArgument, "anchor outside lattice");
  if (anchor_value.is_infinite()) throw Error(ErrorKind::InvalidArgument, "anchor value must be finite");
  const int g = lat.size();
  const double dual_c = 2.0 - lat.c();
  std::vector<std::optional<complex>> dual(static_cast<std::size_t>(g + 1) * (g + 1));
  auto slot = [&](int n, int m) -> std::optional<complex>& {
    return dual[static_cast<std::size_t>(n) * (g + 1) + m];
  };

  std::deque<LatticeIndex> queue{anchor_at};
  slot(anchor_at.n, anchor_at.m) = anchor_value.value();
  constexpr int steps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (!queue.empty()) {
    const LatticeIndex cur = queue.front();
    queue.pop_front();
    for (const auto& s : steps) {
      const int n = cur.n + s[0], m = cur.m + s[1];
      if (!lat.contains(n, m) || slot(n, m)) continue;
      const auto& from = lat.at(cur);
      const auto& to = lat.at(n, m);
      if (is_zero_edge(from, to, tol)) continue;
      slot(n, m) = *slot(cur.n, cur.m) + dual_increment(from, to, s[0] != 0);
      queue.push_back({n, m});
    }
  }

  ConformalLattice out(dual_kind(lat.kind()), canonical_exponent(dual_kind(lat.kind()), dual_c), g);
  for (int n = 0; n <= g; ++n) {
    for (int m = 0; m <= g; ++m) {
      const auto& v = slot(n, m);
      out.set(n, m, v ? ExtendedComplex(*v) : ExtendedComplex::infinity());
    }
  }
  // A zero edge maps to an infinite dual edge, so one endpoint must be the
  // dual's point at infinity.
  for (int n = 0; n <= g; ++n) {
    for (int m = 0; m <= g; ++m) {
      for (const auto& s : {std::pair{1, 0}, std::pair{0, 1}}) {
        const int n2 = n + s.first, m2 = m + s.second;
        if (!lat.contains(n2, m2) || !is_zero_edge(lat.at(n, m), lat.at(n2, m2), tol)) continue;
        if (out.at(n, m).is_finite() && out.at(n2, m2).is_finite()) {
          throw Error(ErrorKind::ZeroEdge, "zero-length edge between finite dual vertices",
                      ErrorLocation{ErrorLocation::Space::Lattice, n, m});
        }
      }
    }
  }
  return out;
}

double duality_defect(const ConformalLattice& lat, const ConformalLattice& dual) {
  if (lat.size() != dual.size()) throw Error(ErrorKind::InvalidArgument, "size mismatch");
  double worst = 0.0;
  for (int n = 0; n <= lat.size(); ++n) {
    for (int m = 0; m <= lat.size(); ++m) {
      for (const auto& s : {std::pair{1, 0}, std::pair{0, 1}}) {
        const int n2 = n + s.first, m2 = m + s.second;
        if (!lat.contains(n2, m2)) continue;
        const auto &d0 = dual.at(n, m), &d1 = dual.at(n2, m2);
        const auto &f0 = lat.at(n, m), &f1 = lat.at(n2, m2);
        if (d0.is_infinite() || d1.is_infinite()) continue;
        if (f0.is_finite() && f1.is_finite() && f0.value() == f1.value()) continue;
        const complex expected = dual_increment(f0, f1, s.first != 0);
        const complex actual = d1.value() - d0.value();
        const double scale = std::max(std::abs(expected), std::abs(actual));
        if (scale > 0) worst = std::max(worst, std::abs(actual - expected) / scale);
      }
    }
  }
  return worst;
}

double constraint_residual(const ConformalLattice& lat, LatticeIndex at) {
  const int n = at.n, m = at.m;
  if (n < 1 || m < 1 || n >= lat.size() || m >= lat.size()) {
    throw Error(ErrorKind::InvalidArgument, "constraint residual needs an interior index",
                ErrorLocation{ErrorLocation::Space::Lattice, n, m});
  }
  const ExtendedComplex* st[5] = {&lat.at(n, m), &lat.at(n + 1, m), &lat.at(n - 1, m),
                                  &lat.at(n, m + 1), &lat.at(n, m - 1)};
  for (const auto* v : st) {
    if (v->is_infinite()) return std::nan("");
  }
  const complex f = st[0]->value();
  const complex fe = st[1]->value(), fw = st[2]->value();
  const complex fn = st[3]->value(), fs = st[4]->value();
  const complex dn = fe - fw, num_n = (fe - f) * (f - fw);
  const complex dm = fn - fs, num_m = (fn - f) * (f - fs);

  const bool log = lat.kind() == MapKind::Log;
  const complex lead = log ? complex(1.0) : canonical_exponent(lat.kind(), lat.c()) * f;
  const double wn = log ? n : 2.0 * n;
  const double wm = log ? m : 2.0 * m;
  const complex t0 = lead * dn * dm;
  const complex t1 = wn * num_n * dm;
  const complex t2 = wm * num_m * dn;
  const double norm = std::abs(t0) + std::abs(t1) + std::abs(t2);
  const double defect = std::abs(t0 - t1 - t2);
  return norm > 0 ? defect / norm : defect;
}

double max_cross_ratio_defect(const ConformalLattice& lat, const ToleranceConfig& tol) {
  double worst = 0.0;
  for (int n = 0; n < lat.size(); ++n) {
    for (int m = 0; m < lat.size(); ++m) {
      const ExtendedComplex q[4] = {lat.at(n, m), lat.at(n + 1, m), lat.at(n + 1, m + 1),
                                    lat.at(n, m + 1)};
      bool usable = true;
      for (int i = 0; i < 4 && usable; ++i) {
        if (q[i].is_infinite()) usable = false;
        for (int j = i + 1; j < 4 && usable; ++j) usable = !is_zero_edge(q[i], q[j], tol);
      }
      if (!usable) continue;
      const complex value = cross_ratio(q[0], q[1], q[2], q[3], tol).value();
      worst = std::max(worst, std::abs(value + 1.0));
    }
  }
  return worst;
}

double max_constraint_residual(const ConformalLattice& lat) {
  double worst = 0.0;
  for (int n = 1; n < lat.size(); ++n) {
    for (int m = 1; m < lat.size(); ++m) {
      const double r = constraint_residual(lat, {n, m});
      if (!std::isnan(r)) worst = std::max(worst, r);
    }
  }
  return worst;
}

}  // namespace dcmap
