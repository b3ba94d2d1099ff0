#include "dcmap/radii.hpp"

#include <algorithm>
#include <array>

namespace dcmap {

namespace {

ErrorLocation loc(SublatticeLabel z) { return {ErrorLocation::Space::Sublattice, z.N, z.M}; }

double proper(const RadiusField& f, SublatticeLabel z) {
  const double r = f.at(z);
  if (!is_proper_radius(r)) throw Error(ErrorKind::NonFiniteRadius, "line or point circle in stencil", loc(z));
  return r;
}

double sum_abs(std::initializer_list<double> xs) {
  double s = 0;
  for (double x : xs) s += std::abs(x);
  return s;
}

double normalized(double defect, double norm) { return norm > 0 ? std::abs(defect) / norm : std::abs(defect); }

}  // namespace

LabelGrid::LabelGrid(int lattice_size)
    : size_(lattice_size),
      values_(static_cast<std::size_t>(lattice_size + 1) * (lattice_size + 1), std::nan("")) {}

bool LabelGrid::in_range(SublatticeLabel z) const {
  if (!z.in_quadrant()) return false;
  const LatticeIndex i = z.to_index();
  return i.n >= 0 && i.m >= 0 && i.n <= size_ && i.m <= size_;
}

std::size_t LabelGrid::slot(SublatticeLabel z) const {
  const LatticeIndex i = z.to_index();
  return static_cast<std::size_t>(i.n) * (size_ + 1) + static_cast<std::size_t>(i.m);
}

bool LabelGrid::contains(SublatticeLabel z) const {
  return in_range(z) && !std::isnan(values_[slot(z)]);
}

double LabelGrid::at(SublatticeLabel z) const {
  if (!contains(z)) throw Error(ErrorKind::MissingNeighbor, "no value stored for label", loc(z));
  return values_[slot(z)];
}

void LabelGrid::set(SublatticeLabel z, double value) {
  if (!in_range(z)) throw Error(ErrorKind::InvalidArgument, "label outside the stored range", loc(z));
  values_[slot(z)] = value;
}

std::vector<SublatticeLabel> LabelGrid::labels() const {
  std::vector<SublatticeLabel> out;
  for (int M = 0; M <= size_; ++M) {
    for (int N = -M; N <= M; ++N) {
      if (contains({N, M})) out.push_back({N, M});
    }
  }
  return out;
}

RadiusField extract_radii(const ConformalLattice& lat, const ToleranceConfig& tol) {
  RadiusField field(canonical_exponent(lat.kind(), lat.c()), lat.size());
  constexpr std::array<std::array<int, 2>, 4> steps{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
  for (int n = 0; n <= lat.size(); ++n) {
    for (int m = (n % 2); m <= lat.size(); m += 2) {
      const SublatticeLabel z = SublatticeLabel::from_index({n, m});
      const ExtendedComplex& centre = lat.at(n, m);
      if (centre.is_infinite()) {
        field.set(z, kLineRadius);
        continue;
      }
      double first = std::nan(""), lo = kLineRadius, hi = 0.0;
      for (const auto& s : steps) {
        const int n2 = n + s[0], m2 = m + s[1];
        if (!lat.contains(n2, m2) || lat.at(n2, m2).is_infinite()) continue;
        const double len = std::abs(lat.at(n2, m2).value() - centre.value());
        if (std::isnan(first)) first = len;
        lo = std::min(lo, len);
        hi = std::max(hi, len);
      }
      if (std::isnan(first)) continue;
      if (hi - lo > tol.rel_tol * hi) {
        throw Error(ErrorKind::EquiViolation, "edges at a circle centre differ in length", loc(z));
      }
      field.set(z, first);
    }
  }
  return field;
}

double RadiusResiduals::max() const { return std::max({ln_r, square, ri, le, up}); }
double XyResiduals::max() const { return std::max({ri_t, square_t, in_r, out_r}); }

RadiusResiduals radius_residuals(const RadiusField& field, SublatticeLabel z) {
  const int N = z.N, M = z.M;
  const double c = field.c();
  const double r = proper(field, z);
  const double e = proper(field, z.shifted(1, 0));    // z + 1
  const double n = proper(field, z.shifted(0, 1));    // z + i
  const double w = proper(field, z.shifted(-1, 0));   // z - 1
  const double s = proper(field, z.shifted(0, -1));   // z - i
  const double ne = proper(field, z.shifted(1, 1));   // z + 1 + i
  const double r2 = r * r;

  RadiusResiduals out;
  {
    const double sum = e + n + w + s;
    const double triples = n * w * s + e * w * s + e * n * s + e * n * w;
    out.ln_r = normalized(r2 * sum - triples, r2 * sum + triples);
  }
  {
    const double t0 = r * e * (-2.0 * M - c);
    const double t1 = e * ne * (2.0 * (N + 1) - c);
    const double t2 = ne * n * (2.0 * (M + 1) - c);
    const double t3 = n * r * (-2.0 * N - c);
    out.square = normalized(t0 + t1 + t2 + t3, sum_abs({t0, t1, t2, t3}));
  }
  // Two-product equations: a (r2 - p)(u) + b (r2 - q)(v) = 0.
  auto pair_eq = [r2](double a, double p, double u, double b, double q, double v) {
    const double defect = a * (r2 - p) * u + b * (r2 - q) * v;
    const double norm = std::abs(a) * (r2 + p) * u + std::abs(b) * (r2 + q) * v;
    return normalized(defect, norm);
  };
  out.ri = pair_eq(N + M, e * s, n + e, M - N, n * e, e + s);
  out.le = pair_eq(N + M, n * w, w + s, M - N, w * s, n + w);
  out.up = pair_eq(N + M, n * w, e + n, N - M, e * n, n + w);
  return out;
}

std::vector<SublatticeLabel> residual_labels(const RadiusField& field) {
  std::vector<SublatticeLabel> out;
  constexpr std::array<std::array<int, 2>, 6> stencil{{{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}}};
  for (const auto& z : field.labels()) {
    const bool ok = std::all_of(stencil.begin(), stencil.end(), [&](const auto& d) {
      const SublatticeLabel y = z.shifted(d[0], d[1]);
      return field.contains(y) && is_proper_radius(field.at(y));
    });
    if (ok) out.push_back(z);
  }
  return out;
}

bool sign_condition(const RadiusField& field, SublatticeLabel z, const ToleranceConfig& tol) {
  const double r = proper(field, z);
  const double below = proper(field, z.shifted(0, -1));
  const double right = proper(field, z.shifted(1, 0));
  const double r2 = r * r;
  return (field.c() - 1.0) * (r2 - below * right) >= -tol.abs_tol * std::max(1.0, r2);
}

EdgeRatioField xy_from_radii(const RadiusField& field) {
  EdgeRatioField xy(field.c(), field.lattice_size());
  auto edge_variable = [](double rho) { return (rho - 1.0) / (rho + 1.0); };
  for (const auto& z : field.labels()) {
    const double r = field.at(z);
    if (!is_proper_radius(r)) continue;
    const SublatticeLabel right = z.shifted(1, 0), below = z.shifted(0, -1);
    if (field.contains(right) && is_proper_radius(field.at(right))) {
      xy.set_x(z, edge_variable(field.at(right) / r));
    }
    if (field.contains(below) && is_proper_radius(field.at(below))) {
      xy.set_y(z, edge_variable(r / field.at(below)));
    }
  }
  return xy;
}

XyResiduals xy_residuals(const EdgeRatioField& xy, SublatticeLabel z) {
  const int N = z.N, M = z.M;
  const double c = xy.c();
  const double x = xy.x(z);
  const double x_up = xy.x(z.shifted(0, 1));
  const double x_left = xy.x(z.shifted(-1, 0));
  const double y = xy.y(z);
  const double y_up = xy.y(z.shifted(0, 1));
  const double y_diag = xy.y(z.shifted(1, 1));

  // (a + b) / (1 + sign a b) together with its monomial scale.
  struct Frac {
    double value, scale;
  };
  auto frac = [](double a, double b, double sign) {
    const double den = 1.0 + sign * a * b;
    return Frac{(a + b) / den, (std::abs(a) + std::abs(b)) / std::abs(den)};
  };

  XyResiduals out;
  {
    const Frac p = frac(x, y_up, -1.0);
    const Frac q = frac(x, -y, -1.0);
    const double a = M - N, b = M + N;
    out.ri_t = normalized(a * p.value + b * q.value, std::abs(a) * p.scale + std::abs(b) * q.scale);
  }
  {
    const Frac p = frac(y_up, -x, 1.0);
    const Frac q = frac(x_up, y_up, 1.0);
    const double a = M - N, b = M + N + 1;
    out.square_t = normalized(a * p.value + b * q.value - (c - 1.0),
                              std::abs(a) * p.scale + std::abs(b) * q.scale + std::abs(c - 1.0));
  }
  {
    const Frac p = frac(x, y_up, -1.0);
    const Frac q = frac(x_left, y, -1.0);
    out.in_r = normalized(p.value - q.value, p.scale + q.scale);
  }
  {
    const Frac p = frac(x, y_diag, 1.0);
    const Frac q = frac(x_up, y_up, 1.0);
    out.out_r = normalized(p.value - q.value, p.scale + q.scale);
  }
  return out;
}

std::vector<SublatticeLabel> xy_residual_labels(const EdgeRatioField& xy) {
  std::vector<SublatticeLabel> out;
  const int g = xy.lattice_size();
  for (int M = 0; M <= g; ++M) {
    for (int N = -M; N <= M; ++N) {
      const SublatticeLabel z{N, M};
      if (xy.has_x(z) && xy.has_x(z.shifted(0, 1)) && xy.has_x(z.shifted(-1, 0)) && xy.has_y(z) &&
          xy.has_y(z.shifted(0, 1)) && xy.has_y(z.shifted(1, 1))) {
        out.push_back(z);
      }
    }
  }
  return out;
}

RadiusField dual_radii(const RadiusField& field) {
  RadiusField out(2.0 - field.c(), field.lattice_size());
  for (const auto& z : field.labels()) out.set(z, 1.0 / field.at(z));
  return out;
}

}  // namespace dcmap
