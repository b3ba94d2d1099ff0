#include "dcmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace dcmap {

CirclePattern::CirclePattern(std::vector<Circle> circles, int lattice_size)
    : circles_(std::move(circles)),
      lookup_(static_cast<std::size_t>(lattice_size + 1) * (lattice_size + 1), -1),
      size_(lattice_size) {
  for (std::size_t k = 0; k < circles_.size(); ++k) {
    const LatticeIndex i = circles_[k].label.to_index();
    if (!circles_[k].label.in_quadrant() || i.n < 0 || i.m < 0 || i.n > size_ || i.m > size_) {
      throw Error(ErrorKind::InvalidArgument, "circle label outside the lattice");
    }
    lookup_[slot(circles_[k].label)] = static_cast<int>(k);
  }
}

std::size_t CirclePattern::slot(SublatticeLabel z) const {
  const LatticeIndex i = z.to_index();
  return static_cast<std::size_t>(i.n) * (size_ + 1) + static_cast<std::size_t>(i.m);
}

const Circle* CirclePattern::find(SublatticeLabel z) const {
  if (!z.in_quadrant()) return nullptr;
  const LatticeIndex i = z.to_index();
  if (i.n < 0 || i.m < 0 || i.n > size_ || i.m > size_) return nullptr;
  const int k = lookup_[slot(z)];
  return k < 0 ? nullptr : &circles_[static_cast<std::size_t>(k)];
}

void CirclePattern::set_radius(SublatticeLabel z, double r) {
  const Circle* c = find(z);
  if (!c) throw Error(ErrorKind::MissingNeighbor, "no circle with this label",
                      ErrorLocation{ErrorLocation::Space::Sublattice, z.N, z.M});
  circles_[static_cast<std::size_t>(c - circles_.data())].radius = r;
}

namespace {

std::vector<std::pair<SublatticeLabel, SublatticeLabel>> pairs_with(
    const CirclePattern& p, std::initializer_list<std::pair<int, int>> offsets) {
  std::vector<std::pair<SublatticeLabel, SublatticeLabel>> out;
  for (const auto& c : p.circles()) {
    for (const auto& [dN, dM] : offsets) {
      const SublatticeLabel other = c.label.shifted(dN, dM);
      if (p.find(other)) out.emplace_back(c.label, other);
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<SublatticeLabel, SublatticeLabel>> CirclePattern::neighbor_pairs() const {
  return pairs_with(*this, {{1, 0}, {0, 1}});
}

std::vector<std::pair<SublatticeLabel, SublatticeLabel>> CirclePattern::half_neighbor_pairs() const {
  return pairs_with(*this, {{1, 1}, {-1, 1}});
}

CirclePattern circles(const ConformalLattice& lat, const ToleranceConfig& tol) {
  const RadiusField field = extract_radii(lat, tol);
  std::vector<Circle> out;
  for (const auto& z : field.labels()) {
    const LatticeIndex i = z.to_index();
    Circle c{z, lat.at(i), field.at(z), std::nullopt};
    if (is_line(c.radius)) {
      std::vector<complex> pts;
      for (const auto& [dn, dm] : {std::pair{1, 0}, {0, 1}, {-1, 0}, {0, -1}}) {
        if (lat.contains(i.n + dn, i.m + dm) && lat.at(i.n + dn, i.m + dm).is_finite()) {
          pts.push_back(lat.at(i.n + dn, i.m + dm).value());
        }
      }
      if (pts.size() >= 2) c.line_through = std::array<complex, 2>{pts[0], pts[1]};
    }
    out.push_back(c);
  }
  return CirclePattern(std::move(out), lat.size());
}

IncidenceReport incidence_check(const CirclePattern& pattern, const ToleranceConfig& tol) {
  IncidenceReport report;
  auto usable = [](const Circle& c) { return c.center.is_finite() && is_proper_radius(c.radius); };
  for (const auto& c : pattern.circles()) {
    if (!usable(c)) report.skipped.push_back(c.label);
  }
  for (const auto& [a, b] : pattern.neighbor_pairs()) {
    const Circle &ca = *pattern.find(a), &cb = *pattern.find(b);
    if (!usable(ca) || !usable(cb)) continue;
    ++report.neighbor_pairs;
    const double d2 = std::norm(ca.center.value() - cb.center.value());
    const double s2 = ca.radius * ca.radius + cb.radius * cb.radius;
    const double defect = std::abs(d2 - s2) / s2;
    if (!(defect < tol.rel_tol)) report.violations.push_back({a, b, false, defect});
  }
  for (const auto& [a, b] : pattern.half_neighbor_pairs()) {
    const Circle &ca = *pattern.find(a), &cb = *pattern.find(b);
    if (!usable(ca) || !usable(cb)) continue;
    ++report.half_neighbor_pairs;
    const double d = std::abs(ca.center.value() - cb.center.value());
    const double s = ca.radius + cb.radius;
    const double defect = std::abs(d - s) / s;
    if (!(defect < tol.rel_tol)) report.violations.push_back({a, b, true, defect});
  }
  return report;
}

std::vector<QuadCell> quad_cells(const ConformalLattice& lat) {
  std::vector<QuadCell> out;
  out.reserve(static_cast<std::size_t>(lat.size()) * lat.size());
  for (int n = 0; n < lat.size(); ++n) {
    for (int m = 0; m < lat.size(); ++m) {
      out.push_back({{n, m}, {lat.at(n, m), lat.at(n + 1, m), lat.at(n + 1, m + 1), lat.at(n, m + 1)}});
    }
  }
  return out;
}

namespace {

double cross(complex a, complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

struct Triangle {
  std::array<complex, 3> p;
};

struct Box {
  double x0, y0, x1, y1;
  bool overlaps(const Box& o, double pad) const {
    return x0 <= o.x1 + pad && o.x0 <= x1 + pad && y0 <= o.y1 + pad && o.y0 <= y1 + pad;
  }
};

enum class Shape { Simple, SelfIntersecting, Degenerate, Exempt, Infinite };

struct Prepared {
  LatticeIndex index;
  Shape shape = Shape::Simple;
  std::vector<Triangle> triangles;
  Box box{};
  double scale = 1;
};

bool segments_cross(complex a, complex b, complex c, complex d, double eps) {
  const double o1 = cross(b - a, c - a), o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c), o4 = cross(d - c, b - c);
  return ((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) &&
         ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps));
}

Prepared prepare(const QuadCell& cell, bool exempt_if_degenerate, const ToleranceConfig& tol) {
  Prepared out;
  out.index = cell.index;
  for (const auto& v : cell.vertices) {
    if (v.is_infinite()) {
      out.shape = Shape::Infinite;
      return out;
    }
  }
  std::array<complex, 4> p;
  for (int k = 0; k < 4; ++k) p[k] = cell.vertices[k].value();
  double scale = 1.0;
  out.box = {p[0].real(), p[0].imag(), p[0].real(), p[0].imag()};
  for (const auto& z : p) {
    scale = std::max(scale, std::abs(z));
    out.box.x0 = std::min(out.box.x0, z.real());
    out.box.x1 = std::max(out.box.x1, z.real());
    out.box.y0 = std::min(out.box.y0, z.imag());
    out.box.y1 = std::max(out.box.y1, z.imag());
  }
  out.scale = scale;
  const double eps = tol.abs_tol * scale * scale;
  if (segments_cross(p[0], p[1], p[2], p[3], eps) || segments_cross(p[1], p[2], p[3], p[0], eps)) {
    out.shape = Shape::SelfIntersecting;
    return out;
  }
  const double area_eps = tol.degenerate_tol * scale * scale;
  double twice_area = 0;
  for (int k = 0; k < 4; ++k) twice_area += cross(p[k], p[(k + 1) % 4]);
  if (std::abs(twice_area) <= 2 * area_eps) {
    out.shape = exempt_if_degenerate ? Shape::Exempt : Shape::Degenerate;
    return out;
  }
  // Split along the diagonal that separates the other two vertices.
  const double s1 = cross(p[2] - p[0], p[1] - p[0]);
  const double s3 = cross(p[2] - p[0], p[3] - p[0]);
  const std::array<Triangle, 2> split =
      (s1 > 0) != (s3 > 0) && s1 != 0 && s3 != 0
          ? std::array<Triangle, 2>{Triangle{{p[0], p[1], p[2]}}, Triangle{{p[0], p[2], p[3]}}}
          : std::array<Triangle, 2>{Triangle{{p[1], p[2], p[3]}}, Triangle{{p[1], p[3], p[0]}}};
  for (const auto& t : split) {
    if (std::abs(cross(t.p[1] - t.p[0], t.p[2] - t.p[0])) > area_eps) out.triangles.push_back(t);
  }
  return out;
}

// Separating-axis test on triangles; projections overlapping by no more than
// pad count as disjoint.
bool triangles_overlap(const Triangle& a, const Triangle& b, double pad) {
  for (const Triangle* t : {&a, &b}) {
    for (int k = 0; k < 3; ++k) {
      const complex edge = t->p[(k + 1) % 3] - t->p[k];
      const double len = std::abs(edge);
      if (len == 0) continue;
      const complex normal = complex(-edge.imag(), edge.real()) / len;
      auto project = [&](const Triangle& tri) {
        double lo = HUGE_VAL, hi = -HUGE_VAL;
        for (const auto& z : tri.p) {
          const double d = normal.real() * z.real() + normal.imag() * z.imag();
          lo = std::min(lo, d);
          hi = std::max(hi, d);
        }
        return std::pair{lo, hi};
      };
      const auto [alo, ahi] = project(a);
      const auto [blo, bhi] = project(b);
      if (ahi <= blo + pad || bhi <= alo + pad) return false;
    }
  }
  return true;
}

bool interiors_overlap(const Prepared& a, const Prepared& b, const ToleranceConfig& tol) {
  const double pad = tol.abs_tol * std::max(a.scale, b.scale);
  if (!a.box.overlaps(b.box, -pad)) return false;
  for (const auto& ta : a.triangles) {
    for (const auto& tb : b.triangles) {
      if (triangles_overlap(ta, tb, pad)) return true;
    }
  }
  return false;
}

using PairList = std::vector<std::pair<int, int>>;

PairList all_pairs(const std::vector<Prepared>& quads) {
  PairList out;
  for (int i = 0; i < static_cast<int>(quads.size()); ++i) {
    if (quads[i].shape != Shape::Simple) continue;
    for (int j = i + 1; j < static_cast<int>(quads.size()); ++j) {
      if (quads[j].shape == Shape::Simple) out.emplace_back(i, j);
    }
  }
  return out;
}

// Uniform grid over bounding boxes, cell edge = median quad extent. Quads
// spanning too many cells are paired with everything.
PairList hashed_pairs(const std::vector<Prepared>& quads) {
  std::vector<int> live;
  std::vector<double> extents;
  for (int i = 0; i < static_cast<int>(quads.size()); ++i) {
    if (quads[i].shape != Shape::Simple) continue;
    live.push_back(i);
    const Box& b = quads[i].box;
    extents.push_back(std::max(b.x1 - b.x0, b.y1 - b.y0));
  }
  if (live.empty()) return {};
  std::nth_element(extents.begin(), extents.begin() + extents.size() / 2, extents.end());
  double h = extents[extents.size() / 2];
  if (!(h > 0)) h = 1.0;

  constexpr long long kMaxCellsPerQuad = 4096;
  std::unordered_map<long long, std::vector<int>> cells;
  std::vector<int> oversize;
  auto key = [](long long ix, long long iy) { return (ix << 32) ^ (iy & 0xffffffffLL); };
  for (int i : live) {
    const Box& b = quads[i].box;
    const auto ix0 = static_cast<long long>(std::floor(b.x0 / h)), ix1 = static_cast<long long>(std::floor(b.x1 / h));
    const auto iy0 = static_cast<long long>(std::floor(b.y0 / h)), iy1 = static_cast<long long>(std::floor(b.y1 / h));
    if ((ix1 - ix0 + 1) * (iy1 - iy0 + 1) > kMaxCellsPerQuad) {
      oversize.push_back(i);
      continue;
    }
    for (long long ix = ix0; ix <= ix1; ++ix)
      for (long long iy = iy0; iy <= iy1; ++iy) cells[key(ix, iy)].push_back(i);
  }
  PairList out;
  for (const auto& [k, members] : cells) {
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        out.emplace_back(std::min(members[a], members[b]), std::max(members[a], members[b]));
  }
  for (int i : oversize)
    for (int j : live)
      if (i != j) out.emplace_back(std::min(i, j), std::max(i, j));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PairList adjacent_pairs(const std::vector<Prepared>& quads) {
  std::map<LatticeIndex, int> where;
  for (int i = 0; i < static_cast<int>(quads.size()); ++i) where[quads[i].index] = i;
  PairList out;
  for (int i = 0; i < static_cast<int>(quads.size()); ++i) {
    if (quads[i].shape != Shape::Simple) continue;
    for (int dn = -1; dn <= 1; ++dn) {
      for (int dm = -1; dm <= 1; ++dm) {
        const auto it = where.find({quads[i].index.n + dn, quads[i].index.m + dm});
        if (it == where.end() || it->second <= i || quads[it->second].shape != Shape::Simple) continue;
        out.emplace_back(i, it->second);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Prepared> prepare_all(std::span<const QuadCell> cells, bool exempt_z2_seed,
                                  const ToleranceConfig& tol) {
  std::vector<Prepared> quads;
  quads.reserve(cells.size());
  for (const auto& c : cells) {
    const bool exempt = exempt_z2_seed && c.index == LatticeIndex{0, 0};
    quads.push_back(prepare(c, exempt, tol));
  }
  std::sort(quads.begin(), quads.end(),
            [](const Prepared& a, const Prepared& b) { return a.index < b.index; });
  return quads;
}

OverlapReport evaluate(const std::vector<Prepared>& quads, const PairList& pairs,
                       const ToleranceConfig& tol) {
  OverlapReport report;
  std::optional<std::pair<LatticeIndex, LatticeIndex>> best;
  auto offer = [&best](LatticeIndex a, LatticeIndex b) {
    const std::pair<LatticeIndex, LatticeIndex> p{a, b};
    if (!best || p < *best) best = p;
  };
  for (const auto& q : quads) {
    switch (q.shape) {
      case Shape::SelfIntersecting:
        report.self_intersecting.push_back(q.index);
        offer(q.index, q.index);
        break;
      case Shape::Degenerate:
        report.degenerate.push_back(q.index);
        offer(q.index, q.index);
        break;
      case Shape::Exempt: report.exempt.push_back(q.index); break;
      case Shape::Infinite: report.excluded_infinite.push_back(q.index); break;
      case Shape::Simple: break;
    }
  }
  // Pairs are sorted, so the first hit is the smallest pair violation.
  for (const auto& [i, j] : pairs) {
    ++report.pairs_tested;
    if (interiors_overlap(quads[i], quads[j], tol)) {
      offer(quads[i].index, quads[j].index);
      break;
    }
  }
  report.witness = best;
  report.ok = !best.has_value();
  return report;
}

}  // namespace

OverlapReport is_immersed(const ConformalLattice& lat, const ToleranceConfig& tol) {
  const auto cells = quad_cells(lat);
  const auto quads = prepare_all(cells, lat.kind() == MapKind::Z2, tol);
  return evaluate(quads, adjacent_pairs(quads), tol);
}

OverlapReport is_embedded(const ConformalLattice& lat, const ToleranceConfig& tol, PairSearch search) {
  const auto cells = quad_cells(lat);
  const auto quads = prepare_all(cells, lat.kind() == MapKind::Z2, tol);
  return evaluate(quads, search == PairSearch::SpatialHash ? hashed_pairs(quads) : all_pairs(quads), tol);
}

OverlapReport is_embedded(std::span<const QuadCell> cells, const ToleranceConfig& tol, PairSearch search) {
  const auto quads = prepare_all(cells, false, tol);
  return evaluate(quads, search == PairSearch::SpatialHash ? hashed_pairs(quads) : all_pairs(quads), tol);
}

}  // namespace dcmap
