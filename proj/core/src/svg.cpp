#include "dcmap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "dcmap/geometry.hpp"

namespace dcmap {

void RenderOptions::validate() const {
  if (!(width > 0) || !(stroke_width > 0) || !(padding > 0)) {
    throw Error(ErrorKind::InvalidArgument, "render sizes must be positive");
  }
  if (scheme != "classic" && scheme != "mono") {
    throw Error(ErrorKind::InvalidArgument, "unknown color scheme '" + scheme + "'");
  }
  if (!(2 * padding < width)) throw Error(ErrorKind::InvalidArgument, "padding leaves no room");
}

namespace {

struct Bounds {
  double x0 = HUGE_VAL, y0 = HUGE_VAL, x1 = -HUGE_VAL, y1 = -HUGE_VAL;
  void add(complex z, double r = 0) {
    x0 = std::min(x0, z.real() - r);
    x1 = std::max(x1, z.real() + r);
    y0 = std::min(y0, z.imag() - r);
    y1 = std::max(y1, z.imag() + r);
  }
  bool empty() const { return !(x0 <= x1); }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Segment of the line through p and q inside the box.
std::optional<std::pair<complex, complex>> clip_line(complex p, complex q, const Bounds& b) {
  const complex d = q - p;
  double lo = -HUGE_VAL, hi = HUGE_VAL;
  const double start[2] = {p.real(), p.imag()}, dir[2] = {d.real(), d.imag()};
  const double min[2] = {b.x0, b.y0}, max[2] = {b.x1, b.y1};
  for (int k = 0; k < 2; ++k) {
    if (dir[k] == 0) {
      if (start[k] < min[k] || start[k] > max[k]) return std::nullopt;
      continue;
    }
    double t0 = (min[k] - start[k]) / dir[k], t1 = (max[k] - start[k]) / dir[k];
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
  if (!(lo <= hi)) return std::nullopt;
  return std::pair{p + lo * d, p + hi * d};
}

}  // namespace

std::string render_svg(const ConformalLattice& lat, const RenderOptions& opts, const ToleranceConfig& tol) {
  opts.validate();
  std::optional<CirclePattern> pattern;
  if (opts.draw_circles) pattern = circles(lat, tol);

  Bounds box;
  for (const auto& v : lat.values()) {
    if (v.is_finite()) box.add(v.value());
  }
  if (pattern) {
    for (const auto& c : pattern->circles()) {
      if (c.center.is_finite() && std::isfinite(c.radius)) box.add(c.center.value(), c.radius);
    }
  }
  if (box.empty()) throw Error(ErrorKind::InvalidArgument, "nothing finite to render");
  const double extent = std::max({box.x1 - box.x0, box.y1 - box.y0, 1e-300});
  const double scale = (opts.width - 2 * opts.padding) / extent;
  const double height = 2 * opts.padding + (box.y1 - box.y0) * scale;
  auto X = [&](complex z) { return fmt(opts.padding + (z.real() - box.x0) * scale); };
  auto Y = [&](complex z) { return fmt(opts.padding + (box.y1 - z.imag()) * scale); };

  const bool mono = opts.scheme == "mono";
  const std::string edge_color = "#000000";
  const std::string circle_color = mono ? "#000000" : "#1f5fbf";
  const std::string line_color = mono ? "#000000" : "#bf3f1f";

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(opts.width) + "\" height=\"" +
         fmt(height) + "\" viewBox=\"0 0 " + fmt(opts.width) + " " + fmt(height) + "\">\n";
  if (pattern) {
    out += "<g id=\"circles\" fill=\"none\" stroke=\"" + circle_color + "\" stroke-width=\"" +
           fmt(opts.stroke_width) + "\">\n";
    for (const auto& c : pattern->circles()) {
      if (c.center.is_finite()) {
        out += "<circle cx=\"" + X(c.center.value()) + "\" cy=\"" + Y(c.center.value()) + "\" r=\"" +
               fmt(c.radius * scale) + "\"/>\n";
      } else if (c.line_through) {
        const auto seg = clip_line((*c.line_through)[0], (*c.line_through)[1], box);
        if (!seg) continue;
        out += "<line x1=\"" + X(seg->first) + "\" y1=\"" + Y(seg->first) + "\" x2=\"" + X(seg->second) +
               "\" y2=\"" + Y(seg->second) + "\" stroke=\"" + line_color + "\"/>\n";
      }
    }
    out += "</g>\n";
  }
  if (opts.draw_quads) {
    out += "<g id=\"edges\" fill=\"none\" stroke=\"" + edge_color + "\" stroke-width=\"" +
           fmt(opts.stroke_width) + "\">\n";
    auto edge = [&](int n0, int m0, int n1, int m1) {
      const auto &a = lat.at(n0, m0), &b = lat.at(n1, m1);
      if (a.is_infinite() || b.is_infinite()) return;
      out += "<polyline points=\"" + X(a.value()) + "," + Y(a.value()) + " " + X(b.value()) + "," +
             Y(b.value()) + "\"/>\n";
    };
    for (int n = 0; n <= lat.size(); ++n) {
      for (int m = 0; m <= lat.size(); ++m) {
        if (n < lat.size()) edge(n, m, n + 1, m);
        if (m < lat.size()) edge(n, m, n, m + 1);
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dcmap
