#pragma once

#include <string>

#include "dcmap/lattice.hpp"

namespace dcmap {

struct RenderOptions {
  double width = 800;  ///< pixels
  double stroke_width = 1.0;
  double padding = 20;
  bool draw_circles = true;
  bool draw_quads = true;
  /// "classic" or "mono".
  std::string scheme = "classic";

  /// Throws InvalidArgument on non-positive sizes or an unknown scheme.
  void validate() const;
};

/// SVG with one <circle> per even vertex (the line circle at an infinite
/// centre becomes a <line> clipped to the viewport) and one <polyline> per
/// lattice edge between finite vertices. The y axis points up.
std::string render_svg(const ConformalLattice& lat, const RenderOptions& opts = {},
                       const ToleranceConfig& tol = {});

}  // namespace dcmap
