#pragma once

#include <string>
#include <vector>

#include "trop/solver.hpp"

namespace trop {

struct RenderedCurve {
  CombinatorialType type;
  StratumCoordinates coords;
};

/// SVG 1.1 drawing of the curves and the points, y axis pointing up. The
/// view fits the vertices and points with 20% padding; rays run off the
/// edge. Edges of weight > 1 carry their weight as a label.
std::string render_svg(const std::vector<RenderedCurve>& curves, const PointConfiguration& points);

}  // namespace trop
