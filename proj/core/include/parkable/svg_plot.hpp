#pragma once

#include <string>

#include "parkable/body.hpp"
#include "parkable/config.hpp"

namespace parkable {

/// 800x800 SVG of the section polygon cut by the plane { x : normal.x =
/// offset }, with the detected symmetry center marked. Deterministic layout.
std::string render_section_svg(const ConvexBody& b, const Vec& normal, double offset,
                               const Tolerances& tol = {});

/// 800x800 SVG of the shadow polygon for the given direction with the lifted
/// silhouette height-coded (dark = low, light = high along the direction).
std::string render_silhouette_svg(const ConvexBody& b, const Vec& direction,
                                  const Tolerances& tol = {});

}  // namespace parkable
