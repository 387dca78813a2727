#pragma once

// Brute-force oracles kept independent of the library's decision paths.
// They verify the LP/enumeration-backed operations by exhaustive search.

#include <optional>
#include <vector>

#include "parkable/body.hpp"

namespace parkable::oracles {

struct GridParkResult {
  bool feasible = false;
  std::optional<Vec> witness;
};

/// Exhaustive parking search over a 2D grid of candidate translations
/// covering -C (the only region where 0 in C+v can hold), inflated by `pad`.
/// A candidate passes when 0 in C+v and C+v inside B by direct vertex/facet
/// checks.
GridParkResult grid_park_2d(const ConvexBody& c, const ConvexBody& b, double step,
                            double pad = 0.02);

/// Direct containment check C + v inside B (vertex-by-vertex).
bool translate_fits(const ConvexBody& c, const ConvexBody& b, const Vec& v, double tol);

/// Penetration depth of the full line p + t d into the interior of B,
/// measured by dense t-sampling (independent of the quantile shortcut used
/// by the implementation).
double line_penetration_dense(const ConvexBody& b, const Vec& p, const Vec& d, int samples = 512);

/// Whether direction w supports B along the whole boundary of the central
/// section orthogonal to v, decided by dense-ray sampling at the given
/// boundary points.
bool supports_section_boundary_dense(const ConvexBody& b, const std::vector<Vec>& boundary,
                                     const Vec& w, double depth_tol);

/// Largest angular gap (radians) left by `points` on the unit sphere or
/// circle: max over probe directions of the angle to the nearest point.
double coverage_gap(const std::vector<Vec>& points, int dim, int probes = 512);

/// Support-function equality of two bodies over sampled directions.
double max_support_difference(const ConvexBody& a, const ConvexBody& b, int dirs = 256);

}  // namespace parkable::oracles
