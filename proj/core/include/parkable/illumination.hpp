#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "parkable/body.hpp"
#include "parkable/config.hpp"

namespace parkable {

/// Boundary faces of B whose projection along `direction` lands on (a band
/// around) the shadow boundary. Polytope silhouettes can be 2D bands when
/// facets are parallel to the direction, so faces are stored instead of a
/// curve.
struct Silhouette {
  Vec direction;
  std::vector<int> vertex_ids;
  std::vector<std::pair<int, int>> edge_list;
  std::vector<int> facet_ids;
  ConvexBody shadow;      // 2D chart polygon
  AffineSubspace chart;   // plane orthogonal to direction, through 0
};

Silhouette silhouette(const ConvexBody& b, const Vec& direction, const Tolerances& tol = {});

/// Distance from an ambient point to the nearest silhouette face.
double distance_to_silhouette(const Silhouette& sil, const ConvexBody& b, const Vec& p);

struct WeakBlaschkeResult {
  bool verdict = false;
  Vec plane_normal;
  double plane_offset = 0.0;
  /// max over the section boundary of the penetration of the direction line
  /// into the interior, scaled by the section width; minimized over the
  /// plane search.
  double residual = 0.0;
  int planes_evaluated = 0;
};

struct PlaneSearchBudget {
  int seeds = 16;
  int iterations = 60;
};

/// Searches affine planes whose section boundary hugs the silhouette of the
/// given direction. True iff the best residual clears blaschke_tol and the
/// plane meets the interior. The search is seeded from least-squares planes
/// through silhouette anchors and refined by deterministic pattern descent.
WeakBlaschkeResult weak_blaschke_test(const ConvexBody& b, const Vec& direction,
                                      const PlaneSearchBudget& budget = {},
                                      const Tolerances& tol = {});

/// Spherical convex set of unit directions w with w . v > 0 whose full lines
/// p + t w support B at every boundary point p of the central section
/// orthogonal to v. Empty generators mean no such direction exists.
struct ConeSet {
  std::vector<Vec> generators;
  bool empty() const { return generators.empty(); }
};

ConeSet supporting_cone(const ConvexBody& b, const Vec& v, const Tolerances& tol = {},
                        int n_candidates = 512);

struct DualBlaschkeCheck {
  bool all_nonempty = false;
  std::vector<Vec> empty_directions;
  int tested = 0;
};

/// Evaluates supporting_cone over sampled directions and reports the ones
/// with empty cones.
DualBlaschkeCheck dual_blaschke_check(const ConvexBody& b, int n_dirs,
                                      const Tolerances& tol = {});

}  // namespace parkable
