#pragma once

#include <optional>
#include <vector>

#include "parkable/body.hpp"
#include "parkable/config.hpp"

namespace parkable {

/// Outcome of a parking query: can C be translated inside B so that the
/// translate contains the origin?
struct ParkResult {
  bool feasible = false;
  /// Valid translation v: 0 in C + v and C + v inside B, within eps_geom.
  std::optional<Vec> witness;
  /// Polytope of all valid translations (-C) intersected with B (-) C;
  /// computed only on request. Facet-only (hrep_only) when the system is too
  /// large to vertex-enumerate.
  std::optional<ConvexBody> feasible_set;
  /// Infeasibility residual from the LP when the decision came from it.
  double margin = 0.0;
};

struct ParkOptions {
  bool want_feasible_set = false;
  Tolerances tol;
  HullOptions hull;
};

/// Decides parkability of C in B via the joint halfspace system
/// v in (-C) intersect (B (-) C). Small systems are vertex-enumerated (the
/// witness is then the centroid of the feasible polytope); large ones first
/// try the centroid translate of C and fall back to the LP.
/// Precondition: 0 in B. C may start anywhere; only its shape matters.
ParkResult park(const ConvexBody& c, const ConvexBody& b, const ParkOptions& opt = {});

/// co(-(C+u) union (C+u)): the smallest centrally symmetric convex set
/// containing the translate C+u. Centrally symmetric by construction.
ConvexBody symmetric_hull(const ConvexBody& c, const Vec& u, const HullOptions& opt = {});

struct UniversalParkReport {
  bool pass = false;
  std::optional<Vec> witness_u;  // first failing sphere point
  int tested = 0;
};

/// Scans u over the radius-R sphere and parks C+u inside its symmetric hull.
/// Precondition: R > max vertex norm of C + diameter(C).
UniversalParkReport universal_parkability(const ConvexBody& c, double radius, int n_dirs,
                                          const ParkOptions& opt = {});

/// Default sphere radius for the universal parkability scan.
double default_park_radius(const ConvexBody& c);

/// The direction translating C+u back over the origin inside its symmetric
/// hull, with the angular spread of the feasible translation set.
struct DirectionSample {
  Vec u;
  Vec direction;                    // unit witness direction
  double uniqueness_residual = 0.0; // max pairwise angle of feasible vertices
};

DirectionSample park_direction(const ConvexBody& c, const Vec& u, const ParkOptions& opt = {});

/// Projects C+u onto the hyperplane orthogonal to the park direction and
/// returns the symmetry residual of the shadow.
double park_direction_projection_residual(const ConvexBody& c, const Vec& u,
                                          const ParkOptions& opt = {});

struct SectionParkabilityScan {
  bool pass = false;
  struct Witness {
    Vec direction;
    double offset_fraction = 0.0;
  };
  std::vector<Witness> failures;
  int sections_tested = 0;
  int degenerate_skipped = 0;
};

/// Parks every sampled hyperplane section of B back into B. Degenerate
/// sections are skipped and counted. Precondition: 0 interior to B.
SectionParkabilityScan section_parkability_scan(const ConvexBody& b, int n_dirs,
                                                const std::vector<double>& offsets,
                                                const ParkOptions& opt = {});

}  // namespace parkable
