#pragma once

#include <cstdint>
#include <vector>

namespace parkable {

/// Numeric tolerances shared across the library. All values are overridable;
/// defaults assume bodies normalized to diameter O(1) in double precision.
struct Tolerances {
  /// Absolute tolerance for incidence tests (vertex-on-facet, containment).
  double eps_geom = 1e-9;
  /// Feasibility tolerance of the LP solver.
  double eps_lp = 1e-9;
  /// Sections with inradius below eps_section_rel * diameter are flagged
  /// degenerate.
  double eps_section_rel = 1e-6;

  /// Relative symmetry-residual threshold below which a center is reported.
  /// 2.5e-2 absorbs the ~2e-2 discretization error of subdivision-3 sphere
  /// meshes; exact polytope workflows override this with 1e-6.
  double symmetry_tol = 2.5e-2;
  /// Relative collinearity threshold for section-center lines.
  double collinearity_tol = 5e-2;
  /// Relative coplanarity threshold for chord-midpoint planes.
  double coplanarity_tol = 5e-2;
  /// Angular tolerance (radians) for the subspace involution audit.
  double involution_tol = 2e-2;
  /// Quadric-fit residual threshold for the ellipsoid certificate.
  double ellipsoid_tol = 5e-2;
  /// Surface-consistency threshold of the certificate (facet centroids).
  double surface_tol = 5e-2;
  /// Relative planarity threshold for the Blaschke tests.
  double blaschke_tol = 5e-2;
  /// Slack over 1 allowed for the projection-norm audit maximum.
  double projection_norm_tol = 5e-3;
  /// Relative width of the shadow-boundary band used by silhouettes.
  double silhouette_band_rel = 2e-2;
  /// Relative in-body travel bound for the supporting-line test. A surface
  /// point of a faceted sphere sits up to ~sag below the true sphere, so
  /// near-tangent chords of length ~sqrt(2 R sag) must stay below the bound.
  double support_travel_rel = 0.1;
  /// Angular tolerance for a direction lying in an incident face plane.
  double support_dir_tol = 2e-2;
};

/// Offset fractions of the support width used by section scans.
inline std::vector<double> default_offsets() {
  return {0.0, 0.2, -0.2, 0.4, -0.4, 0.6, -0.6, 0.8, -0.8};
}

}  // namespace parkable
