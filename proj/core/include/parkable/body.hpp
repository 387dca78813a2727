#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "parkable/config.hpp"
#include "parkable/lp.hpp"
#include "parkable/vec.hpp"

namespace parkable {

/// One facet inequality { x : normal . x <= offset }. For flat bodies the
/// affine span is encoded as pairs of opposing inequalities with
/// `span_pair` set; those carry no vertex list.
struct Facet {
  Vec normal;  // unit length
  double offset = 0.0;
  /// Tight vertices, ordered counter-clockwise around the outward normal for
  /// 3D facets (2D facets are edges listing their two endpoints).
  std::vector<int> vertex_ids;
  bool span_pair = false;
};

/// Convex polytope in vertex and facet representation. Values are immutable
/// after construction and safe to share across threads.
struct ConvexBody {
  int dim = 0;         // ambient dimension
  int affine_dim = 0;  // dimension of the affine hull
  std::vector<Vec> vertices;
  std::vector<Facet> facets;
  /// Orthonormal chart of the affine hull (trivial for full-dimensional
  /// bodies).
  AffineSubspace span;
  std::vector<std::pair<int, int>> edges;
  Vec vertex_centroid;
  double diameter = 0.0;
  /// Erosion results on large 3D systems skip vertex enumeration; such
  /// bodies expose facets only.
  bool hrep_only = false;

  bool flat() const { return affine_dim < dim; }
  bool is_body() const { return affine_dim == dim && dim > 0; }

  /// h_B(u) = max over vertices of v . u. Requires a vertex representation.
  double support(const Vec& u) const;
  /// Vertex ids attaining the support value within tol.
  std::vector<int> support_set(const Vec& u, double tol) const;

  /// Membership test against the facet system, absolute tolerance.
  bool contains(const Vec& x, double tol) const;
  /// max over facets of (normal . x - offset); negative inside.
  double facet_violation(const Vec& x) const;

  ConvexBody translated(const Vec& t) const;
  ConvexBody negated() const;

  /// Ordered corner loop of a 3D facet, ambient coordinates.
  std::vector<Vec> facet_polygon(int facet_id) const;
  Vec facet_centroid(int facet_id) const;

  /// Distance from the centroid to the nearest facet plane; lower bound for
  /// the inradius of full-dimensional bodies (in the chart for flat ones).
  double inradius_lower_bound() const;
};

struct HullOptions {
  double eps = 1e-9;
  /// Skip vertex enumeration above this facet count when converting
  /// halfspace systems (3D only).
  int max_enumeration_facets = 140;
};

/// Convex hull with minimal vertex set and facet enumeration (ambient
/// dimension <= 3). Lower-dimensional point sets yield flat bodies carrying
/// explicit span equalities.
ConvexBody convex_hull(const std::vector<Vec>& points, const HullOptions& opt = {});

/// Intersection of bounded halfspace systems by vertex enumeration.
/// Returns nullopt when empty. Precondition: the system is bounded.
std::optional<ConvexBody> body_from_halfspaces(const std::vector<Halfspace>& hs, int dim,
                                               const HullOptions& opt = {});

/// All facet inequalities of a body as a halfspace list.
std::vector<Halfspace> halfspaces_of(const ConvexBody& b);

/// Orthogonal projection onto a linear subspace, in subspace coordinates.
ConvexBody project(const ConvexBody& b, const AffineSubspace& s,
                   const HullOptions& opt = {});

struct SectionResult {
  bool empty = true;
  bool degenerate = false;
  /// Intersection expressed in an orthonormal chart of the subspace.
  ConvexBody body;
  AffineSubspace chart;
};

/// Intersection with an affine hyperplane or line.
SectionResult section(const ConvexBody& b, const AffineSubspace& s,
                      const Tolerances& tol = {});

/// Re-embed a chart body into ambient space as a flat ConvexBody.
ConvexBody embed_in_ambient(const ConvexBody& chart_body, const AffineSubspace& chart,
                            const HullOptions& opt = {});

/// Minkowski erosion B (-) C = { v : C + v is contained in B }, as the facet
/// system (n_i, b_i - h_C(n_i)). Returns nullopt when empty. Vertex
/// enumeration is skipped above opt.max_enumeration_facets (hrep_only set).
std::optional<ConvexBody> minkowski_erode(const ConvexBody& b, const ConvexBody& c,
                                          const HullOptions& opt = {});

/// Support-sampled Hausdorff distance: max |h_B1 - h_B2| over both facet
/// normal fans plus a fixed direction lattice. Exact for polytopes whose
/// normal fans are covered.
double hausdorff(const ConvexBody& b1, const ConvexBody& b2, int lattice_dirs = 512);

/// True when every vertex of `inner` satisfies the facets of `outer`.
bool contains_body(const ConvexBody& outer, const ConvexBody& inner, double tol);

/// Consistency check of the dual representation; throws on violation.
/// Verifies vertex/facet incidence, facet tightness and V/H support
/// agreement on sampled directions.
void validate_body(const ConvexBody& b, double eps = 1e-7);

}  // namespace parkable
