#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "parkable/body.hpp"
#include "parkable/config.hpp"

namespace parkable {

/// Norm whose unit ball is a centrally symmetric convex body with the origin
/// interior. Construct through make_gauge, which validates both conditions.
struct Gauge {
  ConvexBody body;
};

Gauge make_gauge(const ConvexBody& body, const Tolerances& tol = {});

/// ||x|| = inf { r >= 0 : x in r B } = max over facets of (n . x) / b.
double gauge_norm(const Gauge& g, const Vec& x);

/// Operator norm sup_{||x|| <= 1} ||T x||; exact for polytopes as the max of
/// gauge_norm(T v) over unit-ball vertices.
double operator_norm(const Gauge& g, const Mat& t);

/// Rank-1 orthogonal projection onto span(u) and its rank-2 complement,
/// generalized to the inner product x . (Q y) when a shape matrix is given.
Mat projection_onto(const Vec& u, int rank, const Mat* shape = nullptr);

struct ProjectionNormAudit {
  double max_norm = 0.0;
  Vec witness_direction;
  int witness_rank = 0;
  /// Shape matrix absorbed before auditing (identity when none was found).
  Mat shape_matrix;
  bool shape_normalized = false;
};

/// Max gauge operator norm over rank-1 and rank-2 orthogonal projections for
/// sampled directions. The body is first normalized by the square root of
/// its fitted shape matrix, so an exact ellipsoid audits against the round
/// ball; non-ellipsoids keep their anisotropy and exceed 1.
ProjectionNormAudit projection_norm_audit(const Gauge& g, int n_dirs,
                                          const Tolerances& tol = {},
                                          const Mat* shape = nullptr);

/// | ||x+y||^2 + ||x-y||^2 - 2||x||^2 - 2||y||^2 | / (||x||^2 + ||y||^2).
double parallelogram_defect(const Gauge& g, const Vec& x, const Vec& y);

/// Max parallelogram defect over vertex-direction pairs plus seeded random
/// unit pairs.
double parallelogram_residual(const Gauge& g, int n_random_pairs = 128,
                              std::uint64_t seed = 0);

struct EllipsoidCertificate {
  Mat shape_matrix;
  bool verdict = false;
  /// Max quadric defect |x Q x - 1| over the points used by the fit.
  double fit_residual = 0.0;
  /// Max defect over vertices alone (machine-small for generator quadrics).
  double vertex_residual = 0.0;
  /// Max |sqrt(c Q c) - 1| over facet centroids; separates co-quadric vertex
  /// sets (cube, cross-polytope) from true ellipsoid discretizations.
  double surface_residual = 0.0;
  bool positive_definite = false;
  bool degenerate_vertex_fit = false;
  std::string diagnostic;
};

/// Least-squares quadric fit of x Q x = 1 over the vertex set, refitted over
/// vertices + facet centroids + edge midpoints when the vertex system is
/// rank-deficient. Verdict requires a PD fit tight on vertices and consistent
/// on facet centroids.
EllipsoidCertificate ellipsoid_certify(const ConvexBody& b, const Tolerances& tol = {});

}  // namespace parkable
