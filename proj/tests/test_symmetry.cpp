#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "parkable/bodies_io.hpp"
#include "parkable/sampling.hpp"
#include "parkable/symmetry.hpp"

using namespace parkable;

namespace {

ConvexBody regular_ngon(int n, double r = 1.0) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * M_PI * i / n;
    pts.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return convex_hull(pts);
}

Mat diag3(double a, double b, double c) {
  Mat m = Mat::identity(3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("symmetry_center: translated cube, hexagon, simplex") {
  ConvexBody cube = generate(BodySpec::make_cube());
  SymmetryReport r = symmetry_center(cube.translated(Vec(1, 2, 3)));
  REQUIRE(r.center.has_value());
  CHECK(distance(*r.center, Vec(1, 2, 3)) <= 1e-9);
  CHECK(r.residual <= 1e-12);

  SymmetryReport hex = symmetry_center(regular_ngon(6));
  REQUIRE(hex.center.has_value());
  CHECK(norm(*hex.center) <= 1e-9);

  SymmetryReport simp = symmetry_center(generate(BodySpec::make_simplex(3)));
  CHECK_FALSE(simp.center.has_value());
  CHECK(simp.residual >= 0.1);
}

TEST_CASE("symmetry_center: translation equivariance") {
  SplitMix64 rng(31);
  ConvexBody body = generate(BodySpec::make_cross_polytope(3));
  for (int k = 0; k < 6; ++k) {
    Vec t = rng.unit_vector(3) * rng.uniform(0.0, 4.0);
    SymmetryReport a = symmetry_center(body);
    SymmetryReport b = symmetry_center(body.translated(t));
    REQUIRE(a.center.has_value());
    REQUIRE(b.center.has_value());
    CHECK(distance(*b.center, *a.center + t) <= 1e-12);
  }
}

TEST_CASE("symmetry_center: reflection maps the vertex set onto itself") {
  ConvexBody ball = generate(BodySpec::make_ellipsoid(diag3(1, 4, 9), 2));
  SymmetryReport r = symmetry_center(ball);
  REQUIRE(r.center.has_value());
  for (const Vec& v : ball.vertices) {
    Vec mirrored = 2.0 * (*r.center) - v;
    double best = 1e300;
    for (const Vec& w : ball.vertices) best = std::min(best, distance(mirrored, w));
    CHECK(best <= 1e-9 * (1.0 + ball.diameter));
  }
}

TEST_CASE("section_center_line: ball sections stack along the normal") {
  ConvexBody ball = generate(BodySpec::make_ellipsoid(Mat::identity(3), 3));
  SectionCenterLine scl = section_center_line(ball, Vec(0, 0, 1), default_offsets());
  CHECK(scl.ok);
  REQUIRE(scl.line.has_value());
  CHECK(angle_between(scl.line->directions[0], Vec(0, 0, 1)) <= 2e-2);
  CHECK(scl.collinearity_residual <= 2e-2);
}

TEST_CASE("section_center_line: ellipsoid centers follow the conjugate diameter") {
  // Q = diag(1, 1/4, 1/9): section centers orthogonal to u lie along
  // span(Q^-1 u).
  Mat q = diag3(1.0, 0.25, 1.0 / 9.0);
  ConvexBody ell = generate(BodySpec::make_ellipsoid(q, 3));
  SplitMix64 rng(4);
  for (int k = 0; k < 6; ++k) {
    Vec u = rng.unit_vector(3);
    SectionCenterLine scl = section_center_line(ell, u, default_offsets());
    CHECK(scl.ok);
    REQUIRE(scl.line.has_value());
    Vec conj = normalized(Vec(u.x() / 1.0, u.y() / 0.25, u.z() / (1.0 / 9.0)));
    double ang = angle_between(scl.line->directions[0], conj);
    ang = std::min(ang, M_PI - ang);
    CHECK(ang <= 2e-2);
  }
}

TEST_CASE("section_center_line: cube at a generic direction reports a centerless section") {
  ConvexBody cube = generate(BodySpec::make_cube());
  SectionCenterLine scl = section_center_line(cube, normalized(Vec(1, 2, 3)), default_offsets());
  CHECK_FALSE(scl.ok);
  CHECK(scl.centerless_offset.has_value());
  CHECK(scl.worst_center_residual > 2.5e-2);
}

TEST_CASE("chord_midpoint_plane: ball and cube midplanes") {
  ConvexBody ball = generate(BodySpec::make_ellipsoid(Mat::identity(3), 3));
  ChordMidpointPlane a = chord_midpoint_plane(ball, Vec(0, 0, 1), 16);
  CHECK(a.ok);
  CHECK(a.coplanarity_residual <= 2e-2);
  {
    double ang = angle_between(a.normal, Vec(0, 0, 1));
    CHECK(std::min(ang, M_PI - ang) <= 2e-2);
  }

  ConvexBody cube = generate(BodySpec::make_cube());
  ChordMidpointPlane b = chord_midpoint_plane(cube, Vec(0, 0, 1), 16);
  CHECK(b.ok);
  CHECK(b.coplanarity_residual <= 1e-9);

  // The discriminating case: diagonal chords of the cube have non-coplanar
  // midpoints.
  ChordMidpointPlane c = chord_midpoint_plane(cube, normalized(Vec(1, 1, 1)), 16);
  CHECK_FALSE(c.ok);
  CHECK(c.coplanarity_residual >= 0.1);
}

TEST_CASE("subspace_prime: dispatch and the ellipsoid conjugate") {
  ConvexBody ball = generate(BodySpec::make_ellipsoid(Mat::identity(3), 3));

  ConjugateSubspace full = subspace_prime(ball, AffineSubspace::full(3));
  CHECK(full.subspace.subspace_dim() == 0);
  ConjugateSubspace zero = subspace_prime(ball, AffineSubspace::point(Vec::zero(3)));
  CHECK(zero.subspace.subspace_dim() == 3);

  ConjugateSubspace line = subspace_prime(ball, AffineSubspace::hyperplane(Vec(0, 0, 1), 0.0));
  REQUIRE(line.subspace.subspace_dim() == 1);
  {
    double ang = angle_between(line.subspace.directions[0], Vec(0, 0, 1));
    CHECK(std::min(ang, M_PI - ang) <= 2e-2);
  }

  // Q = diag(1,4,9), S = plane orthogonal to e1: S' = span(Q^-1 e1) = span(e1).
  ConvexBody ell = generate(BodySpec::make_ellipsoid(diag3(1, 4, 9), 3));
  ConjugateSubspace cs = subspace_prime(ell, AffineSubspace::hyperplane(Vec(1, 0, 0), 0.0));
  REQUIRE(cs.subspace.subspace_dim() == 1);
  {
    double ang = angle_between(cs.subspace.directions[0], Vec(1, 0, 0));
    CHECK(std::min(ang, M_PI - ang) <= 2e-2);
  }
}

TEST_CASE("chord-midpoint and section-center maps invert each other on ellipsoids") {
  ConvexBody ell = generate(BodySpec::make_ellipsoid(diag3(1, 4, 9), 3));
  SplitMix64 rng(12);
  for (int k = 0; k < 4; ++k) {
    Vec n = rng.unit_vector(3);
    AffineSubspace h = AffineSubspace::hyperplane(n, 0.0);
    ConjugateSubspace hp = subspace_prime(ell, h, {});
    ConjugateSubspace hpp = subspace_prime(ell, hp.subspace, {});
    Vec n2 = orthonormal_complement(hpp.subspace.directions, 3).at(0);
    double ang = angle_between(n2, n);
    CHECK(std::min(ang, M_PI - ang) <= 2e-2);
  }
}

TEST_CASE("involution_audit: ball passes all three checks") {
  ConvexBody ball = generate(BodySpec::make_ellipsoid(Mat::identity(3), 3));
  InvolutionAudit audit = involution_audit(ball, 16, 77);
  CHECK(audit.flags_tested == 16);
  CHECK(audit.reversal_violations == 0);
  CHECK(audit.involution_violations == 0);
  CHECK(audit.intersection_violations == 0);
  CHECK(audit.max_reversal_angle <= 2e-2);
}

TEST_CASE("supporting_chord_criterion: symmetric polygons pass, a triangle fails") {
  CHECK(supporting_chord_criterion(convex_hull({Vec(-1, -1), Vec(1, -1), Vec(-1, 1), Vec(1, 1)}))
            .pass);
  CHECK(supporting_chord_criterion(regular_ngon(64)).pass);

  SupportingChordResult r =
      supporting_chord_criterion(convex_hull({Vec(-1, -0.5), Vec(1, -0.5), Vec(0, 1)}));
  CHECK_FALSE(r.pass);
  CHECK(r.witness.has_value());
}

TEST_CASE("supporting_chord_criterion matches centered symmetry on a small corpus") {
  // Centered symmetric bodies pass; off-center or asymmetric ones fail.
  struct Case {
    ConvexBody body;
    bool centered;
  };
  std::vector<Case> corpus;
  corpus.push_back({regular_ngon(8), true});
  corpus.push_back({convex_hull({Vec(-1, -1), Vec(1, -1), Vec(-1, 1), Vec(1, 1)}), true});
  corpus.push_back(
      {convex_hull({Vec(-0.7, -1), Vec(1.3, -1), Vec(-0.7, 1), Vec(1.3, 1)}), false});
  corpus.push_back({convex_hull({Vec(-1, -0.5), Vec(1, -0.5), Vec(0, 1)}), false});

  Tolerances strict;
  strict.symmetry_tol = 1e-6;
  for (const Case& c : corpus) {
    SymmetryReport rep = symmetry_center(c.body, strict);
    bool centered_at_origin = rep.center.has_value() && norm(*rep.center) <= 1e-6;
    CHECK(centered_at_origin == c.centered);
    CHECK(supporting_chord_criterion(c.body).pass == c.centered);
  }
}

TEST_CASE("projection_center_check: cube, shifted cube, simplex") {
  ConvexBody cube = generate(BodySpec::make_cube());
  ProjectionCenterCheck r = projection_center_check(cube, 32);
  CHECK(r.consistent);
  CHECK(r.body_has_center);
  CHECK(r.projections_with_center == r.projections_tested);
  CHECK(r.max_center_mismatch <= 1e-9);

  ProjectionCenterCheck shifted = projection_center_check(cube.translated(Vec(1, 2, 3)), 32);
  CHECK(shifted.consistent);
  CHECK(shifted.max_center_mismatch <= 1e-9);

  ProjectionCenterCheck simp = projection_center_check(generate(BodySpec::make_simplex(3)), 32);
  CHECK(simp.consistent);
  CHECK_FALSE(simp.body_has_center);
  CHECK(simp.witness_direction.has_value());
}
