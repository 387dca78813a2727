#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "parkable/bodies_io.hpp"
#include "parkable/illumination.hpp"
#include "parkable/parkability.hpp"
#include "parkable/sampling.hpp"

using namespace parkable;

namespace {

Mat diag3(double a, double b, double c) {
  Mat m = Mat::identity(3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("silhouette: cube along an axis is the lateral facet band") {
  ConvexBody cube = generate(BodySpec::make_cube());
  Silhouette sil = silhouette(cube, Vec(0, 0, 1));
  CHECK(sil.facet_ids.size() == 4);
  for (int f : sil.facet_ids) CHECK(std::fabs(dot(cube.facets[f].normal, Vec(0, 0, 1))) <= 1e-9);
  CHECK(sil.vertex_ids.size() == 8);  // every vertex projects onto the shadow boundary
}

TEST_CASE("silhouette: cube along the diagonal is the six-edge cycle") {
  ConvexBody cube = generate(BodySpec::make_cube());
  Silhouette sil = silhouette(cube, normalized(Vec(1, 1, 1)));
  CHECK(sil.facet_ids.empty());
  CHECK(sil.vertex_ids.size() == 6);
  CHECK(sil.edge_list.size() == 6);
  // The two diagonal vertices are excluded.
  for (int id : sil.vertex_ids) {
    CHECK(distance(cube.vertices[id], Vec(1, 1, 1)) > 1e-9);
    CHECK(distance(cube.vertices[id], Vec(-1, -1, -1)) > 1e-9);
  }
}

TEST_CASE("silhouette: membership matches a direct shadow-boundary test") {
  ConvexBody ball = generate(BodySpec::make_ellipsoid(Mat::identity(3), 2));
  Vec d = normalized(Vec(0.3, -0.5, 0.8));
  Tolerances tol;
  Silhouette sil = silhouette(ball, d, tol);
  std::set<int> flagged(sil.vertex_ids.begin(), sil.vertex_ids.end());
  double band = tol.silhouette_band_rel * ball.diameter;

  // Independent route: distance from the projected vertex to the shadow
  // polygon boundary, via point-segment distances along the polygon loop.
  const auto& loop = sil.shadow.vertices;  // CCW order
  for (size_t i = 0; i < ball.vertices.size(); ++i) {
    Vec q = sil.chart.to_chart(ball.vertices[i]);
    double dist = 1e300;
    for (size_t k = 0; k < loop.size(); ++k) {
      const Vec& a = loop[k];
      const Vec& b = loop[(k + 1) % loop.size()];
      Vec ab = b - a;
      double t = std::clamp(dot(q - a, ab) / norm2(ab), 0.0, 1.0);
      dist = std::min(dist, distance(q, a + t * ab));
    }
    bool boundary = dist <= band * (1.0 + 1e-9);
    CHECK(boundary == (flagged.count(static_cast<int>(i)) > 0));
  }

  // Equator case: the lifted silhouette hugs z = 0 within the mesh band.
  Silhouette eq = silhouette(ball, Vec(0, 0, 1), tol);
  for (int id : eq.vertex_ids) CHECK(std::fabs(ball.vertices[id].z()) <= 0.3);
  CHECK_FALSE(eq.vertex_ids.empty());
}

TEST_CASE("weak_blaschke_test: ball accepts every direction") {
  ConvexBody ball = generate(BodySpec::make_ellipsoid(Mat::identity(3), 3));
  SplitMix64 rng(19);
  for (int k = 0; k < 6; ++k) {
    Vec d = rng.unit_vector(3);
    WeakBlaschkeResult r = weak_blaschke_test(ball, d);
    CHECK(r.verdict);
    CHECK(r.residual <= 5e-2);
    // The found plane is the central plane orthogonal to d, up to mesh error.
    double ang = angle_between(r.plane_normal, d);
    CHECK(std::min(ang, M_PI - ang) <= 0.2);
    CHECK(std::fabs(r.plane_offset) <= 0.15);
  }
}

TEST_CASE("weak_blaschke_test: cube axis true, cube diagonal false") {
  ConvexBody cube = generate(BodySpec::make_cube());
  WeakBlaschkeResult axis = weak_blaschke_test(cube, Vec(0, 0, 1));
  CHECK(axis.verdict);
  CHECK(axis.residual <= 1e-9);

  WeakBlaschkeResult diag = weak_blaschke_test(cube, normalized(Vec(1, 1, 1)));
  CHECK_FALSE(diag.verdict);
  CHECK(diag.residual > 5e-2);
}

TEST_CASE("weak_blaschke_test: cross-polytope mirrors the cube by duality") {
  ConvexBody cross = generate(BodySpec::make_cross_polytope(3));
  CHECK(weak_blaschke_test(cross, Vec(0, 0, 1)).verdict);
  WeakBlaschkeResult diag = weak_blaschke_test(cross, normalized(Vec(1, 1, 1)));
  CHECK_FALSE(diag.verdict);
  CHECK(supporting_cone(cross, normalized(Vec(1, 1, 1))).empty());
}

TEST_CASE("supporting_cone: cube axis pins the axis, diagonal is empty") {
  ConvexBody cube = generate(BodySpec::make_cube());
  Tolerances tol;
  ConeSet axis = supporting_cone(cube, Vec(0, 0, 1), tol);
  REQUIRE_FALSE(axis.empty());
  for (const Vec& w : axis.generators) CHECK(angle_between(w, Vec(0, 0, 1)) <= 2.5e-2);

  ConeSet diag = supporting_cone(cube, normalized(Vec(1, 1, 1)), tol);
  CHECK(diag.empty());

  // Direction-grid oracle agrees on both calls.
  SectionResult sec = section(cube, AffineSubspace::hyperplane(Vec(0, 0, 1), 0.0), tol);
  std::vector<Vec> boundary;
  for (const Vec& v : sec.body.vertices) boundary.push_back(sec.chart.from_chart(v));
  for (const auto& [i, j] : sec.body.edges)
    boundary.push_back(sec.chart.from_chart(0.5 * (sec.body.vertices[i] + sec.body.vertices[j])));
  CHECK(oracles::supports_section_boundary_dense(cube, boundary, Vec(0, 0, 1), 1e-9));
  CHECK_FALSE(oracles::supports_section_boundary_dense(cube, boundary,
                                                       normalized(Vec(1, 0, 1)), 1e-6));
}

TEST_CASE("supporting_cone: ball cone clusters at the normal") {
  ConvexBody ball = generate(BodySpec::make_ellipsoid(Mat::identity(3), 3));
  ConeSet cone = supporting_cone(ball, Vec(0, 0, 1));
  REQUIRE_FALSE(cone.empty());
  // Mesh sag allows chords of length ~sqrt(2 sag), so the cone is a small
  // cap around the axis rather than the exact singleton.
  for (const Vec& w : cone.generators) CHECK(angle_between(w, Vec(0, 0, 1)) <= 0.15);
}

TEST_CASE("supporting_cone is odd") {
  Tolerances tol;
  for (const char* which : {"ball", "cube"}) {
    ConvexBody b = which[0] == 'b' ? generate(BodySpec::make_ellipsoid(Mat::identity(3), 2))
                                   : generate(BodySpec::make_cube());
    CAPTURE(which);
    for (const Vec& v : fibonacci_sphere(16)) {
      ConeSet plus = supporting_cone(b, v, tol);
      ConeSet minus = supporting_cone(b, -v, tol);
      REQUIRE(plus.generators.size() == minus.generators.size());
      for (const Vec& w : plus.generators) {
        double best = 1e300;
        for (const Vec& m : minus.generators) best = std::min(best, angle_between(-w, m));
        CHECK(best <= 2e-2);
      }
    }
  }
}

TEST_CASE("supporting_cone images cover the sphere for ellipsoids") {
  ConvexBody ell = generate(BodySpec::make_ellipsoid(diag3(1, 2, 5), 3));
  std::vector<Vec> images;
  for (const Vec& v : fibonacci_sphere(96)) {
    ConeSet cone = supporting_cone(ell, v);
    REQUIRE_FALSE(cone.empty());
    for (const Vec& w : cone.generators) images.push_back(w);
  }
  CHECK(oracles::coverage_gap(images, 3, 256) <= 25.0 * M_PI / 180.0);
}

TEST_CASE("dual_blaschke_check: ball passes, cube fails at diagonals") {
  ConvexBody ball = generate(BodySpec::make_ellipsoid(Mat::identity(3), 3));
  DualBlaschkeCheck a = dual_blaschke_check(ball, 32);
  CHECK(a.all_nonempty);

  ConvexBody cube = generate(BodySpec::make_cube());
  DualBlaschkeCheck b = dual_blaschke_check(cube, 64);
  CHECK_FALSE(b.all_nonempty);
}

TEST_CASE("bodies passing the section scan also pass the cone check") {
  for (Mat q : {Mat::identity(3), diag3(1, 4, 9)}) {
    ConvexBody ell = generate(BodySpec::make_ellipsoid(q, 3));
    SectionParkabilityScan scan = section_parkability_scan(ell, 32, default_offsets());
    DualBlaschkeCheck dual = dual_blaschke_check(ell, 32);
    CHECK(scan.pass);
    CHECK(dual.all_nonempty);
  }
}
