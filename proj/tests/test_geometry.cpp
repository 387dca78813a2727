#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "parkable/body.hpp"
#include "parkable/sampling.hpp"

using namespace parkable;

namespace {

ConvexBody make_cube3() {
  std::vector<Vec> pts;
  for (int m = 0; m < 8; ++m) pts.emplace_back(m & 1 ? 1 : -1, m & 2 ? 1 : -1, m & 4 ? 1 : -1);
  return convex_hull(pts);
}

ConvexBody make_square2(double s = 1.0) {
  return convex_hull({Vec(-s, -s), Vec(s, -s), Vec(-s, s), Vec(s, s)});
}

bool has_vertex(const ConvexBody& b, const Vec& v, double tol = 1e-9) {
  for (const Vec& w : b.vertices)
    if (distance(v, w) <= tol) return true;
  return false;
}

}  // namespace

TEST_CASE("support: cube and triangle examples") {
  ConvexBody cube = make_cube3();
  CHECK(cube.support(Vec(1, 0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cube.support(Vec(1, 1, 1)) == doctest::Approx(3.0).epsilon(1e-12));

  ConvexBody tri = convex_hull({Vec(0, 0), Vec(2, 0), Vec(0, 2)});
  CHECK(tri.support(Vec(1, 1)) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(cube.support(Vec::zero(3)), std::invalid_argument);
}

TEST_CASE("support: positive homogeneity and hull exactness") {
  SplitMix64 rng(11);
  std::vector<Vec> pts;
  for (int i = 0; i < 40; ++i)
    pts.push_back(rng.unit_vector(3) * rng.uniform(0.2, 1.5));
  ConvexBody b = convex_hull(pts);

  for (int k = 0; k < 64; ++k) {
    Vec u = rng.unit_vector(3);
    double lam = rng.uniform(0.1, 5.0);
    CHECK(b.support(u * lam) == doctest::Approx(lam * b.support(u)).epsilon(1e-12));
    // support of the hull equals the max over the defining points exactly
    double direct = -1e300;
    for (const Vec& p : pts) direct = std::max(direct, dot(p, u));
    CHECK(b.support(u) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("convex_hull: unit square, redundancy elimination, degenerate inputs") {
  ConvexBody sq = convex_hull({Vec(1, 1), Vec(-1, 1), Vec(1, -1), Vec(-1, -1)});
  CHECK(sq.vertices.size() == 4);
  CHECK(sq.facets.size() == 4);
  validate_body(sq);

  ConvexBody tri = convex_hull({Vec(0, 0), Vec(1, 0), Vec(0.5, 0.2), Vec(0, 1)});
  CHECK(tri.vertices.size() == 3);  // interior point dropped
  CHECK_FALSE(has_vertex(tri, Vec(0.5, 0.2)));

  CHECK_THROWS_AS(convex_hull({}), std::invalid_argument);
  ConvexBody pt = convex_hull({Vec(1, 2, 3), Vec(1, 2, 3)});
  CHECK(pt.affine_dim == 0);
  CHECK(pt.vertices.size() == 1);
}

TEST_CASE("convex_hull: symmetric hull of a triangle and its reflection") {
  std::vector<Vec> pts = {Vec(1, 0), Vec(2, 0), Vec(1, 1)};
  std::vector<Vec> both = pts;
  for (const Vec& p : pts) both.push_back(-p);
  ConvexBody hull = convex_hull(both);
  // (1,0) and its reflection land inside the hull of the other four points,
  // so the symmetric hull is a quadrilateral here.
  CHECK(hull.vertices.size() == 4);

  // -hull equals hull: compare vertex sets after negation.
  ConvexBody neg = hull.negated();
  for (const Vec& v : neg.vertices) CHECK(has_vertex(hull, v));
  validate_body(hull);
  validate_body(neg);
}

TEST_CASE("project: cube shadows") {
  ConvexBody cube = make_cube3();

  AffineSubspace xy;
  xy.base = Vec::zero(3);
  xy.directions = {Vec(1, 0, 0), Vec(0, 1, 0)};
  ConvexBody sq = project(cube, xy);
  CHECK(sq.vertices.size() == 4);
  CHECK(sq.support(Vec(1, 0)) == doctest::Approx(1.0));

  // Shadow orthogonal to the space diagonal: regular hexagon, circumradius
  // sqrt(8/3).
  Vec d = normalized(Vec(1, 1, 1));
  AffineSubspace plane;
  plane.base = Vec::zero(3);
  plane.directions = orthonormal_complement({d}, 3);
  ConvexBody hex = project(cube, plane);
  CHECK(hex.vertices.size() == 6);
  for (const Vec& v : hex.vertices)
    CHECK(norm(v) == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-9));

  // Projection onto the full space is the identity.
  ConvexBody same = project(cube, AffineSubspace::full(3));
  CHECK(oracles::max_support_difference(cube, same) <= 1e-12);
}

TEST_CASE("section: cube planes") {
  ConvexBody cube = make_cube3();
  Tolerances tol;

  SectionResult mid = section(cube, AffineSubspace::hyperplane(Vec(0, 0, 1), 0.0), tol);
  CHECK_FALSE(mid.empty);
  CHECK_FALSE(mid.degenerate);
  CHECK(mid.body.vertices.size() == 4);
  CHECK(mid.body.support(Vec(1, 0)) == doctest::Approx(1.0));

  // Tangent plane at the top facet: flat in 3D, full-dimensional in chart,
  // flagged degenerate as a section.
  SectionResult top = section(cube, AffineSubspace::hyperplane(Vec(0, 0, 1), 1.0), tol);
  CHECK_FALSE(top.empty);
  CHECK(top.body.vertices.size() == 4);

  SectionResult off = section(cube, AffineSubspace::hyperplane(Vec(0, 0, 1), 2.0), tol);
  CHECK(off.empty);

  // Diagonal plane: regular hexagon through the six (1,-1,0)-type points.
  SectionResult hex = section(cube, AffineSubspace::hyperplane(Vec(1, 1, 1), 0.0), tol);
  CHECK(hex.body.vertices.size() == 6);
  std::vector<Vec> expect = {Vec(1, -1, 0), Vec(-1, 1, 0), Vec(1, 0, -1),
                             Vec(-1, 0, 1), Vec(0, 1, -1), Vec(0, -1, 1)};
  for (const Vec& e : expect) {
    bool found = false;
    for (const Vec& v : hex.body.vertices)
      if (distance(hex.chart.from_chart(v), e) < 1e-9) found = true;
    CHECK(found);
  }
}

TEST_CASE("section and translation commute") {
  ConvexBody cube = make_cube3();
  Vec t(0.3, -0.7, 0.2);
  ConvexBody moved = cube.translated(t);
  Vec n = normalized(Vec(1, 2, 3));
  double off = 0.4;

  SectionResult s1 = section(cube, AffineSubspace::hyperplane(n, off));
  AffineSubspace shifted = AffineSubspace::hyperplane(n, off);
  shifted.base += t;
  SectionResult s2 = section(moved, shifted);
  REQUIRE_FALSE(s1.empty);
  REQUIRE_FALSE(s2.empty);
  REQUIRE(s1.body.vertices.size() == s2.body.vertices.size());
  for (const Vec& v : s1.body.vertices) {
    Vec amb = s1.chart.from_chart(v) + t;
    double best = 1e300;
    for (const Vec& w : s2.body.vertices)
      best = std::min(best, distance(s2.chart.from_chart(w), amb));
    CHECK(best <= 1e-9);
  }
}

TEST_CASE("minkowski_erode: squares, points, self") {
  ConvexBody big = make_square2(1.0);
  ConvexBody small = make_square2(0.5);

  auto er = minkowski_erode(big, small);
  REQUIRE(er.has_value());
  CHECK(oracles::max_support_difference(*er, make_square2(0.5)) <= 1e-12);

  // Point erosion is a translation.
  ConvexBody pt = convex_hull({Vec(0.5, 0.0)});
  auto er2 = minkowski_erode(big, pt);
  REQUIRE(er2.has_value());
  CHECK(er2->support(Vec(1, 0)) == doctest::Approx(0.5));
  CHECK(er2->support(Vec(-1, 0)) == doctest::Approx(1.5));
  CHECK(er2->support(Vec(0, 1)) == doctest::Approx(1.0));

  auto er3 = minkowski_erode(big, big);
  REQUIRE(er3.has_value());
  CHECK(er3->diameter <= 1e-9);
  CHECK(norm(er3->vertex_centroid) <= 1e-9);

  // Erosion by something too large is empty.
  auto er4 = minkowski_erode(small, big);
  CHECK_FALSE(er4.has_value());
}

TEST_CASE("minkowski_erode membership matches direct containment on a grid") {
  SplitMix64 rng(5);
  std::vector<Vec> cp, bp;
  for (int i = 0; i < 6; ++i) cp.push_back(rng.unit_vector(2) * rng.uniform(0.2, 0.6));
  for (int i = 0; i < 9; ++i) bp.push_back(rng.unit_vector(2) * rng.uniform(1.0, 2.0));
  ConvexBody c = convex_hull(cp), b = convex_hull(bp);
  auto er = minkowski_erode(b, c);
  REQUIRE(er.has_value());

  int mismatches = 0, total = 0;
  for (int gx = 0; gx < 41; ++gx)
    for (int gy = 0; gy < 41; ++gy) {
      Vec v(-2.0 + 4.0 * gx / 40, -2.0 + 4.0 * gy / 40);
      bool in_erosion = er->contains(v, 1e-9);
      bool direct = oracles::translate_fits(c, b, v, 1e-9);
      ++total;
      if (in_erosion != direct) ++mismatches;
    }
  CHECK(mismatches <= total / 1000);
}

TEST_CASE("hausdorff: identity, translation, rotated square") {
  ConvexBody cube = make_cube3();
  CHECK(hausdorff(cube, cube) == doctest::Approx(0.0));
  CHECK(hausdorff(cube, cube.translated(Vec(0.3, 0, 0))) == doctest::Approx(0.3).epsilon(1e-9));

  ConvexBody sq = make_square2(1.0);
  double r = std::sqrt(2.0);
  ConvexBody rot = convex_hull({Vec(r, 0), Vec(-r, 0), Vec(0, r), Vec(0, -r)});
  CHECK(hausdorff(sq, rot) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-9));
}

TEST_CASE("hausdorff is a pseudometric on sampled supports") {
  SplitMix64 rng(17);
  std::vector<ConvexBody> bodies;
  for (int k = 0; k < 3; ++k) {
    std::vector<Vec> pts;
    for (int i = 0; i < 12; ++i) pts.push_back(rng.unit_vector(3) * rng.uniform(0.5, 1.5));
    bodies.push_back(convex_hull(pts));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(hausdorff(bodies[i], bodies[j]) ==
            doctest::Approx(hausdorff(bodies[j], bodies[i])).epsilon(1e-12));
      for (int k = 0; k < 3; ++k)
        CHECK(hausdorff(bodies[i], bodies[k]) <=
              hausdorff(bodies[i], bodies[j]) + hausdorff(bodies[j], bodies[k]) + 1e-9);
    }
}

TEST_CASE("flat bodies carry exact span equalities") {
  ConvexBody tri = convex_hull({Vec(0, 0, 1), Vec(1, 0, 1), Vec(0, 1, 1)});
  CHECK(tri.affine_dim == 2);
  CHECK(tri.flat());
  // The plane z = 1 shows up as an opposing facet pair.
  CHECK_FALSE(tri.contains(Vec(0.2, 0.2, 1.01), 1e-6));
  CHECK(tri.contains(Vec(0.2, 0.2, 1.0), 1e-9));
  validate_body(tri);
}

TEST_CASE("body_from_halfspaces recovers the cube and flags empty systems") {
  ConvexBody cube = make_cube3();
  auto back = body_from_halfspaces(halfspaces_of(cube), 3);
  REQUIRE(back.has_value());
  CHECK(oracles::max_support_difference(cube, *back) <= 1e-7);

  std::vector<Halfspace> empty_sys = {{Vec(1, 0, 0), -1.0}, {Vec(-1, 0, 0), -1.0},
                                      {Vec(0, 1, 0), 1.0},  {Vec(0, -1, 0), 1.0},
                                      {Vec(0, 0, 1), 1.0},  {Vec(0, 0, -1), 1.0}};
  CHECK_FALSE(body_from_halfspaces(empty_sys, 3).has_value());
}
