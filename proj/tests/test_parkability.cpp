#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "parkable/bodies_io.hpp"
#include "parkable/parkability.hpp"
#include "parkable/sampling.hpp"

using namespace parkable;

namespace {

ConvexBody square2(double s = 1.0) {
  return convex_hull({Vec(-s, -s), Vec(s, -s), Vec(-s, s), Vec(s, s)});
}

ConvexBody regular_ngon(int n, double r = 1.0) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * M_PI * i / n;
    pts.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return convex_hull(pts);
}

}  // namespace

TEST_CASE("park: segment into the unit square") {
  ConvexBody c = convex_hull({Vec(1, 0), Vec(2, 0)});
  ConvexBody b = square2();
  ParkResult r = park(c, b);
  CHECK(r.feasible);
  REQUIRE(r.witness.has_value());
  CHECK((*r.witness).x() == doctest::Approx(-1.5).epsilon(1e-9));
  CHECK((*r.witness).y() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("park: bottom edge of a flat triangle cannot repark") {
  ConvexBody b = convex_hull({Vec(-1, -0.5), Vec(1, -0.5), Vec(0, 1)});
  ConvexBody c = convex_hull({Vec(-1, -0.5), Vec(1, -0.5)});
  ParkResult r = park(c, b);
  CHECK_FALSE(r.feasible);
  // Grid brute force agrees.
  CHECK_FALSE(oracles::grid_park_2d(c, b, 0.01).feasible);
}

TEST_CASE("park: point into a regular 64-gon") {
  ConvexBody c = convex_hull({Vec(0.3, 0.4)});
  ConvexBody b = regular_ngon(64);
  ParkResult r = park(c, b);
  CHECK(r.feasible);
  REQUIRE(r.witness.has_value());
  CHECK(distance(*r.witness, Vec(-0.3, -0.4)) <= 1e-9);
}

TEST_CASE("park: verdict invariant under translating C, witness shifts") {
  SplitMix64 rng(3);
  for (int inst = 0; inst < 12; ++inst) {
    std::vector<Vec> cp, bp;
    for (int i = 0; i < 5; ++i) cp.push_back(rng.unit_vector(2) * rng.uniform(0.1, 0.5));
    for (int i = 0; i < 7; ++i) bp.push_back(rng.unit_vector(2) * rng.uniform(0.8, 1.6));
    ConvexBody c = convex_hull(cp);
    ConvexBody b = convex_hull(bp);
    if (!b.contains(Vec::zero(2), -1e-3)) continue;
    Vec s(rng.uniform(-3, 3), rng.uniform(-3, 3));

    ParkResult r1 = park(c, b);
    ParkResult r2 = park(c.translated(s), b);
    CHECK(r1.feasible == r2.feasible);
    if (r1.feasible) {
      // Both witnesses re-validate; they differ by -s.
      CHECK(oracles::translate_fits(c, b, *r1.witness, 1e-7));
      CHECK(oracles::translate_fits(c.translated(s), b, *r2.witness, 1e-7));
      CHECK(distance(*r2.witness, *r1.witness - s) <= 1e-7);
    }
  }
}

TEST_CASE("park verdicts match grid brute force on seeded 2D instances") {
  SplitMix64 rng(1234);
  int agreements = 0, trials = 0;
  while (trials < 20) {
    std::vector<Vec> cp, bp;
    int nc = 3 + static_cast<int>(rng.next() % 4);
    int nb = 5 + static_cast<int>(rng.next() % 4);
    for (int i = 0; i < nc; ++i) cp.push_back(rng.unit_vector(2) * rng.uniform(0.2, 0.9));
    Vec shift(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4));
    for (Vec& p : cp) p += shift;
    for (int i = 0; i < nb; ++i) bp.push_back(rng.unit_vector(2) * rng.uniform(0.9, 1.8));
    ConvexBody c = convex_hull(cp);
    ConvexBody b = convex_hull(bp);
    if (!b.contains(Vec::zero(2), -1e-3)) continue;
    ParkResult lp = park(c, b);
    // Skip knife-edge instances the grid cannot decide.
    if (lp.feasible && lp.feasible_set && lp.feasible_set->diameter < 0.05) continue;
    ++trials;
    auto grid = oracles::grid_park_2d(c, b, 0.01);
    if (grid.feasible == lp.feasible) ++agreements;
  }
  CHECK(agreements == trials);
}

TEST_CASE("symmetric_hull: point, square, negation invariance") {
  ConvexBody pt = convex_hull({Vec(1.0, 0.0)});
  ConvexBody seg = symmetric_hull(pt, Vec::zero(2));
  CHECK(seg.affine_dim == 1);
  CHECK(seg.support(Vec(1, 0)) == doctest::Approx(1.0));
  CHECK(seg.support(Vec(-1, 0)) == doctest::Approx(1.0));

  // Unit square at u = (2, 0): hull of +-([2,3] x [0,1]).
  ConvexBody sq = convex_hull({Vec(0, 0), Vec(1, 0), Vec(0, 1), Vec(1, 1)});
  ConvexBody hull = symmetric_hull(sq, Vec(2, 0));
  std::vector<Vec> expect;
  for (const Vec& v : {Vec(2, 0), Vec(3, 0), Vec(2, 1), Vec(3, 1)}) {
    expect.push_back(v);
    expect.push_back(-v);
  }
  ConvexBody direct = convex_hull(expect);
  CHECK(oracles::max_support_difference(hull, direct) <= 1e-12);

  // Output is centrally symmetric for arbitrary input.
  SplitMix64 rng(9);
  for (int k = 0; k < 8; ++k) {
    std::vector<Vec> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(rng.unit_vector(3) * rng.uniform(0.3, 1.0));
    ConvexBody c = convex_hull(pts);
    ConvexBody h = symmetric_hull(c, rng.unit_vector(3) * 2.0);
    CHECK(oracles::max_support_difference(h, h.negated()) <= 1e-9);
  }
}

TEST_CASE("universal_parkability: symmetric bodies pass") {
  ConvexBody sq = square2();
  UniversalParkReport r = universal_parkability(sq, 6.0, 256);
  CHECK(r.pass);
  CHECK(r.tested == 256);

  ConvexBody seg = convex_hull({Vec(0.0, 0.0), Vec(1.0, 0.0)});  // center (0.5, 0)
  CHECK(universal_parkability(seg, 6.0, 256).pass);
}

TEST_CASE("universal_parkability: 3D bodies without a center fail") {
  ConvexBody simplex = generate(BodySpec::make_simplex(3));
  UniversalParkReport r = universal_parkability(simplex, 6.0, 256);
  CHECK_FALSE(r.pass);
  REQUIRE(r.witness_u.has_value());
  // The witness re-validates: that translate really is not parkable.
  ConvexBody cu = simplex.translated(*r.witness_u);
  ParkResult pr = park(cu, symmetric_hull(simplex, *r.witness_u));
  CHECK_FALSE(pr.feasible);

  // Flat triangle in 3D.
  ConvexBody tri = convex_hull({Vec(0, 0, 0), Vec(1, 0, 0), Vec(0, 1, 0)});
  CHECK_FALSE(universal_parkability(tri, 6.0, 256).pass);
}

TEST_CASE("universal_parkability: radius precondition") {
  ConvexBody sq = square2();
  CHECK_THROWS_AS(universal_parkability(sq, 1.0, 16), std::invalid_argument);
  CHECK(default_park_radius(sq) > std::sqrt(2.0) + 2.0 * std::sqrt(2.0) - 1e-9);
}

TEST_CASE("park_direction: point body formula") {
  Vec p(0.2, -0.1, 0.3);
  ConvexBody c = convex_hull({p});
  SplitMix64 rng(2);
  for (int k = 0; k < 8; ++k) {
    Vec u = rng.unit_vector(3) * 5.0;
    DirectionSample s = park_direction(c, u);
    CHECK(angle_between(s.direction, -(p + u)) <= 1e-7);
    CHECK(s.uniqueness_residual <= 1e-7);
  }
}

TEST_CASE("park_direction: centered square gives -u and is odd") {
  ConvexBody sq = square2();
  for (const Vec& d : circle_directions(16)) {
    Vec u = d * 6.0;
    DirectionSample s1 = park_direction(sq, u);
    CHECK(angle_between(s1.direction, -u) <= 1e-9);
    DirectionSample s2 = park_direction(sq, -u);
    CHECK(angle_between(s2.direction, -s1.direction) <= 1e-9);
  }
}

TEST_CASE("park_direction: uniqueness residual small for the triangle") {
  ConvexBody tri = convex_hull({Vec(0, 0), Vec(1, 0), Vec(0, 1)});
  SplitMix64 rng(8);
  for (int k = 0; k < 12; ++k) {
    Vec u = rng.unit_vector(2) * 6.0;
    DirectionSample s = park_direction(tri, u);
    CHECK(s.uniqueness_residual <= 1e-6);
  }
}

TEST_CASE("park_direction images cover the direction sphere") {
  // Off-origin point body in 3D: parkable at every u, and the directions
  // -(p+u)/|p+u| sweep the whole sphere as u does.
  ConvexBody pt = convex_hull({Vec(0.2, -0.1, 0.3)});
  double r3 = default_park_radius(pt) + 1.0;
  std::vector<Vec> images3;
  for (const Vec& d : fibonacci_sphere(256)) images3.push_back(park_direction(pt, d * r3).direction);
  CHECK(oracles::coverage_gap(images3, 3, 512) <= 25.0 * M_PI / 180.0);

  // Triangle in the plane: circle version of the same coverage claim.
  ConvexBody tri = convex_hull({Vec(0, 0), Vec(1, 0), Vec(0, 1)});
  std::vector<Vec> images2;
  for (const Vec& d : circle_directions(256)) images2.push_back(park_direction(tri, d * 6.0).direction);
  CHECK(oracles::coverage_gap(images2, 2, 360) <= 25.0 * M_PI / 180.0);
}

TEST_CASE("park_direction: errors on translates containing the origin") {
  ConvexBody sq = square2();
  CHECK_THROWS_AS(park_direction(sq, Vec(0.1, 0.0)), std::invalid_argument);
}

TEST_CASE("projection of the parked translate is centrally symmetric") {
  // Flat centered square in 3D: exact symmetry.
  ConvexBody sq3 =
      convex_hull({Vec(-1, -1, 0), Vec(1, -1, 0), Vec(-1, 1, 0), Vec(1, 1, 0)});
  SplitMix64 rng(21);
  for (int k = 0; k < 6; ++k) {
    Vec u = rng.unit_vector(3) * 8.0;
    CHECK(park_direction_projection_residual(sq3, u) <= 1e-6);
  }

  // Discretized ball (162 vertices): residual bounded by the mesh error.
  ConvexBody ball = generate(BodySpec::make_ellipsoid(Mat::identity(3), 2));
  CHECK(ball.vertices.size() == 162);
  for (int k = 0; k < 3; ++k) {
    Vec u = rng.unit_vector(3) * default_park_radius(ball);
    CHECK(park_direction_projection_residual(ball, u) <= 2e-2);
  }
}

TEST_CASE("section_parkability_scan: cube fails with a revalidating witness") {
  ConvexBody cube = generate(BodySpec::make_cube());
  SectionParkabilityScan scan = section_parkability_scan(cube, 64, default_offsets());
  CHECK_FALSE(scan.pass);
  REQUIRE_FALSE(scan.failures.empty());

  const auto& w = scan.failures.front();
  double h = w.offset_fraction >= 0 ? cube.support(w.direction) : cube.support(-w.direction);
  SectionResult sec =
      section(cube, AffineSubspace::hyperplane(w.direction, w.offset_fraction * h));
  REQUIRE_FALSE(sec.empty);
  ConvexBody emb = embed_in_ambient(sec.body, sec.chart);
  CHECK_FALSE(park(emb, cube).feasible);
}

TEST_CASE("section_parkability_scan: central sections always park in symmetric bodies") {
  for (BodySpec spec : {BodySpec::make_cube(3), BodySpec::make_cross_polytope(3)}) {
    ConvexBody b = generate(spec);
    SectionParkabilityScan scan = section_parkability_scan(b, 64, {0.0});
    CHECK(scan.pass);
  }
}
