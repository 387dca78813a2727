#include <benchmark/benchmark.h>

#include "parkable/banach.hpp"
#include "parkable/bodies_io.hpp"
#include "parkable/parkability.hpp"
#include "parkable/symmetry.hpp"

using namespace parkable;

namespace {

const ConvexBody& ball() {
  static ConvexBody b = generate(BodySpec::make_ellipsoid(Mat::identity(3), 3));
  return b;
}

const ConvexBody& cube() {
  static ConvexBody b = generate(BodySpec::make_cube());
  return b;
}

void bm_support(benchmark::State& state) {
  const ConvexBody& b = ball();
  Vec u = normalized(Vec(1.0, 2.0, 3.0));
  for (auto _ : state) benchmark::DoNotOptimize(b.support(u));
}
BENCHMARK(bm_support);

void bm_hull_icosphere(benchmark::State& state) {
  std::vector<Vec> pts = icosphere_vertices(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(convex_hull(pts));
}
BENCHMARK(bm_hull_icosphere)->Arg(2)->Arg(3);

void bm_section(benchmark::State& state) {
  const ConvexBody& b = ball();
  AffineSubspace plane = AffineSubspace::hyperplane(normalized(Vec(1.0, 2.0, 3.0)), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(section(b, plane));
}
BENCHMARK(bm_section);

void bm_park_section(benchmark::State& state) {
  const ConvexBody& b = ball();
  SectionResult sec = section(b, AffineSubspace::hyperplane(normalized(Vec(1.0, 2.0, 3.0)), 0.2));
  ConvexBody embedded = embed_in_ambient(sec.body, sec.chart);
  for (auto _ : state) benchmark::DoNotOptimize(park(embedded, b));
}
BENCHMARK(bm_park_section);

void bm_lp_feasible(benchmark::State& state) {
  std::vector<Halfspace> hs = halfspaces_of(ball());
  for (auto _ : state) benchmark::DoNotOptimize(lp_feasible_fast(hs, 3));
}
BENCHMARK(bm_lp_feasible);

void bm_gauge_operator_norm(benchmark::State& state) {
  Gauge g = make_gauge(ball());
  Mat p = projection_onto(normalized(Vec(1.0, 1.0, 0.0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(g, p));
}
BENCHMARK(bm_gauge_operator_norm);

void bm_symmetry_center(benchmark::State& state) {
  const ConvexBody& b = cube();
  for (auto _ : state) benchmark::DoNotOptimize(symmetry_center(b));
}
BENCHMARK(bm_symmetry_center);

}  // namespace

BENCHMARK_MAIN();
