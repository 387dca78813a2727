#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include "parkable/sampling.hpp"

namespace parkable::oracles {

bool translate_fits(const ConvexBody& c, const ConvexBody& b, const Vec& v, double tol) {
  for (const Vec& x : c.vertices)
    if (b.facet_violation(x + v) > tol) return false;
  return true;
}

GridParkResult grid_park_2d(const ConvexBody& c, const ConvexBody& b, double step, double pad) {
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const Vec& x : c.vertices) {
    lo_x = std::min(lo_x, -x.x());
    hi_x = std::max(hi_x, -x.x());
    lo_y = std::min(lo_y, -x.y());
    hi_y = std::max(hi_y, -x.y());
  }
  lo_x -= pad;
  lo_y -= pad;
  hi_x += pad;
  hi_y += pad;

  GridParkResult res;
  double tol = 1e-9;
  for (double vx = lo_x; vx <= hi_x + 1e-12; vx += step) {
    for (double vy = lo_y; vy <= hi_y + 1e-12; vy += step) {
      Vec v(vx, vy);
      if (c.facet_violation(-v) > tol) continue;  // 0 in C+v
      if (!translate_fits(c, b, v, tol)) continue;
      res.feasible = true;
      res.witness = v;
      return res;
    }
  }
  return res;
}

double line_penetration_dense(const ConvexBody& b, const Vec& p, const Vec& d, int samples) {
  double span = 2.0 * b.diameter;
  double worst = 0.0;
  for (int k = 0; k <= samples; ++k) {
    double t = -span + 2.0 * span * k / samples;
    worst = std::max(worst, -b.facet_violation(p + t * d));
  }
  return worst;
}

bool supports_section_boundary_dense(const ConvexBody& b, const std::vector<Vec>& boundary,
                                     const Vec& w, double depth_tol) {
  for (const Vec& p : boundary)
    if (line_penetration_dense(b, p, w) > depth_tol) return false;
  return true;
}

double coverage_gap(const std::vector<Vec>& points, int dim, int probes) {
  double worst = 0.0;
  for (const Vec& u : unit_directions(dim, probes)) {
    double best = 1e300;
    for (const Vec& p : points) best = std::min(best, angle_between(u, p));
    worst = std::max(worst, best);
  }
  return worst;
}

double max_support_difference(const ConvexBody& a, const ConvexBody& b, int dirs) {
  double worst = 0.0;
  for (const Vec& u : unit_directions(a.dim, dirs))
    worst = std::max(worst, std::fabs(a.support(u) - b.support(u)));
  return worst;
}

}  // namespace parkable::oracles
