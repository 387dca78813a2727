#include "parkable/parkability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parkable/sampling.hpp"
#include "parkable/symmetry.hpp"

namespace parkable {

namespace {

std::vector<Halfspace> park_system(const ConvexBody& c, const ConvexBody& b) {
  std::vector<Halfspace> hs;
  // v in -C  <=>  0 in C + v.
  ConvexBody neg = c.negated();
  for (const Facet& f : neg.facets) hs.push_back({f.normal, f.offset});
  // v in B (-) C  <=>  C + v inside B.
  for (const Facet& f : b.facets) hs.push_back({f.normal, f.offset - c.support(f.normal)});
  return hs;
}

bool candidate_ok(const ConvexBody& c, const ConvexBody& b, const Vec& v, double tol) {
  if (c.facet_violation(-v) > tol) return false;  // 0 in C + v
  for (const Vec& vx : c.vertices)
    if (b.facet_violation(vx + v) > tol) return false;
  return true;
}

// Feasible-translation polytope from the anchored system; falls back to a
// facet-only body when vertex enumeration would be too large.
ConvexBody feasible_set_body(const std::vector<Halfspace>& hs, const Vec& anchor, int dim,
                             const HullOptions& hull_opt) {
  try {
    auto fs = body_from_halfspaces(hs, dim, hull_opt);
    if (fs) return fs->translated(anchor);
  } catch (const std::runtime_error&) {
    // enumeration too large; fall through to the facet representation
  }
  ConvexBody out;
  out.dim = dim;
  out.affine_dim = dim;
  out.hrep_only = true;
  out.span = AffineSubspace::full(dim);
  for (const Halfspace& h : hs) {
    Facet f;
    f.normal = h.normal;
    f.offset = h.offset + dot(h.normal, anchor);
    out.facets.push_back(std::move(f));
  }
  return out;
}

// Support-midpoint point of C, projected onto its affine span: the symmetry
// center for symmetric bodies and a deep interior point otherwise. A sharper
// parking candidate than the vertex centroid.
Vec support_midpoint(const ConvexBody& c) {
  Vec p = Vec::zero(c.dim);
  for (int i = 0; i < c.dim; ++i) {
    Vec e = Vec::axis(c.dim, i);
    p[i] = 0.5 * (c.support(e) - c.support(-e));
  }
  if (c.flat()) p = c.span.from_chart(c.span.to_chart(p));
  return p;
}

}  // namespace

ParkResult park(const ConvexBody& c, const ConvexBody& b, const ParkOptions& opt) {
  if (c.dim != b.dim) throw std::invalid_argument("dimension mismatch");
  double scale = 1.0 + b.diameter + norm(b.vertex_centroid) + norm(c.vertex_centroid);
  double tol = opt.tol.eps_geom * scale;
  if (!b.contains(Vec::zero(b.dim), 10.0 * tol))
    throw std::invalid_argument("B must contain the origin");

  // Solve for w in v = anchor + w with anchor = -centroid(C). The feasible
  // region sits near the anchor, so the solvers see O(diameter) coordinates
  // even when C is a far translate.
  Vec anchor = -c.vertex_centroid;
  std::vector<Halfspace> hs = park_system(c, b);
  for (Halfspace& h : hs) h.offset -= dot(h.normal, anchor);
  int m = static_cast<int>(hs.size());
  bool small = b.dim <= 2 || m <= opt.hull.max_enumeration_facets;

  ParkResult res;
  if (small) {
    std::optional<ConvexBody> fs = body_from_halfspaces(hs, b.dim, opt.hull);
    if (!fs) {
      FeasibilityResult fr = lp_feasible(hs, b.dim, opt.tol.eps_lp);
      res.feasible = fr.feasible();  // enumeration can miss knife-edge regions
      res.margin = fr.margin;
      if (fr.feasible()) res.witness = anchor + *fr.witness;
      return res;
    }
    res.feasible = true;
    res.witness = anchor + fs->vertex_centroid;
    if (opt.want_feasible_set) res.feasible_set = fs->translated(anchor);
    return res;
  }

  // Large system: candidate translates settle most feasible queries without
  // touching the LP. The support midpoint lands on the symmetry center of
  // symmetric sections; the vertex centroid backs it up.
  Vec mid_candidate = -support_midpoint(c);
  for (const Vec& cand : {mid_candidate, anchor}) {
    if (candidate_ok(c, b, cand, tol)) {
      res.feasible = true;
      res.witness = cand;
      if (opt.want_feasible_set)
        res.feasible_set = feasible_set_body(hs, anchor, b.dim, opt.hull);
      return res;
    }
  }

  FeasibilityResult fr = lp_feasible_fast(hs, b.dim, opt.tol.eps_lp);
  res.feasible = fr.feasible();
  res.margin = fr.margin;
  if (fr.feasible()) {
    res.witness = anchor + *fr.witness;
    if (opt.want_feasible_set)
      res.feasible_set = feasible_set_body(hs, anchor, b.dim, opt.hull);
  }
  return res;
}

ConvexBody symmetric_hull(const ConvexBody& c, const Vec& u, const HullOptions& opt) {
  if (u.dim != c.dim) throw std::invalid_argument("dimension mismatch");
  std::vector<Vec> pts;
  pts.reserve(2 * c.vertices.size());
  for (const Vec& v : c.vertices) {
    pts.push_back(v + u);
    pts.push_back(-(v + u));
  }
  return convex_hull(pts, opt);
}

double default_park_radius(const ConvexBody& c) {
  double max_norm = 0.0;
  for (const Vec& v : c.vertices) max_norm = std::max(max_norm, norm(v));
  return 2.0 * (max_norm + c.diameter);
}

UniversalParkReport universal_parkability(const ConvexBody& c, double radius, int n_dirs,
                                          const ParkOptions& opt) {
  double max_norm = 0.0;
  for (const Vec& v : c.vertices) max_norm = std::max(max_norm, norm(v));
  double required = max_norm + c.diameter;
  if (radius <= required)
    throw std::invalid_argument("sphere radius too small; need radius > " +
                                std::to_string(required));

  UniversalParkReport rep;
  for (const Vec& dir : unit_directions(c.dim, n_dirs)) {
    Vec u = dir * radius;
    ConvexBody cu = c.translated(u);
    ConvexBody hull = symmetric_hull(c, u, opt.hull);
    ++rep.tested;
    ParkResult pr = park(cu, hull, opt);
    if (!pr.feasible) {
      rep.pass = false;
      rep.witness_u = u;
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

DirectionSample park_direction(const ConvexBody& c, const Vec& u, const ParkOptions& opt) {
  ConvexBody cu = c.translated(u);
  double scale = 1.0 + norm(u) + c.diameter;
  if (cu.facet_violation(Vec::zero(c.dim)) <= opt.tol.eps_geom * scale)
    throw std::invalid_argument("translate already contains the origin");
  ConvexBody hull = symmetric_hull(c, u, opt.hull);

  ParkOptions po = opt;
  po.want_feasible_set = true;
  ParkResult pr = park(cu, hull, po);
  if (!pr.feasible) throw std::runtime_error("translate is not parkable");

  std::vector<Vec> verts;
  if (pr.feasible_set && !pr.feasible_set->hrep_only) {
    verts = pr.feasible_set->vertices;
  } else {
    // Feasible set too large to enumerate: sample extreme points instead.
    Vec anchor = -cu.vertex_centroid;
    std::vector<Halfspace> hs = park_system(cu, hull);
    for (Halfspace& h : hs) h.offset -= dot(h.normal, anchor);
    for (const Vec& obj : unit_directions(c.dim, 12)) {
      auto x = lp_maximize(hs, obj, opt.tol.eps_lp);
      if (x) verts.push_back(anchor + *x);
    }
  }
  if (verts.empty()) verts.push_back(*pr.witness);

  Vec centroid = Vec::zero(c.dim);
  for (const Vec& v : verts) centroid += v;
  centroid *= 1.0 / static_cast<double>(verts.size());

  DirectionSample out;
  out.u = u;
  out.direction = normalized(centroid);
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j) {
      if (norm(verts[i]) < 1e-12 || norm(verts[j]) < 1e-12) continue;
      out.uniqueness_residual =
          std::max(out.uniqueness_residual, angle_between(verts[i], verts[j]));
    }
  return out;
}

double park_direction_projection_residual(const ConvexBody& c, const Vec& u,
                                          const ParkOptions& opt) {
  DirectionSample ds = park_direction(c, u, opt);
  AffineSubspace plane;
  plane.base = Vec::zero(c.dim);
  plane.directions = orthonormal_complement({ds.direction}, c.dim);
  ConvexBody proj = project(c.translated(u), plane, opt.hull);
  SymmetryReport rep = symmetry_center(proj, opt.tol, 256);
  return rep.residual;
}

SectionParkabilityScan section_parkability_scan(const ConvexBody& b, int n_dirs,
                                                const std::vector<double>& offsets,
                                                const ParkOptions& opt) {
  double scale = 1.0 + b.diameter;
  if (b.facet_violation(Vec::zero(b.dim)) > -opt.tol.eps_geom * scale)
    throw std::invalid_argument("origin must be interior");

  SectionParkabilityScan scan;
  for (const Vec& u : unit_directions(b.dim, n_dirs)) {
    double h_plus = b.support(u);
    double h_minus = b.support(-u);
    for (double f : offsets) {
      double s = f >= 0.0 ? f * h_plus : f * h_minus;
      SectionResult sec = section(b, AffineSubspace::hyperplane(u, s), opt.tol);
      if (sec.empty || sec.degenerate) {
        ++scan.degenerate_skipped;
        continue;
      }
      ++scan.sections_tested;
      ConvexBody embedded = embed_in_ambient(sec.body, sec.chart, opt.hull);
      ParkResult pr = park(embedded, b, opt);
      if (!pr.feasible) scan.failures.push_back({u, f});
    }
  }
  scan.pass = scan.failures.empty();
  return scan;
}

}  // namespace parkable
