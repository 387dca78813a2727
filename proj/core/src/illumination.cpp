#include "parkable/illumination.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "parkable/sampling.hpp"

namespace parkable {

namespace {

double point_segment_distance(const Vec& p, const Vec& a, const Vec& b) {
  Vec ab = b - a;
  double l2 = norm2(ab);
  if (l2 < 1e-30) return distance(p, a);
  double t = std::clamp(dot(p - a, ab) / l2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

// Distance to a planar convex polygon in 3D (vertex loop).
double point_polygon_distance(const Vec& p, const std::vector<Vec>& loop, const Vec& n) {
  if (loop.size() == 1) return distance(p, loop[0]);
  if (loop.size() == 2) return point_segment_distance(p, loop[0], loop[1]);
  Vec foot = p - dot(p - loop[0], n) * n;
  bool inside = true;
  int m = static_cast<int>(loop.size());
  for (int i = 0; i < m; ++i) {
    Vec e = loop[(i + 1) % m] - loop[i];
    if (dot(cross(e, foot - loop[i]), n) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return std::fabs(dot(p - loop[0], n));
  double best = 1e300;
  for (int i = 0; i < m; ++i)
    best = std::min(best, point_segment_distance(p, loop[i], loop[(i + 1) % m]));
  return best;
}

}  // namespace

Silhouette silhouette(const ConvexBody& b, const Vec& direction, const Tolerances& tol) {
  if (!b.is_body()) throw std::invalid_argument("silhouette requires a full-dimensional body");
  Vec d = normalized(direction);
  Silhouette sil;
  sil.direction = d;
  sil.chart.base = Vec::zero(b.dim);
  sil.chart.directions = orthonormal_complement({d}, b.dim);
  sil.shadow = project(b, sil.chart);

  double band = tol.silhouette_band_rel * std::max(b.diameter, 1e-12);
  auto in_band = [&](const Vec& ambient) {
    // Depth inside the shadow polygon equals minus the facet violation.
    return sil.shadow.facet_violation(sil.chart.to_chart(ambient)) >= -band;
  };

  std::vector<char> vflag(b.vertices.size(), 0);
  for (size_t i = 0; i < b.vertices.size(); ++i) {
    if (in_band(b.vertices[i])) {
      vflag[i] = 1;
      sil.vertex_ids.push_back(static_cast<int>(i));
    }
  }
  for (const auto& [i, j] : b.edges) {
    if (vflag[i] && vflag[j] && in_band(0.5 * (b.vertices[i] + b.vertices[j])))
      sil.edge_list.emplace_back(i, j);
  }
  for (size_t f = 0; f < b.facets.size(); ++f) {
    const Facet& facet = b.facets[f];
    if (facet.span_pair || facet.vertex_ids.size() < 3) continue;
    bool all = in_band(b.facet_centroid(static_cast<int>(f)));
    for (int id : facet.vertex_ids)
      all = all && vflag[id];
    int m = static_cast<int>(facet.vertex_ids.size());
    for (int i = 0; all && i < m; ++i) {
      Vec mid = 0.5 * (b.vertices[facet.vertex_ids[i]] + b.vertices[facet.vertex_ids[(i + 1) % m]]);
      all = in_band(mid);
    }
    if (all) sil.facet_ids.push_back(static_cast<int>(f));
  }
  return sil;
}

double distance_to_silhouette(const Silhouette& sil, const ConvexBody& b, const Vec& p) {
  double best = 1e300;
  for (int id : sil.vertex_ids) best = std::min(best, distance(p, b.vertices[id]));
  for (const auto& [i, j] : sil.edge_list)
    best = std::min(best, point_segment_distance(p, b.vertices[i], b.vertices[j]));
  for (int f : sil.facet_ids)
    best = std::min(best, point_polygon_distance(p, b.facet_polygon(f), b.facets[f].normal));
  return best;
}

namespace {

// Boundary samples of a plane section through the body, ambient coordinates.
std::vector<Vec> section_boundary_samples(const SectionResult& sec) {
  std::vector<Vec> out;
  const ConvexBody& poly = sec.body;
  for (const Vec& v : poly.vertices) out.push_back(sec.chart.from_chart(v));
  for (const auto& [i, j] : poly.edges)
    out.push_back(sec.chart.from_chart(0.5 * (poly.vertices[i] + poly.vertices[j])));
  return out;
}

// Penetration of the full line p + t d into the interior of B: max depth
// below the facet system over interior quantiles of the in-body segment.
// Zero for B-supporting lines. Depth is concave along the segment, so a few
// quantiles bound the true maximum within a constant factor.
double line_penetration(const ConvexBody& b, const Vec& p, const Vec& d) {
  double lo = -2.0 * b.diameter, hi = 2.0 * b.diameter;
  for (const Facet& f : b.facets) {
    double a = dot(f.normal, d);
    double r = f.offset - dot(f.normal, p);
    if (a > 1e-12)
      hi = std::min(hi, r / a);
    else if (a < -1e-12)
      lo = std::max(lo, r / a);
    else if (r < 0.0)
      return 0.0;  // line on the far side of a parallel facet
  }
  if (lo >= hi) return 0.0;
  double worst = 0.0;
  for (int k = 1; k <= 7; ++k) {
    double t = lo + (hi - lo) * k / 8.0;
    worst = std::max(worst, -b.facet_violation(p + t * d));
  }
  return std::max(0.0, worst);
}

struct PlaneEval {
  double residual = 1e300;
  bool valid = false;
};

// Supporting-line defect of a candidate plane: every boundary point of the
// section must lie on a line of direction d avoiding the interior. The
// defect is normalized by the section width so that sliver sections hugging
// a single silhouette edge cannot fake a small residual.
PlaneEval eval_plane(const ConvexBody& b, const Vec& d, const Vec& n, double off,
                     const Tolerances& tol) {
  PlaneEval ev;
  SectionResult sec = section(b, AffineSubspace::hyperplane(n, off), tol);
  if (sec.empty || sec.degenerate) return ev;
  ev.valid = true;
  double width = 2.0 * sec.body.inradius_lower_bound();
  double worst = 0.0;
  for (const Vec& p : section_boundary_samples(sec))
    worst = std::max(worst, line_penetration(b, p, d));
  ev.residual = worst / std::max(width, 1e-12);
  return ev;
}

}  // namespace

WeakBlaschkeResult weak_blaschke_test(const ConvexBody& b, const Vec& direction,
                                      const PlaneSearchBudget& budget, const Tolerances& tol) {
  Silhouette sil = silhouette(b, direction, tol);

  // Anchor cloud: silhouette vertices, edge midpoints and facet corners.
  std::vector<Vec> anchors;
  for (int id : sil.vertex_ids) anchors.push_back(b.vertices[id]);
  for (const auto& [i, j] : sil.edge_list)
    anchors.push_back(0.5 * (b.vertices[i] + b.vertices[j]));
  for (int f : sil.facet_ids) anchors.push_back(b.facet_centroid(f));
  if (anchors.empty()) throw std::runtime_error("empty silhouette");

  Vec c0 = Vec::zero(b.dim);
  for (const Vec& a : anchors) c0 += a;
  c0 *= 1.0 / static_cast<double>(anchors.size());

  Eigen::Matrix3d mom = Eigen::Matrix3d::Zero();
  for (const Vec& a : anchors) {
    Vec r = a - c0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mom(i, j) += r[i] * r[j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(mom);
  Vec ls_normal = Vec::zero(3);
  for (int i = 0; i < 3; ++i) ls_normal[i] = es.eigenvectors().col(0)(i);
  ls_normal = normalized(ls_normal);

  WeakBlaschkeResult best;
  best.residual = 1e300;
  int evals = 0;

  auto try_plane = [&](Vec n, double off) {
    n = normalized(n);
    PlaneEval ev = eval_plane(b, sil.direction, n, off, tol);
    ++evals;
    if (ev.valid && ev.residual < best.residual) {
      best.residual = ev.residual;
      best.plane_normal = n;
      best.plane_offset = off;
    }
  };

  // Seeds: least-squares plane, the direction plane, silhouette vertex triples.
  std::vector<std::pair<Vec, double>> seeds;
  seeds.emplace_back(ls_normal, dot(ls_normal, c0));
  seeds.emplace_back(sil.direction, dot(sil.direction, c0));
  int nv = static_cast<int>(sil.vertex_ids.size());
  for (int s = 2; s < budget.seeds && nv >= 3; ++s) {
    int a = (s * 7919) % nv;
    int bb = (a + 1 + (s * 104729) % (nv - 1)) % nv;
    int cc = (a + 1 + (s * 611953) % (nv - 1)) % nv;
    if (bb == cc) cc = (cc + 1) % nv;
    if (a == bb || a == cc) continue;
    const Vec &pa = b.vertices[sil.vertex_ids[a]], &pb = b.vertices[sil.vertex_ids[bb]],
              &pc = b.vertices[sil.vertex_ids[cc]];
    Vec n = cross(pb - pa, pc - pa);
    if (norm(n) < 1e-12) continue;
    n = normalized(n);
    seeds.emplace_back(n, dot(n, (pa + pb + pc) * (1.0 / 3.0)));
  }

  double step0 = 0.1;
  for (const auto& [n0, off0] : seeds) {
    try_plane(n0, off0);
    if (best.residual <= 0.8 * tol.blaschke_tol) break;

    // Pattern descent over (normal tilt, offset).
    Vec n = normalized(n0);
    double off = off0;
    double step = step0;
    PlaneEval cur = eval_plane(b, sil.direction, n, off, tol);
    ++evals;
    double cur_res = cur.valid ? cur.residual : 1e300;
    for (int it = 0; it < budget.iterations; ++it) {
      std::vector<Vec> frame = orthonormal_complement({n}, 3);
      bool improved = false;
      Vec best_n = n;
      double best_off = off, best_res = cur_res;
      for (int mv = 0; mv < 6; ++mv) {
        Vec cn = n;
        double coff = off;
        if (mv < 4) {
          cn = normalized(n + (mv % 2 ? -step : step) * frame[mv / 2]);
        } else {
          coff += (mv % 2 ? -step : step) * b.diameter * 0.5;
        }
        PlaneEval ev = eval_plane(b, sil.direction, cn, coff, tol);
        ++evals;
        if (ev.valid && ev.residual < best_res - 1e-12) {
          best_res = ev.residual;
          best_n = cn;
          best_off = coff;
          improved = true;
        }
      }
      if (improved) {
        n = best_n;
        off = best_off;
        cur_res = best_res;
        if (cur_res < best.residual) {
          best.residual = cur_res;
          best.plane_normal = n;
          best.plane_offset = off;
        }
        if (best.residual <= 0.8 * tol.blaschke_tol) break;
      } else {
        step *= 0.6;
        if (step < 1e-4) break;
      }
    }
    if (best.residual <= 0.8 * tol.blaschke_tol) break;
  }

  best.planes_evaluated = evals;
  best.verdict = best.residual <= tol.blaschke_tol;
  return best;
}

ConeSet supporting_cone(const ConvexBody& b, const Vec& v, const Tolerances& tol,
                        int n_candidates) {
  if (b.dim != 3) throw std::invalid_argument("supporting cone requires dimension 3");
  double scale = 1.0 + b.diameter;
  if (b.facet_violation(Vec::zero(3)) > -tol.eps_geom * scale)
    throw std::invalid_argument("origin must be interior");
  Vec vn = normalized(v);

  SectionResult sec = section(b, AffineSubspace::hyperplane(vn, 0.0), tol);
  if (sec.empty || sec.degenerate) throw std::runtime_error("degenerate central section");

  std::vector<Vec> samples = section_boundary_samples(sec);
  double travel = tol.support_travel_rel * std::max(b.diameter, 1e-12);
  double face_tol = 1e-7 * scale;

  // Near-active facets per sample point; only they can bound travel <= band.
  struct NearFacet {
    Vec n;
    double slack;
  };
  std::vector<std::vector<NearFacet>> near(samples.size());
  std::set<int> belt;
  for (size_t s = 0; s < samples.size(); ++s) {
    for (size_t f = 0; f < b.facets.size(); ++f) {
      double slack = b.facets[f].offset - dot(b.facets[f].normal, samples[s]);
      if (slack <= travel) {
        near[s].push_back({b.facets[f].normal, slack});
        belt.insert(static_cast<int>(f));
      }
    }
    if (near[s].empty()) throw std::logic_error("sample point not on the boundary");
  }

  // A full line through p with direction w avoids the interior iff travel
  // inside B is bounded on both rays, or w lies in an incident facet plane.
  auto supports_at = [&](const Vec& w, size_t s) {
    bool fwd = false, bwd = false;
    for (const NearFacet& nf : near[s]) {
      if (nf.slack <= face_tol && std::fabs(dot(nf.n, w)) <= tol.support_dir_tol) return true;
      double a = dot(nf.n, w);
      if (a > 1e-12 && nf.slack <= travel * a) fwd = true;
      if (a < -1e-12 && nf.slack <= travel * (-a)) bwd = true;
    }
    return fwd && bwd;
  };
  auto supports_everywhere = [&](const Vec& w) {
    for (size_t s = 0; s < samples.size(); ++s)
      if (!supports_at(w, s)) return false;
    return true;
  };

  // Candidate directions: +-v, cross products of belt facet normal pairs
  // (exact solutions of the orthogonality conditions), and a lattice.
  std::vector<Vec> cands;
  cands.push_back(vn);
  std::vector<Vec> belt_normals;
  {
    std::vector<int> belt_ids(belt.begin(), belt.end());
    size_t stride = std::max<size_t>(1, belt_ids.size() / 40);
    for (size_t k = 0; k < belt_ids.size(); k += stride)
      belt_normals.push_back(b.facets[belt_ids[k]].normal);
  }
  for (size_t i = 0; i < belt_normals.size(); ++i)
    for (size_t j = i + 1; j < belt_normals.size(); ++j) {
      Vec c = cross(belt_normals[i], belt_normals[j]);
      if (norm(c) > 1e-9) cands.push_back(normalized(c));
    }
  for (const Vec& u : fibonacci_sphere(n_candidates)) cands.push_back(u);

  ConeSet cone;
  for (const Vec& w0 : cands) {
    for (const Vec& w : {w0, -w0}) {
      if (dot(w, vn) <= 1e-9) continue;
      if (supports_everywhere(w)) cone.generators.push_back(w);
    }
  }
  return cone;
}

DualBlaschkeCheck dual_blaschke_check(const ConvexBody& b, int n_dirs, const Tolerances& tol) {
  DualBlaschkeCheck out;
  for (const Vec& v : fibonacci_sphere(n_dirs)) {
    ++out.tested;
    ConeSet cone = supporting_cone(b, v, tol);
    if (cone.empty()) out.empty_directions.push_back(v);
  }
  out.all_nonempty = out.empty_directions.empty();
  return out;
}

}  // namespace parkable
