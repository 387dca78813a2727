#include "parkable/body.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "parkable/sampling.hpp"

namespace parkable {

namespace {

double coord_scale(const std::vector<Vec>& pts) {
  double m = 0.0;
  for (const Vec& p : pts)
    for (int i = 0; i < p.dim; ++i) m = std::max(m, std::fabs(p.c[i]));
  return 1.0 + m;
}

// ---------------------------------------------------------------------------
// 2D hull: monotone chain over chart points. Returns CCW corner ids.
// Near-collinear points are dropped (minimal vertex set); the collinearity
// test is scaled by the local edge lengths so far translates keep their
// small features.
std::vector<int> hull_2d(const std::vector<Vec>& pts, double eps_rel = 1e-7) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return lex_less(pts[a], pts[b]); });

  auto build = [&](bool lower) {
    std::vector<int> chain;
    for (size_t k = 0; k < idx.size(); ++k) {
      int i = idx[lower ? k : idx.size() - 1 - k];
      while (chain.size() >= 2) {
        const Vec& a = pts[chain[chain.size() - 2]];
        const Vec& b = pts[chain[chain.size() - 1]];
        Vec ab = b - a, bc = pts[i] - b;
        if (cross2(ab, bc) <= eps_rel * norm(ab) * norm(bc))
          chain.pop_back();
        else
          break;
      }
      chain.push_back(i);
    }
    return chain;
  };

  std::vector<int> lower = build(true);
  std::vector<int> upper = build(false);
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  if (lower.empty()) lower.push_back(idx[0]);
  return lower;  // CCW
}

// ---------------------------------------------------------------------------
// 3D incremental hull over chart points (full-dimensional input).
struct Tri {
  int a, b, c;
  Vec n;
  double off;
  bool dead = false;
};

struct Hull3 {
  std::vector<Tri> tris;
  const std::vector<Vec>& p;
  Vec inner;
  double tol;

  Hull3(const std::vector<Vec>& pts, const std::array<int, 4>& tetra, double tol_)
      : p(pts), tol(tol_) {
    inner = (p[tetra[0]] + p[tetra[1]] + p[tetra[2]] + p[tetra[3]]) * 0.25;
    add(tetra[0], tetra[1], tetra[2]);
    add(tetra[0], tetra[1], tetra[3]);
    add(tetra[0], tetra[2], tetra[3]);
    add(tetra[1], tetra[2], tetra[3]);
  }

  void add(int a, int b, int c) {
    Vec n = cross(p[b] - p[a], p[c] - p[a]);
    double ln = norm(n);
    if (ln < 1e-30) return;  // degenerate sliver, ignore
    n *= 1.0 / ln;
    if (dot(n, inner - p[a]) > 0.0) {
      std::swap(b, c);
      n = -n;
    }
    tris.push_back({a, b, c, n, dot(n, p[a]), false});
  }

  void insert(int pid) {
    std::vector<int> visible;
    for (size_t t = 0; t < tris.size(); ++t) {
      if (tris[t].dead) continue;
      if (dot(tris[t].n, p[pid]) > tris[t].off + tol) visible.push_back(static_cast<int>(t));
    }
    if (visible.empty()) return;

    std::set<std::pair<int, int>> directed;
    for (int t : visible) {
      const Tri& tr = tris[t];
      directed.insert({tr.a, tr.b});
      directed.insert({tr.b, tr.c});
      directed.insert({tr.c, tr.a});
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& e : directed)
      if (!directed.count({e.second, e.first})) horizon.push_back(e);
    for (int t : visible) tris[t].dead = true;
    for (const auto& e : horizon) add(e.first, e.second, pid);
  }
};

struct ChartHull {
  std::vector<int> vertex_ids;  // into chart point list
  // facets in chart coordinates; vertex lists index into vertex_ids order
  struct F {
    Vec normal;
    double offset;
    std::vector<int> corners;  // positions within vertex_ids
  };
  std::vector<F> facets;
};

ChartHull chart_hull_1d(const std::vector<Vec>& q) {
  int lo = 0, hi = 0;
  for (size_t i = 1; i < q.size(); ++i) {
    if (q[i].x() < q[lo].x()) lo = static_cast<int>(i);
    if (q[i].x() > q[hi].x()) hi = static_cast<int>(i);
  }
  ChartHull h;
  h.vertex_ids = {lo, hi};
  h.facets.push_back({Vec(1.0), q[hi].x(), {1}});
  h.facets.push_back({Vec(-1.0), -q[lo].x(), {0}});
  return h;
}

ChartHull chart_hull_2d(const std::vector<Vec>& q) {
  std::vector<int> loop = hull_2d(q);
  ChartHull h;
  h.vertex_ids = loop;
  int n = static_cast<int>(loop.size());
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    Vec t = q[loop[j]] - q[loop[i]];
    Vec nrm = normalized(Vec(t.y(), -t.x()));
    double off = std::max(dot(nrm, q[loop[i]]), dot(nrm, q[loop[j]]));
    h.facets.push_back({nrm, off, {i, j}});
  }
  return h;
}

ChartHull chart_hull_3d(const std::vector<Vec>& q, const std::array<int, 4>& tetra,
                        double tol) {
  Hull3 hull(q, tetra, tol);
  std::vector<int> order(q.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(q[a], q[b]); });
  std::set<int> seed(tetra.begin(), tetra.end());
  for (int i : order)
    if (!seed.count(i)) hull.insert(i);

  // Merge coplanar adjacent triangles into facets (union-find).
  std::vector<int> alive;
  for (size_t t = 0; t < hull.tris.size(); ++t)
    if (!hull.tris[t].dead) alive.push_back(static_cast<int>(t));
  std::map<int, int> pos;
  for (size_t k = 0; k < alive.size(); ++k) pos[alive[k]] = static_cast<int>(k);

  std::vector<int> parent(alive.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  double merge_tol = std::max(1e-12, tol * 10.0);
  std::map<std::pair<int, int>, std::vector<int>> edge_tris;
  for (size_t k = 0; k < alive.size(); ++k) {
    const Tri& tr = hull.tris[alive[k]];
    auto reg = [&](int u, int v) {
      auto key = std::minmax(u, v);
      edge_tris[{key.first, key.second}].push_back(static_cast<int>(k));
    };
    reg(tr.a, tr.b);
    reg(tr.b, tr.c);
    reg(tr.c, tr.a);
  }
  auto coplanar = [&](const Tri& s, const Tri& t) {
    if (dot(s.n, t.n) < 0.9) return false;
    for (int v : {t.a, t.b, t.c})
      if (std::fabs(dot(s.n, q[v]) - s.off) > merge_tol) return false;
    return true;
  };
  for (const auto& [e, ts] : edge_tris) {
    if (ts.size() != 2) continue;
    const Tri& s = hull.tris[alive[ts[0]]];
    const Tri& t = hull.tris[alive[ts[1]]];
    if (coplanar(s, t) && coplanar(t, s)) {
      int ra = find(ts[0]), rb = find(ts[1]);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }

  std::map<int, std::vector<int>> groups;
  for (size_t k = 0; k < alive.size(); ++k) groups[find(static_cast<int>(k))].push_back(alive[k]);

  ChartHull h;
  std::map<int, int> vert_pos;  // chart point id -> position in vertex_ids
  for (const auto& [root, tris] : groups) {
    // Area-weighted facet normal; exact for truly coplanar groups.
    Vec nsum = Vec::zero(3);
    std::set<int> vids;
    for (int t : tris) {
      const Tri& tr = hull.tris[t];
      nsum += cross(q[tr.b] - q[tr.a], q[tr.c] - q[tr.a]);
      vids.insert(tr.a);
      vids.insert(tr.b);
      vids.insert(tr.c);
    }
    Vec n = normalized(nsum);
    double off = -std::numeric_limits<double>::infinity();
    for (int v : vids) off = std::max(off, dot(n, q[v]));

    // Corner extraction: 2D hull in the facet chart, oriented CCW around n.
    std::vector<Vec> frame = orthonormal_complement({n}, 3);
    if (dot(cross(frame[0], frame[1]), n) < 0.0) std::swap(frame[0], frame[1]);
    std::vector<Vec> flat;
    std::vector<int> flat_ids(vids.begin(), vids.end());
    for (int v : flat_ids) flat.emplace_back(dot(q[v], frame[0]), dot(q[v], frame[1]));
    std::vector<int> loop = hull_2d(flat);

    ChartHull::F f;
    f.normal = n;
    f.offset = off;
    for (int li : loop) {
      int vid = flat_ids[li];
      auto it = vert_pos.find(vid);
      if (it == vert_pos.end()) {
        vert_pos[vid] = static_cast<int>(h.vertex_ids.size());
        h.vertex_ids.push_back(vid);
        f.corners.push_back(vert_pos[vid]);
      } else {
        f.corners.push_back(it->second);
      }
    }
    h.facets.push_back(std::move(f));
  }
  return h;
}

void finalize(ConvexBody& b) {
  std::set<std::pair<int, int>> es;
  for (const Facet& f : b.facets) {
    if (f.span_pair) continue;
    int n = static_cast<int>(f.vertex_ids.size());
    if (n < 2) continue;
    for (int i = 0; i < n; ++i) {
      int u = f.vertex_ids[i], v = f.vertex_ids[(i + 1) % n];
      if (u == v) continue;
      if (n == 2 && i == 1) break;  // an edge facet lists two endpoints once
      es.insert(std::minmax(u, v));
    }
  }
  b.edges.assign(es.begin(), es.end());

  b.vertex_centroid = Vec::zero(b.dim);
  for (const Vec& v : b.vertices) b.vertex_centroid += v;
  if (!b.vertices.empty()) b.vertex_centroid *= 1.0 / static_cast<double>(b.vertices.size());

  b.diameter = 0.0;
  for (size_t i = 0; i < b.vertices.size(); ++i)
    for (size_t j = i + 1; j < b.vertices.size(); ++j)
      b.diameter = std::max(b.diameter, distance(b.vertices[i], b.vertices[j]));
}

}  // namespace

// ---------------------------------------------------------------------------

double ConvexBody::support(const Vec& u) const {
  if (norm(u) < 1e-14) throw std::invalid_argument("degenerate direction");
  if (u.dim != dim) throw std::invalid_argument("dimension mismatch");
  if (vertices.empty()) throw std::logic_error("support requires a vertex representation");
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& v : vertices) best = std::max(best, dot(v, u));
  return best;
}

std::vector<int> ConvexBody::support_set(const Vec& u, double tol) const {
  double h = support(u);
  std::vector<int> ids;
  for (size_t i = 0; i < vertices.size(); ++i)
    if (dot(vertices[i], u) >= h - tol) ids.push_back(static_cast<int>(i));
  return ids;
}

bool ConvexBody::contains(const Vec& x, double tol) const {
  return facet_violation(x) <= tol;
}

double ConvexBody::facet_violation(const Vec& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Facet& f : facets) worst = std::max(worst, dot(f.normal, x) - f.offset);
  return worst;
}

ConvexBody ConvexBody::translated(const Vec& t) const {
  ConvexBody b = *this;
  for (Vec& v : b.vertices) v += t;
  for (Facet& f : b.facets) f.offset += dot(f.normal, t);
  b.span.base += t;
  b.vertex_centroid += t;
  return b;
}

ConvexBody ConvexBody::negated() const {
  ConvexBody b = *this;
  for (Vec& v : b.vertices) v = -v;
  for (Facet& f : b.facets) {
    f.normal = -f.normal;
    std::reverse(f.vertex_ids.begin(), f.vertex_ids.end());
  }
  b.span.base = -b.span.base;
  for (Vec& d : b.span.directions) d = -d;
  b.vertex_centroid = -b.vertex_centroid;
  return b;
}

std::vector<Vec> ConvexBody::facet_polygon(int facet_id) const {
  const Facet& f = facets[facet_id];
  std::vector<Vec> poly;
  poly.reserve(f.vertex_ids.size());
  for (int id : f.vertex_ids) poly.push_back(vertices[id]);
  return poly;
}

Vec ConvexBody::facet_centroid(int facet_id) const {
  const Facet& f = facets[facet_id];
  Vec c = Vec::zero(dim);
  for (int id : f.vertex_ids) c += vertices[id];
  if (!f.vertex_ids.empty()) c *= 1.0 / static_cast<double>(f.vertex_ids.size());
  return c;
}

double ConvexBody::inradius_lower_bound() const {
  double r = std::numeric_limits<double>::infinity();
  for (const Facet& f : facets) {
    if (f.span_pair) continue;
    r = std::min(r, f.offset - dot(f.normal, vertex_centroid));
  }
  return std::isfinite(r) ? r : 0.0;
}

// ---------------------------------------------------------------------------

ConvexBody convex_hull(const std::vector<Vec>& points, const HullOptions& opt) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  int dim = points[0].dim;
  for (const Vec& p : points) {
    if (p.dim != dim) throw std::invalid_argument("dimension mismatch");
    if (!is_finite(p)) throw std::invalid_argument("non-finite point");
  }
  if (dim < 1 || dim > 3) throw std::invalid_argument("unsupported dimension");

  double scale = coord_scale(points);
  double tol = opt.eps * scale;

  // Deduplicate, then sort for a canonical processing order.
  std::vector<Vec> pts;
  for (const Vec& p : points) {
    bool dup = false;
    for (const Vec& q : pts)
      if (distance(p, q) <= tol) {
        dup = true;
        break;
      }
    if (!dup) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end(), lex_less);

  // Affine basis by greedy farthest-point selection.
  Vec base = pts[0];
  std::vector<Vec> dirs;
  std::array<int, 4> frame_ids{0, -1, -1, -1};
  while (static_cast<int>(dirs.size()) < dim) {
    int best = -1;
    double best_res = 10.0 * tol;
    for (size_t i = 0; i < pts.size(); ++i) {
      Vec r = pts[i] - base;
      for (const Vec& d : dirs) r -= dot(r, d) * d;
      double res = norm(r);
      if (res > best_res) {
        best_res = res;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    Vec r = pts[best] - base;
    for (const Vec& d : dirs) r -= dot(r, d) * d;
    for (const Vec& d : dirs) r -= dot(r, d) * d;
    dirs.push_back(normalized(r));
    frame_ids[dirs.size()] = best;
  }
  int adim = static_cast<int>(dirs.size());

  AffineSubspace chart;
  chart.base = base;
  chart.directions = dirs;

  std::vector<Vec> q(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) q[i] = chart.to_chart(pts[i]);

  ChartHull ch;
  if (adim == 0) {
    ch.vertex_ids = {0};
  } else if (adim == 1) {
    ch = chart_hull_1d(q);
  } else if (adim == 2) {
    ch = chart_hull_2d(q);
  } else {
    std::array<int, 4> tetra{0, frame_ids[1], frame_ids[2], frame_ids[3]};
    ch = chart_hull_3d(q, tetra, tol);
  }

  ConvexBody b;
  b.dim = dim;
  b.affine_dim = adim;
  for (int id : ch.vertex_ids) b.vertices.push_back(pts[id]);

  // Span equalities for flat bodies.
  for (const Vec& m : orthonormal_complement(dirs, dim)) {
    double d0 = dot(m, base);
    Facet f1;
    f1.normal = m;
    f1.offset = d0;
    f1.span_pair = true;
    Facet f2;
    f2.normal = -m;
    f2.offset = -d0;
    f2.span_pair = true;
    b.facets.push_back(f1);
    b.facets.push_back(f2);
  }

  // Lift chart facets to ambient halfspaces.
  for (const ChartHull::F& f : ch.facets) {
    Facet g;
    Vec n = Vec::zero(dim);
    for (int j = 0; j < adim; ++j) n += f.normal[j] * dirs[j];
    g.normal = n;
    g.offset = f.offset + dot(n, base);
    g.vertex_ids = f.corners;
    b.facets.push_back(std::move(g));
  }

  // Chart of the affine hull (span); reuse the detection frame.
  b.span = chart;

  finalize(b);
  return b;
}

std::vector<Halfspace> halfspaces_of(const ConvexBody& b) {
  std::vector<Halfspace> hs;
  hs.reserve(b.facets.size());
  for (const Facet& f : b.facets) hs.push_back({f.normal, f.offset});
  return hs;
}

std::optional<ConvexBody> body_from_halfspaces(const std::vector<Halfspace>& hs_in, int dim,
                                               const HullOptions& opt) {
  // Normalize and drop vacuous rows.
  std::vector<Halfspace> hs;
  for (const Halfspace& h : hs_in) {
    double len = norm(h.normal);
    if (len < 1e-13) {
      if (h.offset < -1e-12) return std::nullopt;
      continue;
    }
    hs.push_back({h.normal * (1.0 / len), h.offset / len});
  }
  // Keep the tightest offset among (near-)identical normals.
  std::sort(hs.begin(), hs.end(), [](const Halfspace& a, const Halfspace& b) {
    return lex_less(a.normal, b.normal) || (!lex_less(b.normal, a.normal) && a.offset < b.offset);
  });
  std::vector<Halfspace> uniq;
  for (const Halfspace& h : hs) {
    if (!uniq.empty() && distance(uniq.back().normal, h.normal) < 1e-12) {
      uniq.back().offset = std::min(uniq.back().offset, h.offset);
      continue;
    }
    uniq.push_back(h);
  }
  hs = std::move(uniq);
  int m = static_cast<int>(hs.size());
  if (m == 0) throw std::invalid_argument("unbounded halfspace system");

  // Opposing near-antipodal pairs pin the region to an affine subspace that
  // triple intersections cannot resolve. Reduce to a chart of that subspace
  // and enumerate there.
  double off_scale = 1.0;
  for (const Halfspace& h : hs) off_scale = std::max(off_scale, std::fabs(h.offset));
  double eq_tol = 1e-7 * off_scale;
  std::vector<Halfspace> equalities;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (norm(hs[i].normal + hs[j].normal) > 1e-9) continue;
      double slack = hs[i].offset + hs[j].offset;
      if (slack < -eq_tol) return std::nullopt;  // opposing halfspaces exclude each other
      if (slack <= eq_tol) equalities.push_back(hs[i]);
    }
  if (!equalities.empty()) {
    // Orthonormalize the equality system, carrying offsets.
    std::vector<Vec> ebasis;
    std::vector<double> eoffs;
    for (const Halfspace& e : equalities) {
      Vec r = e.normal;
      double c = e.offset;
      for (int rep = 0; rep < 2; ++rep)
        for (size_t k = 0; k < ebasis.size(); ++k) {
          double t = dot(r, ebasis[k]);
          r -= t * ebasis[k];
          c -= t * eoffs[k];
        }
      double len = norm(r);
      if (len > 1e-9) {
        ebasis.push_back(r * (1.0 / len));
        eoffs.push_back(c / len);
      } else if (std::fabs(c) > eq_tol) {
        return std::nullopt;  // inconsistent equalities
      }
    }
    Vec x0 = Vec::zero(dim);
    for (size_t k = 0; k < ebasis.size(); ++k) x0 += eoffs[k] * ebasis[k];
    std::vector<Vec> chart_dirs = orthonormal_complement(ebasis, dim);
    int rdim = static_cast<int>(chart_dirs.size());
    if (rdim == 0) {
      for (const Halfspace& h : hs)
        if (dot(h.normal, x0) - h.offset > 1e-8 + 1e-10 * std::fabs(h.offset))
          return std::nullopt;
      return convex_hull({x0}, opt);
    }
    std::vector<Halfspace> reduced;
    for (const Halfspace& h : hs) {
      Vec nc = Vec::zero(rdim);
      for (int j = 0; j < rdim; ++j) nc[j] = dot(h.normal, chart_dirs[j]);
      double b = h.offset - dot(h.normal, x0);
      if (norm(nc) < 1e-11) {
        if (b < -eq_tol) return std::nullopt;
        continue;
      }
      reduced.push_back({nc, b});
    }
    auto sub = body_from_halfspaces(reduced, rdim, opt);
    if (!sub) return std::nullopt;
    std::vector<Vec> ambient;
    ambient.reserve(sub->vertices.size());
    for (const Vec& v : sub->vertices) {
      Vec p = x0;
      for (int j = 0; j < rdim; ++j) p += v[j] * chart_dirs[j];
      ambient.push_back(p);
    }
    return convex_hull(ambient, opt);
  }

  if (dim == 3 && m > opt.max_enumeration_facets)
    throw std::runtime_error("halfspace enumeration too large");

  auto feas_tol = [&](int i) { return 1e-8 + 1e-10 * std::fabs(hs[i].offset); };
  auto feasible = [&](const Vec& x) {
    for (int i = 0; i < m; ++i)
      if (dot(hs[i].normal, x) - hs[i].offset > feas_tol(i)) return false;
    return true;
  };

  std::vector<Vec> cand;
  if (dim == 1) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const Halfspace& h : hs) {
      double a = h.normal.x();
      if (a > 0)
        hi = std::min(hi, h.offset / a);
      else
        lo = std::max(lo, h.offset / a);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw std::invalid_argument("unbounded halfspace system");
    if (lo > hi + 1e-9) return std::nullopt;
    cand.emplace_back(lo);
    cand.emplace_back(hi);
  } else if (dim == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        double det = cross2(hs[i].normal, hs[j].normal);
        if (std::fabs(det) < 1e-12) continue;
        double x = (hs[i].offset * hs[j].normal.y() - hs[j].offset * hs[i].normal.y()) / det;
        double y = (hs[i].normal.x() * hs[j].offset - hs[j].normal.x() * hs[i].offset) / det;
        Vec p(x, y);
        if (is_finite(p) && feasible(p)) cand.push_back(p);
      }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          const Vec &a = hs[i].normal, &b = hs[j].normal, &c = hs[k].normal;
          double det = dot(a, cross(b, c));
          if (std::fabs(det) < 1e-10) continue;
          Vec p = (cross(b, c) * hs[i].offset + cross(c, a) * hs[j].offset +
                   cross(a, b) * hs[k].offset) *
                  (1.0 / det);
          if (is_finite(p) && feasible(p)) cand.push_back(p);
        }
  }
  if (cand.empty()) return std::nullopt;
  return convex_hull(cand, opt);
}

ConvexBody project(const ConvexBody& b, const AffineSubspace& s, const HullOptions& opt) {
  if (!s.is_linear(1e-9)) throw std::invalid_argument("projection subspace must be linear");
  if (s.ambient_dim() != b.dim) throw std::invalid_argument("dimension mismatch");
  if (b.hrep_only) throw std::logic_error("projection requires a vertex representation");
  std::vector<Vec> q;
  q.reserve(b.vertices.size());
  for (const Vec& v : b.vertices) q.push_back(s.to_chart(v));
  return convex_hull(q, opt);
}

SectionResult section(const ConvexBody& b, const AffineSubspace& s, const Tolerances& tol) {
  SectionResult res;
  res.chart = s;
  if (s.ambient_dim() != b.dim) throw std::invalid_argument("dimension mismatch");
  double scale = 1.0 + b.diameter + norm(b.vertex_centroid);
  double on_tol = tol.eps_geom * scale;

  std::vector<Vec> pts;
  if (s.subspace_dim() == 1) {
    if (b.facets.empty()) throw std::logic_error("section requires facets");
    const Vec& d = s.directions[0];
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const Facet& f : b.facets) {
      double a = dot(f.normal, d);
      double r = f.offset - dot(f.normal, s.base);
      if (a > 1e-12)
        hi = std::min(hi, r / a);
      else if (a < -1e-12)
        lo = std::max(lo, r / a);
      else if (r < -on_tol)
        return res;  // line parallel to a separating facet
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi + on_tol) return res;
    if (lo > hi) lo = hi = 0.5 * (lo + hi);
    pts.push_back(s.from_chart(Vec(lo)));
    pts.push_back(s.from_chart(Vec(hi)));
  } else if (s.codim() == 1) {
    if (b.hrep_only) throw std::logic_error("section requires a vertex representation");
    Vec n = orthonormal_complement(s.directions, b.dim).at(0);
    double d0 = dot(n, s.base);
    std::vector<double> val(b.vertices.size());
    for (size_t i = 0; i < b.vertices.size(); ++i) val[i] = dot(n, b.vertices[i]) - d0;
    for (size_t i = 0; i < b.vertices.size(); ++i)
      if (std::fabs(val[i]) <= on_tol) pts.push_back(b.vertices[i]);
    for (const auto& [i, j] : b.edges) {
      if ((val[i] > on_tol && val[j] < -on_tol) || (val[i] < -on_tol && val[j] > on_tol)) {
        double t = val[i] / (val[i] - val[j]);
        pts.push_back(b.vertices[i] + t * (b.vertices[j] - b.vertices[i]));
      }
    }
    if (pts.empty()) return res;
  } else {
    throw std::invalid_argument("section supports hyperplanes and lines");
  }

  std::vector<Vec> q;
  q.reserve(pts.size());
  for (const Vec& p : pts) q.push_back(s.to_chart(p));
  res.body = convex_hull(q);
  res.empty = false;
  double min_extent = tol.eps_section_rel * std::max(b.diameter, 1e-300);
  res.degenerate = res.body.affine_dim < s.subspace_dim() ||
                   res.body.inradius_lower_bound() < min_extent;
  return res;
}

ConvexBody embed_in_ambient(const ConvexBody& chart_body, const AffineSubspace& chart,
                            const HullOptions& opt) {
  std::vector<Vec> pts;
  pts.reserve(chart_body.vertices.size());
  for (const Vec& v : chart_body.vertices) pts.push_back(chart.from_chart(v));
  return convex_hull(pts, opt);
}

std::optional<ConvexBody> minkowski_erode(const ConvexBody& b, const ConvexBody& c,
                                          const HullOptions& opt) {
  if (b.dim != c.dim) throw std::invalid_argument("dimension mismatch");
  std::vector<Halfspace> hs;
  hs.reserve(b.facets.size());
  for (const Facet& f : b.facets) hs.push_back({f.normal, f.offset - c.support(f.normal)});

  if (b.dim <= 2 || static_cast<int>(hs.size()) <= opt.max_enumeration_facets)
    return body_from_halfspaces(hs, b.dim, opt);

  FeasibilityResult fr = lp_feasible_fast(hs, b.dim);
  if (!fr.feasible()) return std::nullopt;
  ConvexBody out;
  out.dim = b.dim;
  out.affine_dim = b.dim;
  out.hrep_only = true;
  out.span = AffineSubspace::full(b.dim);
  for (const Halfspace& h : hs) {
    Facet f;
    f.normal = h.normal;
    f.offset = h.offset;
    out.facets.push_back(std::move(f));
  }
  return out;
}

double hausdorff(const ConvexBody& b1, const ConvexBody& b2, int lattice_dirs) {
  if (b1.dim != b2.dim) throw std::invalid_argument("dimension mismatch");
  std::vector<Vec> dirs;
  for (const Facet& f : b1.facets) dirs.push_back(f.normal);
  for (const Facet& f : b2.facets) dirs.push_back(f.normal);
  for (const Vec& u : unit_directions(b1.dim, lattice_dirs)) dirs.push_back(u);
  double worst = 0.0;
  for (const Vec& u : dirs) worst = std::max(worst, std::fabs(b1.support(u) - b2.support(u)));
  return worst;
}

bool contains_body(const ConvexBody& outer, const ConvexBody& inner, double tol) {
  for (const Vec& v : inner.vertices)
    if (!outer.contains(v, tol)) return false;
  return true;
}

void validate_body(const ConvexBody& b, double eps) {
  double scale = 1.0 + b.diameter + norm(b.vertex_centroid);
  double tol = eps * scale;
  for (const Vec& v : b.vertices)
    if (b.facet_violation(v) > tol) throw std::logic_error("vertex outside facet system");
  for (const Facet& f : b.facets) {
    if (std::fabs(norm(f.normal) - 1.0) > 1e-9) throw std::logic_error("facet normal not unit");
    if (f.span_pair) continue;
    int tight = 0;
    for (const Vec& v : b.vertices)
      if (std::fabs(dot(f.normal, v) - f.offset) <= tol) ++tight;
    if (tight < std::max(1, b.affine_dim)) throw std::logic_error("facet not tight enough");
    if (std::fabs(b.support(f.normal) - f.offset) > tol)
      throw std::logic_error("support/facet offset mismatch");
  }
  for (size_t i = 0; i < b.span.directions.size(); ++i) {
    for (size_t j = i; j < b.span.directions.size(); ++j) {
      double d = dot(b.span.directions[i], b.span.directions[j]);
      double want = (i == j) ? 1.0 : 0.0;
      if (std::fabs(d - want) > 1e-9) throw std::logic_error("span frame not orthonormal");
    }
  }
}

}  // namespace parkable
