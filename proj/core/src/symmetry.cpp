#include "parkable/symmetry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parkable/sampling.hpp"

namespace parkable {

namespace {

Eigen::Matrix3d second_moment(const std::vector<Vec>& pts, int dim) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (const Vec& p : pts)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) += p[i] * p[j];
  return m;
}

Vec eigvec_to_vec(const Eigen::Vector3d& v, int dim) {
  Vec r = Vec::zero(dim);
  for (int i = 0; i < dim; ++i) r[i] = v(i);
  return r;
}

void require_symmetric(const ConvexBody& b, const Tolerances& tol) {
  SymmetryReport rep = symmetry_center(b, tol, 128);
  if (!rep.center || norm(*rep.center) > tol.symmetry_tol * std::max(b.diameter, 1e-12))
    throw std::invalid_argument("body is not centrally symmetric");
}

double section_offset(double fraction, double h_plus, double h_minus) {
  return fraction >= 0.0 ? fraction * h_plus : fraction * h_minus;
}

}  // namespace

SymmetryReport symmetry_center(const ConvexBody& k, const Tolerances& tol, int sample_dirs) {
  if (k.vertices.empty()) throw std::invalid_argument("empty body");
  SymmetryReport rep;

  if (k.diameter < tol.eps_geom) {
    rep.candidate = k.vertices[0];
    rep.center = rep.candidate;
    rep.residual = 0.0;
    return rep;
  }

  if (k.flat()) {
    // Work in the chart of the affine hull.
    std::vector<Vec> q;
    q.reserve(k.vertices.size());
    for (const Vec& v : k.vertices) q.push_back(k.span.to_chart(v));
    ConvexBody flat = convex_hull(q);
    SymmetryReport sub = symmetry_center(flat, tol, sample_dirs);
    rep.residual = sub.residual;
    rep.candidate = k.span.from_chart(sub.candidate);
    if (sub.center) rep.center = k.span.from_chart(*sub.center);
    return rep;
  }

  int d = k.dim;
  Vec p = Vec::zero(d);
  for (int i = 0; i < d; ++i) {
    Vec e = Vec::axis(d, i);
    p[i] = 0.5 * (k.support(e) - k.support(-e));
  }
  rep.candidate = p;

  double worst = 0.0;
  auto probe = [&](const Vec& u) {
    double v = std::fabs(k.support(u) - k.support(-u) - 2.0 * dot(p, u)) / norm(u);
    worst = std::max(worst, v);
  };
  for (const Facet& f : k.facets) probe(f.normal);
  for (const Vec& u : unit_directions(d, sample_dirs)) probe(u);

  rep.residual = worst / k.diameter;
  if (rep.residual <= tol.symmetry_tol) rep.center = p;
  return rep;
}

SectionCenterLine section_center_line(const ConvexBody& b, const Vec& dir,
                                      const std::vector<double>& offsets,
                                      const Tolerances& tol, bool check_symmetry) {
  if (check_symmetry) require_symmetric(b, tol);
  Vec u = normalized(dir);
  double h_plus = b.support(u);
  double h_minus = b.support(-u);

  SectionCenterLine out;
  for (double f : offsets) {
    double s = section_offset(f, h_plus, h_minus);
    SectionResult sec = section(b, AffineSubspace::hyperplane(u, s), tol);
    if (sec.empty || sec.degenerate) {
      ++out.degenerate_skipped;
      continue;
    }
    ++out.sections_used;
    SymmetryReport rep = symmetry_center(sec.body, tol, 128);
    out.worst_center_residual = std::max(out.worst_center_residual, rep.residual);
    if (!rep.center) {
      if (!out.centerless_offset) out.centerless_offset = f;
      continue;
    }
    out.centers.push_back(sec.chart.from_chart(*rep.center));
  }
  if (out.sections_used == 0) throw std::runtime_error("all sections degenerate");
  if (out.centerless_offset) {
    out.ok = false;
    return out;
  }

  // Least-squares line through the origin: top eigenvector of the second
  // moment of the center cloud. Centers of a symmetric body come in +- pairs.
  Eigen::Matrix3d m = second_moment(out.centers, b.dim);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
  Vec line_dir = eigvec_to_vec(es.eigenvectors().col(2), b.dim);
  if (es.eigenvalues()(2) < 1e-24) line_dir = u;  // all centers at the origin
  line_dir = normalized(line_dir);
  out.line = AffineSubspace::line(Vec::zero(b.dim), line_dir);

  double worst = 0.0;
  for (const Vec& c : out.centers) worst = std::max(worst, norm(c - dot(c, line_dir) * line_dir));
  out.collinearity_residual = worst / std::max(b.diameter, 1e-12);
  out.ok = out.collinearity_residual <= tol.collinearity_tol;
  return out;
}

ChordMidpointPlane chord_midpoint_plane(const ConvexBody& b, const Vec& line_dir, int grid,
                                        const Tolerances& tol, bool check_symmetry) {
  if (check_symmetry) require_symmetric(b, tol);
  if (grid < 2) throw std::invalid_argument("grid too small");
  Vec d = normalized(line_dir);

  AffineSubspace shadow_plane;
  shadow_plane.base = Vec::zero(b.dim);
  shadow_plane.directions = orthonormal_complement({d}, b.dim);
  ConvexBody shadow = project(b, shadow_plane);

  // Bounding box of the shadow chart.
  double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
  for (const Vec& v : shadow.vertices)
    for (int i = 0; i < shadow.dim; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }

  std::vector<Vec> midpoints;
  double min_len = tol.eps_section_rel * b.diameter;
  for (int gy = 0; gy < grid; ++gy)
    for (int gx = 0; gx < grid; ++gx) {
      Vec y = Vec::zero(shadow.dim);
      y[0] = lo[0] + (hi[0] - lo[0]) * (gx + 0.5) / grid;
      if (shadow.dim > 1) y[1] = lo[1] + (hi[1] - lo[1]) * (gy + 0.5) / grid;
      if (!shadow.contains(y, -1e-9)) continue;  // strictly inside the shadow
      Vec base = shadow_plane.from_chart(y);
      SectionResult chord = section(b, AffineSubspace::line(base, d), tol);
      if (chord.empty || chord.body.vertices.size() < 2) continue;
      double t0 = chord.body.vertices[0].x(), t1 = chord.body.vertices[1].x();
      if (std::fabs(t1 - t0) < min_len) continue;
      midpoints.push_back(chord.chart.from_chart(Vec(0.5 * (t0 + t1))));
      if (shadow.dim == 1) break;
    }

  ChordMidpointPlane out;
  out.chords_used = static_cast<int>(midpoints.size());
  if (out.chords_used < 3) throw std::runtime_error("fewer than 3 non-degenerate chords");

  Eigen::Matrix3d m = second_moment(midpoints, b.dim);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
  out.normal = normalized(eigvec_to_vec(es.eigenvectors().col(0), b.dim));

  double worst = 0.0;
  for (const Vec& p : midpoints) worst = std::max(worst, std::fabs(dot(p, out.normal)));
  out.coplanarity_residual = worst / std::max(b.diameter, 1e-12);
  out.ok = out.coplanarity_residual <= tol.coplanarity_tol;
  return out;
}

ConjugateSubspace subspace_prime(const ConvexBody& b, const AffineSubspace& s,
                                 const Tolerances& tol) {
  if (!s.is_linear(1e-9)) throw std::invalid_argument("subspace must be linear");
  int d = b.dim;
  ConjugateSubspace out;
  switch (s.subspace_dim()) {
    case 3:
      out.subspace = AffineSubspace::point(Vec::zero(d));
      return out;
    case 0:
      out.subspace = AffineSubspace::full(d);
      return out;
    case 2: {
      Vec n = orthonormal_complement(s.directions, d).at(0);
      SectionCenterLine scl = section_center_line(b, n, default_offsets(), tol, false);
      if (!scl.line) throw std::runtime_error("conjugate line undefined: centerless section");
      out.subspace = *scl.line;
      out.residual = scl.collinearity_residual;
      return out;
    }
    case 1: {
      ChordMidpointPlane cmp = chord_midpoint_plane(b, s.directions[0], 12, tol, false);
      out.subspace = AffineSubspace::hyperplane(cmp.normal, 0.0);
      out.residual = cmp.coplanarity_residual;
      return out;
    }
    default:
      throw std::invalid_argument("unsupported subspace dimension");
  }
}

InvolutionAudit involution_audit(const ConvexBody& b, int n_flags, std::uint64_t seed,
                                 const Tolerances& tol) {
  if (b.dim != 3) throw std::invalid_argument("involution audit requires dimension 3");
  require_symmetric(b, tol);
  SplitMix64 rng(seed);
  InvolutionAudit audit;
  for (int k = 0; k < n_flags; ++k) {
    Vec n = rng.unit_vector(3);
    Vec raw = rng.unit_vector(3);
    Vec in_plane = raw - dot(raw, n) * n;
    if (norm(in_plane) < 1e-6) {
      --k;
      continue;
    }
    Vec ldir = normalized(in_plane);

    AffineSubspace H = AffineSubspace::hyperplane(n, 0.0);
    AffineSubspace L = AffineSubspace::line(Vec::zero(3), ldir);

    ConjugateSubspace Hp = subspace_prime(b, H, tol);
    ConjugateSubspace Lp = subspace_prime(b, L, tol);
    ++audit.flags_tested;

    // (1) L inside H implies H' inside L': the H' direction lies in the L' plane.
    Vec hdir = Hp.subspace.directions[0];
    Vec lnorm = orthonormal_complement(Lp.subspace.directions, 3).at(0);
    double rev_angle = std::asin(std::min(1.0, std::fabs(dot(hdir, lnorm))));
    audit.max_reversal_angle = std::max(audit.max_reversal_angle, rev_angle);
    if (rev_angle > tol.involution_tol) ++audit.reversal_violations;

    // (2) H'' = H.
    ConjugateSubspace Hpp = subspace_prime(b, Hp.subspace, tol);
    Vec n2 = orthonormal_complement(Hpp.subspace.directions, 3).at(0);
    double inv_angle = std::acos(std::min(1.0, std::fabs(dot(n2, n))));
    audit.max_involution_angle = std::max(audit.max_involution_angle, inv_angle);
    if (inv_angle > tol.involution_tol) ++audit.involution_violations;

    // (3) H intersect H' = {0}: rank of the stacked spanning vectors.
    std::vector<Vec> spanv = H.directions;
    spanv.push_back(hdir);
    if (rank_of(spanv, 1e-9) != 3) ++audit.intersection_violations;
  }
  return audit;
}

SupportingChordResult supporting_chord_criterion(const ConvexBody& b2, int n_dirs,
                                                 const Tolerances& tol) {
  if (b2.dim != 2) throw std::invalid_argument("criterion requires dimension 2");
  double scale = 1.0 + b2.diameter;
  if (b2.facet_violation(Vec::zero(2)) > -tol.eps_geom * scale)
    throw std::invalid_argument("origin must be interior");

  SupportingChordResult out;
  double contact_tol = 1e-7 * scale;
  for (const Vec& v : circle_directions(n_dirs)) {
    ++out.tested;
    std::vector<Vec> contact;
    for (int id : b2.support_set(v, contact_tol)) contact.push_back(b2.vertices[id]);
    for (int id : b2.support_set(-v, contact_tol)) contact.push_back(b2.vertices[id]);
    ConvexBody hull = convex_hull(contact);
    if (!hull.contains(Vec::zero(2), tol.eps_geom * scale)) {
      out.pass = false;
      out.witness = v;
      return out;
    }
  }
  out.pass = true;
  return out;
}

ProjectionCenterCheck projection_center_check(const ConvexBody& b, int n_dirs,
                                              const Tolerances& tol) {
  if (b.dim != 3) throw std::invalid_argument("projection check requires dimension 3");
  ProjectionCenterCheck out;
  SymmetryReport body_rep = symmetry_center(b, tol);
  out.body_has_center = body_rep.center.has_value();

  bool all_match = true;
  bool found_centerless = false;
  for (const Vec& u : fibonacci_sphere(n_dirs)) {
    AffineSubspace plane;
    plane.base = Vec::zero(3);
    plane.directions = orthonormal_complement({u}, 3);
    ConvexBody proj = project(b, plane);
    SymmetryReport rep = symmetry_center(proj, tol, 128);
    ++out.projections_tested;
    if (rep.center) ++out.projections_with_center;

    if (out.body_has_center) {
      if (!rep.center) {
        all_match = false;
        if (!out.witness_direction) out.witness_direction = u;
        continue;
      }
      double mismatch =
          distance(*rep.center, plane.to_chart(*body_rep.center)) / std::max(b.diameter, 1e-12);
      out.max_center_mismatch = std::max(out.max_center_mismatch, mismatch);
      if (mismatch > 2.0 * tol.symmetry_tol) {
        all_match = false;
        if (!out.witness_direction) out.witness_direction = u;
      }
    } else if (!rep.center) {
      found_centerless = true;
      if (!out.witness_direction) out.witness_direction = u;
    }
  }
  out.consistent = out.body_has_center ? all_match : found_centerless;
  return out;
}

}  // namespace parkable
