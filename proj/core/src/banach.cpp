#include "parkable/banach.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parkable/sampling.hpp"
#include "parkable/symmetry.hpp"

namespace parkable {

namespace {

Eigen::Matrix3d to_eigen(const Mat& m) {
  Eigen::Matrix3d e = Eigen::Matrix3d::Identity();
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) e(i, j) = m(i, j);
  return e;
}

Mat from_eigen(const Eigen::Matrix3d& e, int dim) {
  Mat m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = e(i, j);
  return m;
}

Mat matrix_sqrt_spd(const Mat& q) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(to_eigen(q));
  Eigen::Vector3d ev = es.eigenvalues();
  for (int i = 0; i < 3; ++i) {
    if (ev(i) <= 0.0) throw std::invalid_argument("matrix not positive definite");
    ev(i) = std::sqrt(ev(i));
  }
  Eigen::Matrix3d r = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  return from_eigen(r, q.dim);
}

struct QuadricFit {
  Mat q;
  bool degenerate = false;
  bool solved = false;
};

// Least-squares fit of x Q x = 1 over the given points (3D, 6 unknowns).
QuadricFit fit_quadric(const std::vector<Vec>& pts) {
  Eigen::Matrix<double, 6, 6> n = Eigen::Matrix<double, 6, 6>::Zero();
  Eigen::Matrix<double, 6, 1> rhs = Eigen::Matrix<double, 6, 1>::Zero();
  for (const Vec& p : pts) {
    Eigen::Matrix<double, 6, 1> phi;
    phi << p.x() * p.x(), p.y() * p.y(), p.z() * p.z(), 2 * p.x() * p.y(), 2 * p.x() * p.z(),
        2 * p.y() * p.z();
    n += phi * phi.transpose();
    rhs += phi;
  }
  QuadricFit fit;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(n);
  double lmax = es.eigenvalues()(5), lmin = es.eigenvalues()(0);
  fit.degenerate = !(lmax > 0.0) || lmin < 1e-8 * lmax;
  Eigen::Matrix<double, 6, 1> q = n.ldlt().solve(rhs);
  fit.solved = q.allFinite();
  fit.q = Mat(3);
  fit.q(0, 0) = q(0);
  fit.q(1, 1) = q(1);
  fit.q(2, 2) = q(2);
  fit.q(0, 1) = fit.q(1, 0) = q(3);
  fit.q(0, 2) = fit.q(2, 0) = q(4);
  fit.q(1, 2) = fit.q(2, 1) = q(5);
  return fit;
}

double quadric_defect(const Mat& q, const Vec& v) {
  return std::fabs(dot(v, q.apply(v)) - 1.0);
}

}  // namespace

Gauge make_gauge(const ConvexBody& body, const Tolerances& tol) {
  if (!body.is_body()) throw std::invalid_argument("gauge requires a full-dimensional body");
  for (const Facet& f : body.facets)
    if (f.offset <= 0.0) throw std::invalid_argument("origin not interior to the unit ball");
  SymmetryReport rep = symmetry_center(body, tol, 128);
  if (!rep.center || norm(*rep.center) > tol.symmetry_tol * std::max(body.diameter, 1e-12))
    throw std::invalid_argument("unit ball must be centrally symmetric");
  return Gauge{body};
}

double gauge_norm(const Gauge& g, const Vec& x) {
  if (x.dim != g.body.dim) throw std::invalid_argument("dimension mismatch");
  double r = 0.0;
  for (const Facet& f : g.body.facets) r = std::max(r, dot(f.normal, x) / f.offset);
  return r;
}

double operator_norm(const Gauge& g, const Mat& t) {
  if (t.dim != g.body.dim) throw std::invalid_argument("dimension mismatch");
  double r = 0.0;
  for (const Vec& v : g.body.vertices) r = std::max(r, gauge_norm(g, t.apply(v)));
  return r;
}

Mat projection_onto(const Vec& u, int rank, const Mat* shape) {
  int d = u.dim;
  Vec qu = shape ? shape->apply(u) : u;
  double denom = dot(u, qu);
  if (denom <= 0.0) throw std::invalid_argument("degenerate projection direction");
  Mat p1 = Mat::outer(u, qu);
  p1 = p1 * (1.0 / denom);
  if (rank == 1) return p1;
  if (rank == d - 1) return Mat::identity(d) - p1;
  throw std::invalid_argument("unsupported projection rank");
}

ProjectionNormAudit projection_norm_audit(const Gauge& g, int n_dirs, const Tolerances& tol,
                                          const Mat* shape) {
  if (g.body.dim != 3) throw std::invalid_argument("audit requires dimension 3");

  // Absorb the shape matrix: transform the ball by Q^(1/2) so that the fitted
  // quadric becomes the round ball, then audit standard orthogonal
  // projections there.
  Mat q = Mat::identity(3);
  bool normalized_flag = false;
  if (shape) {
    q = *shape;
    normalized_flag = true;
  } else {
    EllipsoidCertificate cert = ellipsoid_certify(g.body, tol);
    if (cert.positive_definite) {
      q = cert.shape_matrix;
      normalized_flag = true;
    }
  }

  Gauge audited = g;
  if (normalized_flag) {
    Mat s = matrix_sqrt_spd(q);
    std::vector<Vec> pts;
    pts.reserve(g.body.vertices.size());
    for (const Vec& v : g.body.vertices) pts.push_back(s.apply(v));
    audited = Gauge{convex_hull(pts)};
  }

  ProjectionNormAudit out;
  out.shape_matrix = q;
  out.shape_normalized = normalized_flag;
  for (const Vec& u : fibonacci_sphere(n_dirs)) {
    for (int rank : {1, 2}) {
      double nrm = operator_norm(audited, projection_onto(u, rank));
      if (nrm > out.max_norm) {
        out.max_norm = nrm;
        out.witness_direction = u;
        out.witness_rank = rank;
      }
    }
  }
  return out;
}

double parallelogram_defect(const Gauge& g, const Vec& x, const Vec& y) {
  double nxy = gauge_norm(g, x + y);
  double nxmy = gauge_norm(g, x - y);
  double nx = gauge_norm(g, x);
  double ny = gauge_norm(g, y);
  double denom = nx * nx + ny * ny;
  if (denom < 1e-30) return 0.0;
  return std::fabs(nxy * nxy + nxmy * nxmy - 2.0 * nx * nx - 2.0 * ny * ny) / denom;
}

double parallelogram_residual(const Gauge& g, int n_random_pairs, std::uint64_t seed) {
  double worst = 0.0;
  const auto& verts = g.body.vertices;
  size_t stride = std::max<size_t>(1, verts.size() / 24);
  std::vector<Vec> dirs;
  for (size_t i = 0; i < verts.size(); i += stride) dirs.push_back(normalized(verts[i]));
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t j = i + 1; j < dirs.size(); ++j)
      worst = std::max(worst, parallelogram_defect(g, dirs[i], dirs[j]));

  SplitMix64 rng(seed);
  for (int k = 0; k < n_random_pairs; ++k) {
    Vec x = rng.unit_vector(g.body.dim);
    Vec y = rng.unit_vector(g.body.dim);
    worst = std::max(worst, parallelogram_defect(g, x, y));
  }
  return worst;
}

EllipsoidCertificate ellipsoid_certify(const ConvexBody& b, const Tolerances& tol) {
  if (b.dim != 3 || !b.is_body())
    throw std::invalid_argument("certificate requires a full-dimensional 3D body");
  double scale = 1.0 + b.diameter;
  if (b.facet_violation(Vec::zero(3)) > -tol.eps_geom * scale)
    throw std::invalid_argument("origin must be interior");

  EllipsoidCertificate cert;
  QuadricFit fit = fit_quadric(b.vertices);
  cert.degenerate_vertex_fit = fit.degenerate;
  if (fit.degenerate || !fit.solved) {
    // Vertex set lies on a degenerate quadric family (co-spherical vertex
    // sets of cubes and cross-polytopes). Refit over the full surface sample.
    std::vector<Vec> pts = b.vertices;
    for (size_t f = 0; f < b.facets.size(); ++f)
      if (!b.facets[f].span_pair) pts.push_back(b.facet_centroid(static_cast<int>(f)));
    for (const auto& [i, j] : b.edges) pts.push_back(0.5 * (b.vertices[i] + b.vertices[j]));
    fit = fit_quadric(pts);
    if (!fit.solved) {
      cert.diagnostic = "quadric fit failed";
      return cert;
    }
    for (const Vec& p : pts) cert.fit_residual = std::max(cert.fit_residual, quadric_defect(fit.q, p));
  } else {
    for (const Vec& v : b.vertices)
      cert.fit_residual = std::max(cert.fit_residual, quadric_defect(fit.q, v));
  }
  cert.shape_matrix = fit.q;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(to_eigen(fit.q));
  cert.positive_definite = es.eigenvalues()(0) > 1e-12 * std::max(1.0, es.eigenvalues()(2));
  if (!cert.positive_definite) {
    cert.diagnostic = "fitted quadric not positive definite";
    return cert;
  }

  for (const Vec& v : b.vertices)
    cert.vertex_residual = std::max(cert.vertex_residual, quadric_defect(fit.q, v));
  for (size_t f = 0; f < b.facets.size(); ++f) {
    if (b.facets[f].span_pair) continue;
    Vec c = b.facet_centroid(static_cast<int>(f));
    cert.surface_residual =
        std::max(cert.surface_residual, std::fabs(std::sqrt(dot(c, fit.q.apply(c))) - 1.0));
  }

  cert.verdict = cert.vertex_residual <= tol.ellipsoid_tol &&
                 cert.surface_residual <= tol.surface_tol;
  if (!cert.verdict && cert.diagnostic.empty()) cert.diagnostic = "quadric fit residual too large";
  return cert;
}

}  // namespace parkable
