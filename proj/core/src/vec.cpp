#include "parkable/vec.hpp"

#include <algorithm>

namespace parkable {

Vec normalized(const Vec& a, double eps) {
  double n = norm(a);
  if (n <= eps) throw std::invalid_argument("degenerate direction");
  return a * (1.0 / n);
}

bool is_finite(const Vec& a) {
  for (int i = 0; i < a.dim; ++i)
    if (!std::isfinite(a.c[i])) return false;
  return true;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.dim; ++i) {
    if (a.c[i] < b.c[i]) return true;
    if (a.c[i] > b.c[i]) return false;
  }
  return false;
}

double angle_between(const Vec& a, const Vec& b) {
  double na = norm(a), nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("degenerate direction");
  double c = dot(a, b) / (na * nb);
  c = std::clamp(c, -1.0, 1.0);
  return std::acos(c);
}

Mat operator*(const Mat& A, const Mat& B) {
  Mat m(A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) {
      double s = 0.0;
      for (int k = 0; k < A.dim; ++k) s += A.a[i][k] * B.a[k][j];
      m.a[i][j] = s;
    }
  return m;
}

Mat operator+(const Mat& A, const Mat& B) {
  Mat m(A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) m.a[i][j] = A.a[i][j] + B.a[i][j];
  return m;
}

Mat operator-(const Mat& A, const Mat& B) {
  Mat m(A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) m.a[i][j] = A.a[i][j] - B.a[i][j];
  return m;
}

Mat operator*(const Mat& A, double s) {
  Mat m(A.dim);
  for (int i = 0; i < A.dim; ++i)
    for (int j = 0; j < A.dim; ++j) m.a[i][j] = A.a[i][j] * s;
  return m;
}

AffineSubspace AffineSubspace::full(int dim) {
  AffineSubspace s;
  s.base = Vec::zero(dim);
  for (int i = 0; i < dim; ++i) s.directions.push_back(Vec::axis(dim, i));
  return s;
}

AffineSubspace AffineSubspace::point(const Vec& p) {
  AffineSubspace s;
  s.base = p;
  return s;
}

AffineSubspace AffineSubspace::line(const Vec& base, const Vec& dir) {
  AffineSubspace s;
  s.base = base;
  s.directions.push_back(normalized(dir));
  return s;
}

AffineSubspace AffineSubspace::hyperplane(const Vec& normal, double offset) {
  Vec n = normalized(normal);
  AffineSubspace s;
  s.base = n * offset;
  s.directions = orthonormal_complement({n}, n.dim);
  return s;
}

std::vector<Vec> orthonormal_complement(const std::vector<Vec>& dirs, int dim) {
  std::vector<Vec> frame = dirs;
  std::vector<Vec> out;
  // Extend the frame with standard basis vectors, most orthogonal first.
  for (int pass = 0; static_cast<int>(frame.size()) < dim && pass < dim; ++pass) {
    int best = -1;
    double best_res = -1.0;
    for (int i = 0; i < dim; ++i) {
      Vec e = Vec::axis(dim, i);
      Vec r = e;
      for (const Vec& f : frame) r -= dot(r, f) * f;
      double res = norm(r);
      if (res > best_res + 1e-15) {
        best_res = res;
        best = i;
      }
    }
    Vec r = Vec::axis(dim, best);
    for (const Vec& f : frame) r -= dot(r, f) * f;
    // Re-orthogonalize once for accuracy.
    for (const Vec& f : frame) r -= dot(r, f) * f;
    r = normalized(r);
    frame.push_back(r);
    out.push_back(r);
  }
  return out;
}

int rank_of(const std::vector<Vec>& vs, double eps) {
  std::vector<Vec> basis;
  for (const Vec& v : vs) {
    Vec r = v;
    for (const Vec& b : basis) r -= dot(r, b) * b;
    for (const Vec& b : basis) r -= dot(r, b) * b;
    if (norm(r) > eps) basis.push_back(r * (1.0 / norm(r)));
  }
  return static_cast<int>(basis.size());
}

}  // namespace parkable
