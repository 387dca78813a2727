#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace parkable {

/// Small dense vector for ambient dimensions 1..3. Sections and projections
/// reuse the same type for their lower-dimensional chart coordinates.
struct Vec {
  int dim = 0;
  std::array<double, 3> c{0.0, 0.0, 0.0};

  Vec() = default;
  explicit Vec(double x) : dim(1), c{x, 0.0, 0.0} {}
  Vec(double x, double y) : dim(2), c{x, y, 0.0} {}
  Vec(double x, double y, double z) : dim(3), c{x, y, z} {}

  static Vec zero(int d) {
    Vec v;
    v.dim = d;
    return v;
  }
  static Vec axis(int d, int i, double s = 1.0) {
    Vec v = zero(d);
    v.c[i] = s;
    return v;
  }

  double operator[](int i) const { return c[i]; }
  double& operator[](int i) { return c[i]; }

  double x() const { return c[0]; }
  double y() const { return c[1]; }
  double z() const { return c[2]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < dim; ++i) c[i] += o.c[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < dim; ++i) c[i] -= o.c[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < dim; ++i) c[i] *= s;
    return *this;
  }
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(Vec a, double s) { return a *= s; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator-(Vec a) {
  for (int i = 0; i < a.dim; ++i) a.c[i] = -a.c[i];
  return a;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a.c[i] * b.c[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline double distance(const Vec& a, const Vec& b) { return norm(a - b); }

inline Vec cross(const Vec& a, const Vec& b) {
  return Vec(a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(),
             a.x() * b.y() - a.y() * b.x());
}

/// 2D scalar cross product (z-component of the 3D cross of embedded vectors).
inline double cross2(const Vec& a, const Vec& b) {
  return a.x() * b.y() - a.y() * b.x();
}

Vec normalized(const Vec& a, double eps = 1e-14);

bool is_finite(const Vec& a);

/// Strict lexicographic order; used to fix deterministic processing orders.
bool lex_less(const Vec& a, const Vec& b);

/// Angle between two nonzero vectors in [0, pi].
double angle_between(const Vec& a, const Vec& b);

/// Square matrix acting on Vec; dim x dim with dim <= 3.
struct Mat {
  int dim = 0;
  std::array<std::array<double, 3>, 3> a{};

  Mat() = default;
  explicit Mat(int d) : dim(d) {}

  static Mat identity(int d) {
    Mat m(d);
    for (int i = 0; i < d; ++i) m.a[i][i] = 1.0;
    return m;
  }
  /// u v^T
  static Mat outer(const Vec& u, const Vec& v) {
    Mat m(u.dim);
    for (int i = 0; i < u.dim; ++i)
      for (int j = 0; j < u.dim; ++j) m.a[i][j] = u.c[i] * v.c[j];
    return m;
  }

  double operator()(int i, int j) const { return a[i][j]; }
  double& operator()(int i, int j) { return a[i][j]; }

  Vec apply(const Vec& x) const {
    Vec r = Vec::zero(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) r.c[i] += a[i][j] * x.c[j];
    return r;
  }

  Mat transpose() const {
    Mat m(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m.a[i][j] = a[j][i];
    return m;
  }
};

Mat operator*(const Mat& A, const Mat& B);
Mat operator+(const Mat& A, const Mat& B);
Mat operator-(const Mat& A, const Mat& B);
Mat operator*(const Mat& A, double s);

/// Affine subspace given by a base point and an orthonormal direction frame.
/// Encodes lines, planes and their translates; codimension is derived.
struct AffineSubspace {
  Vec base;
  std::vector<Vec> directions;

  int ambient_dim() const { return base.dim; }
  int subspace_dim() const { return static_cast<int>(directions.size()); }
  int codim() const { return ambient_dim() - subspace_dim(); }

  bool is_linear(double eps = 1e-9) const { return norm(base) <= eps; }

  /// Chart coordinates of an ambient point.
  Vec to_chart(const Vec& p) const {
    Vec q = Vec::zero(subspace_dim());
    Vec d = p - base;
    for (int i = 0; i < subspace_dim(); ++i) q.c[i] = dot(d, directions[i]);
    return q;
  }
  /// Ambient point of chart coordinates.
  Vec from_chart(const Vec& q) const {
    Vec p = base;
    for (int i = 0; i < subspace_dim(); ++i) p += q.c[i] * directions[i];
    return p;
  }
  /// Chart image of an ambient direction (no base shift).
  Vec dir_to_chart(const Vec& d) const {
    Vec q = Vec::zero(subspace_dim());
    for (int i = 0; i < subspace_dim(); ++i) q.c[i] = dot(d, directions[i]);
    return q;
  }

  static AffineSubspace full(int dim);
  static AffineSubspace point(const Vec& p);
  static AffineSubspace line(const Vec& base, const Vec& dir);
  /// Hyperplane { x : normal . x = offset } with a deterministic in-plane frame.
  static AffineSubspace hyperplane(const Vec& normal, double offset);
};

/// Orthonormal vectors spanning the orthogonal complement of `dirs` in
/// ambient dimension `dim`. Deterministic construction.
std::vector<Vec> orthonormal_complement(const std::vector<Vec>& dirs, int dim);

/// Rank of a vector set at the given tolerance (modified Gram-Schmidt).
int rank_of(const std::vector<Vec>& vs, double eps);

}  // namespace parkable
