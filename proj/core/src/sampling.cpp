#include "parkable/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace parkable {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<Vec> fibonacci_sphere(int n, double jitter, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("sample count must be positive");
  std::vector<Vec> pts;
  pts.reserve(n);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  SplitMix64 rng(seed);
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / n;
    double theta = golden * i;
    if (jitter > 0.0) {
      z += jitter * (rng.uniform() - 0.5) * (2.0 / n);
      if (z > 1.0) z = 1.0;
      if (z < -1.0) z = -1.0;
      theta += jitter * (rng.uniform() - 0.5) * golden;
    }
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.emplace_back(r * std::cos(theta), r * std::sin(theta), z);
  }
  return pts;
}

std::vector<Vec> circle_directions(int n) {
  if (n <= 0) throw std::invalid_argument("sample count must be positive");
  std::vector<Vec> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    double a = 2.0 * kPi * i / n;
    pts.emplace_back(std::cos(a), std::sin(a));
  }
  return pts;
}

std::vector<Vec> unit_directions(int dim, int n) {
  switch (dim) {
    case 1:
      return {Vec(1.0), Vec(-1.0)};
    case 2:
      return circle_directions(n);
    case 3:
      return fibonacci_sphere(n);
    default:
      throw std::invalid_argument("unsupported dimension");
  }
}

double SplitMix64::normal() {
  // Box-Muller; consumes two uniforms per pair, caches nothing so that the
  // stream position is easy to reason about.
  double u1 = uniform();
  double u2 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

Vec SplitMix64::unit_vector(int dim) {
  while (true) {
    Vec v = Vec::zero(dim);
    for (int i = 0; i < dim; ++i) v[i] = normal();
    double n = norm(v);
    if (n > 1e-8) return v * (1.0 / n);
  }
}

}  // namespace parkable
