#pragma once

#include <cstdint>
#include <vector>

#include "parkable/vec.hpp"

namespace parkable {

/// Near-uniform unit directions on S^2 via the Fibonacci spiral lattice.
/// Optional seeded angular jitter (off by default); deterministic either way.
std::vector<Vec> fibonacci_sphere(int n, double jitter = 0.0,
                                  std::uint64_t seed = 0);

/// Evenly spaced unit directions on the circle.
std::vector<Vec> circle_directions(int n);

/// Dispatch on ambient dimension: +-1 in 1D, circle in 2D, Fibonacci in 3D.
std::vector<Vec> unit_directions(int dim, int n);

/// Small deterministic PRNG (splitmix64). Used instead of <random>
/// distributions so that seeded streams are reproducible across platforms.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller with explicit arithmetic.
  double normal();

  /// Uniform direction on the unit sphere of the given dimension.
  Vec unit_vector(int dim);
};

}  // namespace parkable
