#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parkable/body.hpp"
#include "parkable/vec.hpp"

namespace parkable {

enum class BodyKind {
  vpolytope,
  ellipsoid,
  cube,
  cross_polytope,
  simplex,
  random_polytope,
  perturbed,
};

std::string to_string(BodyKind k);
BodyKind body_kind_from_string(const std::string& s);

/// Parametric description of a test body; resolves to a ConvexBody via
/// generate(). Serialized as the JSON body format (format version 1).
struct BodySpec {
  BodyKind kind = BodyKind::cube;
  int dim = 3;
  std::vector<Vec> vertices;  // vpolytope
  Vec center;                 // optional translation applied after generation
  Mat shape_matrix;           // ellipsoid: { x : x . (Q x) <= 1 }
  int subdivision = 3;        // ellipsoid sphere mesh level (<= 5)
  int vertex_count = 64;      // random_polytope
  std::uint64_t seed = 0;     // random_polytope / perturbed
  double amplitude = 0.0;     // perturbed: radial amplitude
  /// perturbed: nested base-body spec as JSON, resolved recursively.
  std::string base_spec_json;
  std::string metadata;

  static BodySpec make_cube(int dim = 3);
  static BodySpec make_cross_polytope(int dim = 3);
  static BodySpec make_simplex(int dim = 3);
  static BodySpec make_ellipsoid(const Mat& q, int subdivision = 3);
  static BodySpec make_random(int vertex_count, std::uint64_t seed, int dim = 3);
  static BodySpec make_perturbed_ellipsoid(const Mat& q, double amplitude, std::uint64_t seed,
                                           int subdivision = 3);
  static BodySpec make_vpolytope(std::vector<Vec> vertices);
};

/// Unit icosphere mesh vertices at the given subdivision (10 * 4^s + 2).
std::vector<Vec> icosphere_vertices(int subdivision);

/// Deterministic generation: exact standard bodies, quadric-exact ellipsoid
/// meshes, seeded random hulls, radial perturbations.
ConvexBody generate(const BodySpec& spec);

/// JSON body file round trip. Files hold either an explicit vertex list or a
/// generator spec; load() resolves both to a body. Parse errors name the
/// offending field.
ConvexBody load_body(const std::string& path);
BodySpec load_spec(const std::string& path);
void save_body(const ConvexBody& body, const std::string& path,
               const std::string& metadata = "");
void save_spec(const BodySpec& spec, const std::string& path);

/// Spec serialization used by both the file format and nested perturbed
/// bases.
std::string spec_to_json(const BodySpec& spec);
BodySpec spec_from_json(const std::string& text);

}  // namespace parkable
