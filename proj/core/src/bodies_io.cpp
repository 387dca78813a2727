#include "parkable/bodies_io.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "parkable/sampling.hpp"

namespace parkable {

namespace {

using json = nlohmann::ordered_json;

Mat matrix_inv_sqrt_spd(const Mat& q) {
  Eigen::Matrix3d e = Eigen::Matrix3d::Identity();
  for (int i = 0; i < q.dim; ++i)
    for (int j = 0; j < q.dim; ++j) e(i, j) = q(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(e);
  Eigen::Vector3d ev = es.eigenvalues();
  for (int i = 0; i < 3; ++i) {
    if (ev(i) <= 0.0) throw std::invalid_argument("shape matrix not positive definite");
    ev(i) = 1.0 / std::sqrt(ev(i));
  }
  Eigen::Matrix3d r = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
  Mat m(q.dim);
  for (int i = 0; i < q.dim; ++i)
    for (int j = 0; j < q.dim; ++j) m(i, j) = r(i, j);
  return m;
}

}  // namespace

std::string to_string(BodyKind k) {
  switch (k) {
    case BodyKind::vpolytope: return "vpolytope";
    case BodyKind::ellipsoid: return "ellipsoid";
    case BodyKind::cube: return "cube";
    case BodyKind::cross_polytope: return "cross_polytope";
    case BodyKind::simplex: return "simplex";
    case BodyKind::random_polytope: return "random_polytope";
    case BodyKind::perturbed: return "perturbed";
  }
  throw std::logic_error("unknown body kind");
}

BodyKind body_kind_from_string(const std::string& s) {
  static const std::map<std::string, BodyKind> table = {
      {"vpolytope", BodyKind::vpolytope},       {"ellipsoid", BodyKind::ellipsoid},
      {"cube", BodyKind::cube},                 {"cross_polytope", BodyKind::cross_polytope},
      {"simplex", BodyKind::simplex},           {"random_polytope", BodyKind::random_polytope},
      {"perturbed", BodyKind::perturbed},
  };
  auto it = table.find(s);
  if (it == table.end()) throw std::invalid_argument("unknown body kind: " + s);
  return it->second;
}

BodySpec BodySpec::make_cube(int dim) {
  BodySpec s;
  s.kind = BodyKind::cube;
  s.dim = dim;
  s.center = Vec::zero(dim);
  return s;
}

BodySpec BodySpec::make_cross_polytope(int dim) {
  BodySpec s = make_cube(dim);
  s.kind = BodyKind::cross_polytope;
  return s;
}

BodySpec BodySpec::make_simplex(int dim) {
  BodySpec s = make_cube(dim);
  s.kind = BodyKind::simplex;
  return s;
}

BodySpec BodySpec::make_ellipsoid(const Mat& q, int subdivision) {
  BodySpec s;
  s.kind = BodyKind::ellipsoid;
  s.dim = q.dim;
  s.center = Vec::zero(q.dim);
  s.shape_matrix = q;
  s.subdivision = subdivision;
  return s;
}

BodySpec BodySpec::make_random(int vertex_count, std::uint64_t seed, int dim) {
  BodySpec s;
  s.kind = BodyKind::random_polytope;
  s.dim = dim;
  s.center = Vec::zero(dim);
  s.vertex_count = vertex_count;
  s.seed = seed;
  return s;
}

BodySpec BodySpec::make_perturbed_ellipsoid(const Mat& q, double amplitude, std::uint64_t seed,
                                            int subdivision) {
  BodySpec s;
  s.kind = BodyKind::perturbed;
  s.dim = q.dim;
  s.center = Vec::zero(q.dim);
  s.amplitude = amplitude;
  s.seed = seed;
  s.base_spec_json = spec_to_json(make_ellipsoid(q, subdivision));
  return s;
}

BodySpec BodySpec::make_vpolytope(std::vector<Vec> vertices) {
  BodySpec s;
  s.kind = BodyKind::vpolytope;
  s.dim = vertices.empty() ? 3 : vertices[0].dim;
  s.center = Vec::zero(s.dim);
  s.vertices = std::move(vertices);
  return s;
}

std::vector<Vec> icosphere_vertices(int subdivision) {
  if (subdivision < 0 || subdivision > 5)
    throw std::invalid_argument("subdivision must be in [0, 5]");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec> verts = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1},
  };
  for (Vec& v : verts) v = normalized(v);
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };
  for (int level = 0; level < subdivision; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find({key.first, key.second});
      if (it != midpoint.end()) return it->second;
      Vec m = normalized(verts[a] + verts[b]);
      verts.push_back(m);
      int id = static_cast<int>(verts.size()) - 1;
      midpoint[{key.first, key.second}] = id;
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }
  return verts;
}

ConvexBody generate(const BodySpec& spec) {
  std::vector<Vec> pts;
  switch (spec.kind) {
    case BodyKind::vpolytope: {
      if (spec.vertices.empty()) throw std::invalid_argument("vpolytope needs vertices");
      pts = spec.vertices;
      break;
    }
    case BodyKind::cube: {
      int n = 1 << spec.dim;
      for (int mask = 0; mask < n; ++mask) {
        Vec v = Vec::zero(spec.dim);
        for (int i = 0; i < spec.dim; ++i) v[i] = (mask >> i) & 1 ? 1.0 : -1.0;
        pts.push_back(v);
      }
      break;
    }
    case BodyKind::cross_polytope: {
      for (int i = 0; i < spec.dim; ++i) {
        pts.push_back(Vec::axis(spec.dim, i, 1.0));
        pts.push_back(Vec::axis(spec.dim, i, -1.0));
      }
      break;
    }
    case BodyKind::simplex: {
      pts.push_back(Vec::zero(spec.dim));
      for (int i = 0; i < spec.dim; ++i) pts.push_back(Vec::axis(spec.dim, i, 1.0));
      break;
    }
    case BodyKind::ellipsoid: {
      if (spec.dim != 3) throw std::invalid_argument("ellipsoid generator requires dim 3");
      Mat map = matrix_inv_sqrt_spd(spec.shape_matrix);
      for (const Vec& s : icosphere_vertices(spec.subdivision)) pts.push_back(map.apply(s));
      break;
    }
    case BodyKind::random_polytope: {
      if (spec.vertex_count < spec.dim + 1 || spec.vertex_count > 5000)
        throw std::invalid_argument("vertex count out of range");
      SplitMix64 rng(spec.seed);
      for (int i = 0; i < spec.vertex_count; ++i) pts.push_back(rng.unit_vector(spec.dim));
      break;
    }
    case BodyKind::perturbed: {
      if (spec.base_spec_json.empty()) throw std::invalid_argument("perturbed needs a base spec");
      ConvexBody base = generate(spec_from_json(spec.base_spec_json));
      SplitMix64 rng(spec.seed);
      // Smooth three-lobed radial field eta(v) = Im((x+iy)^3) in a seeded
      // orthonormal frame, |eta| <= 1. The field is odd and low-frequency:
      // odd content cannot be matched by any centered quadric, and smooth
      // lobes keep the perturbed vertices extreme in the hull.
      Vec fa = rng.unit_vector(base.dim);
      Vec fb;
      do {
        fb = rng.unit_vector(base.dim);
        fb -= dot(fb, fa) * fa;
      } while (norm(fb) < 1e-3);
      fb = normalized(fb);
      for (const Vec& v : base.vertices) {
        double len = norm(v);
        if (len < 1e-12) {
          pts.push_back(v);
          continue;
        }
        Vec dir = v * (1.0 / len);
        double x = dot(dir, fa);
        double y = dot(dir, fb);
        double eta = 3.0 * x * x * y - y * y * y;
        pts.push_back(v * (1.0 + spec.amplitude * eta));
      }
      break;
    }
  }
  for (Vec& p : pts) p += spec.center;
  return convex_hull(pts);
}

// ---------------------------------------------------------------------------
// JSON format, version 1.

namespace {

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.dim; ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& a, const char* field) {
  if (!a.is_array() || a.empty() || a.size() > 3)
    throw std::invalid_argument(std::string("field '") + field + "' must be an array of 1..3 numbers");
  Vec v = Vec::zero(static_cast<int>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number())
      throw std::invalid_argument(std::string("field '") + field + "' has a non-numeric coordinate at index " +
                                  std::to_string(i));
    v[static_cast<int>(i)] = a[i].get<double>();
  }
  return v;
}

json spec_to_json_obj(const BodySpec& spec) {
  json j;
  j["format"] = 1;
  j["kind"] = to_string(spec.kind);
  j["dim"] = spec.dim;
  switch (spec.kind) {
    case BodyKind::vpolytope: {
      json verts = json::array();
      for (const Vec& v : spec.vertices) verts.push_back(vec_to_json(v));
      j["vertices"] = verts;
      break;
    }
    case BodyKind::ellipsoid: {
      json q = json::array();
      for (int i = 0; i < spec.dim; ++i) {
        json row = json::array();
        for (int k = 0; k < spec.dim; ++k) row.push_back(spec.shape_matrix(i, k));
        q.push_back(row);
      }
      j["shape_matrix"] = q;
      j["subdivision"] = spec.subdivision;
      break;
    }
    case BodyKind::random_polytope:
      j["vertex_count"] = spec.vertex_count;
      j["seed"] = spec.seed;
      break;
    case BodyKind::perturbed:
      j["amplitude"] = spec.amplitude;
      j["seed"] = spec.seed;
      j["base"] = json::parse(spec.base_spec_json);
      break;
    default:
      break;
  }
  if (norm(spec.center) > 0.0) j["center"] = vec_to_json(spec.center);
  if (!spec.metadata.empty()) j["metadata"] = spec.metadata;
  return j;
}

BodySpec spec_from_json_obj(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("body file must hold a JSON object");
  if (!j.contains("format") || !j["format"].is_number_integer() || j["format"].get<int>() != 1)
    throw std::invalid_argument("field 'format' must be the integer 1");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("field 'kind' must be a string");
  BodySpec spec;
  spec.kind = body_kind_from_string(j["kind"].get<std::string>());
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw std::invalid_argument("field 'dim' must be an integer");
  spec.dim = j["dim"].get<int>();
  if (spec.dim < 1 || spec.dim > 3) throw std::invalid_argument("field 'dim' must be 1, 2 or 3");
  spec.center = Vec::zero(spec.dim);

  switch (spec.kind) {
    case BodyKind::vpolytope: {
      if (!j.contains("vertices") || !j["vertices"].is_array())
        throw std::invalid_argument("field 'vertices' must be an array");
      for (const auto& row : j["vertices"]) {
        Vec v = vec_from_json(row, "vertices");
        if (v.dim != spec.dim) throw std::invalid_argument("vertex dimension differs from 'dim'");
        spec.vertices.push_back(v);
      }
      break;
    }
    case BodyKind::ellipsoid: {
      if (!j.contains("shape_matrix") || !j["shape_matrix"].is_array())
        throw std::invalid_argument("field 'shape_matrix' must be a matrix");
      spec.shape_matrix = Mat(spec.dim);
      const auto& q = j["shape_matrix"];
      if (static_cast<int>(q.size()) != spec.dim)
        throw std::invalid_argument("field 'shape_matrix' has wrong row count");
      for (int r = 0; r < spec.dim; ++r) {
        if (!q[r].is_array() || static_cast<int>(q[r].size()) != spec.dim)
          throw std::invalid_argument("field 'shape_matrix' has wrong column count");
        for (int c = 0; c < spec.dim; ++c) {
          if (!q[r][c].is_number())
            throw std::invalid_argument("field 'shape_matrix' has a non-numeric entry");
          spec.shape_matrix(r, c) = q[r][c].get<double>();
        }
      }
      if (j.contains("subdivision")) spec.subdivision = j["subdivision"].get<int>();
      break;
    }
    case BodyKind::random_polytope:
      if (j.contains("vertex_count")) spec.vertex_count = j["vertex_count"].get<int>();
      if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
      break;
    case BodyKind::perturbed:
      if (!j.contains("amplitude") || !j["amplitude"].is_number())
        throw std::invalid_argument("field 'amplitude' must be a number");
      spec.amplitude = j["amplitude"].get<double>();
      if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
      if (!j.contains("base")) throw std::invalid_argument("field 'base' is required for perturbed");
      spec.base_spec_json = j["base"].dump();
      break;
    default:
      break;
  }
  if (j.contains("center")) spec.center = vec_from_json(j["center"], "center");
  if (spec.center.dim != spec.dim) throw std::invalid_argument("field 'center' dimension differs from 'dim'");
  if (j.contains("metadata") && j["metadata"].is_string())
    spec.metadata = j["metadata"].get<std::string>();
  return spec;
}

}  // namespace

std::string spec_to_json(const BodySpec& spec) { return spec_to_json_obj(spec).dump(2); }

BodySpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return spec_from_json_obj(j);
}

BodySpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open body file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return spec_from_json(ss.str());
}

ConvexBody load_body(const std::string& path) { return generate(load_spec(path)); }

void save_body(const ConvexBody& body, const std::string& path, const std::string& metadata) {
  BodySpec spec = BodySpec::make_vpolytope(body.vertices);
  spec.metadata = metadata;
  save_spec(spec, path);
}

void save_spec(const BodySpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << spec_to_json(spec) << "\n";
}

}  // namespace parkable
