// Command-line front end: analyze bodies, run parking queries, render SVG
// figures, generate corpus bodies.
//
// Exit codes: 0 success, 1 predicate failure under --strict, 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "parkable/analyze.hpp"
#include "parkable/bodies_io.hpp"
#include "parkable/parkability.hpp"
#include "parkable/svg_plot.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace parkable;

double round_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

Vec parse_vec(const std::string& csv, int expect_dim) {
  std::vector<double> vals;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
  if (expect_dim > 0 && static_cast<int>(vals.size()) != expect_dim)
    throw std::invalid_argument("expected " + std::to_string(expect_dim) + " comma-separated numbers");
  if (vals.empty() || vals.size() > 3) throw std::invalid_argument("expected 1..3 numbers");
  Vec v = Vec::zero(static_cast<int>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<int>(i)] = vals[i];
  return v;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text;
  }
}

struct TolFlags {
  std::optional<double> geom, lp, section, symmetry, collinearity, coplanarity, involution,
      ellipsoid, surface, blaschke, projection_norm;

  void apply(Tolerances& t) const {
    if (geom) t.eps_geom = *geom;
    if (lp) t.eps_lp = *lp;
    if (section) t.eps_section_rel = *section;
    if (symmetry) t.symmetry_tol = *symmetry;
    if (collinearity) t.collinearity_tol = *collinearity;
    if (coplanarity) t.coplanarity_tol = *coplanarity;
    if (involution) t.involution_tol = *involution;
    if (ellipsoid) t.ellipsoid_tol = *ellipsoid;
    if (surface) t.surface_tol = *surface;
    if (blaschke) t.blaschke_tol = *blaschke;
    if (projection_norm) t.projection_norm_tol = *projection_norm;
  }
};

void add_tol_flags(CLI::App* cmd, TolFlags& f) {
  cmd->add_option("--tol-geom", f.geom, "absolute incidence tolerance");
  cmd->add_option("--tol-lp", f.lp, "LP feasibility tolerance");
  cmd->add_option("--tol-section", f.section, "relative degenerate-section threshold");
  cmd->add_option("--tol-symmetry", f.symmetry, "relative symmetry residual threshold");
  cmd->add_option("--tol-collinearity", f.collinearity, "relative collinearity threshold");
  cmd->add_option("--tol-coplanarity", f.coplanarity, "relative coplanarity threshold");
  cmd->add_option("--tol-involution", f.involution, "angular involution tolerance");
  cmd->add_option("--tol-ellipsoid", f.ellipsoid, "quadric fit residual threshold");
  cmd->add_option("--tol-surface", f.surface, "quadric surface consistency threshold");
  cmd->add_option("--tol-blaschke", f.blaschke, "relative Blaschke planarity threshold");
  cmd->add_option("--tol-projection-norm", f.projection_norm, "projection norm slack over 1");
}

int run(int argc, char** argv) {
  CLI::App app{"convex-body parkability and ellipsoid analysis"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "run the predicate battery on a body file");
  std::string body_path, out_path, format = "json", offsets_csv;
  AnalysisOptions opt;
  bool strict = false;
  TolFlags tol_flags;
  analyze->add_option("body", body_path, "body JSON file")->required();
  analyze->add_option("--dirs", opt.dirs, "direction sample count");
  analyze->add_option("--offsets", offsets_csv, "comma-separated offset fractions");
  analyze->add_option("--seed", opt.seed, "sampling seed");
  analyze->add_option("--chord-dirs", opt.chord_dirs, "chord-midpoint direction count");
  analyze->add_option("--blaschke-dirs", opt.blaschke_dirs, "weak-Blaschke direction count");
  analyze->add_option("--psi-dirs", opt.psi_dirs, "supporting-cone direction count");
  analyze->add_option("--audit-dirs", opt.audit_dirs, "projection audit direction count");
  analyze->add_flag("--strict", strict, "exit 1 when any predicate fails");
  analyze->add_flag("--timings", opt.timings, "include per-predicate wall times");
  analyze->add_option("--out", out_path, "write the report here instead of stdout");
  analyze->add_option("--format", format, "output format (json)");
  add_tol_flags(analyze, tol_flags);

  // park
  auto* parkc = app.add_subcommand("park", "park body C inside body B");
  std::string c_path, b_path, park_out;
  TolFlags park_tol;
  parkc->add_option("C", c_path, "body to park (JSON file)")->required();
  parkc->add_option("B", b_path, "container body (JSON file)")->required();
  parkc->add_option("--out", park_out, "write the result here instead of stdout");
  add_tol_flags(parkc, park_tol);

  // plot
  auto* plot = app.add_subcommand("plot", "render a section or silhouette SVG");
  std::string plot_body, plot_out, plane_csv, sil_csv;
  plot->add_option("body", plot_body, "body JSON file")->required();
  plot->add_option("--plane", plane_csv, "nx,ny,nz,offset of the section plane");
  plot->add_option("--silhouette", sil_csv, "dx,dy,dz view direction");
  plot->add_option("--out", plot_out, "write the SVG here instead of stdout");

  // generate
  auto* gen = app.add_subcommand("generate", "write a generator body spec");
  std::string gen_kind, gen_out, shape_csv, center_csv;
  int gen_dim = 3, gen_subdiv = 3, gen_count = 64;
  std::uint64_t gen_seed = 0;
  double gen_amp = 0.05;
  gen->add_option("kind", gen_kind,
                  "cube | cross_polytope | simplex | ellipsoid | random_polytope | perturbed")
      ->required();
  gen->add_option("--out", gen_out, "output file");
  gen->add_option("--dim", gen_dim, "ambient dimension");
  gen->add_option("--subdivision", gen_subdiv, "sphere mesh subdivision (ellipsoid)");
  gen->add_option("--shape", shape_csv, "q11,q22,q33 diagonal shape matrix (ellipsoid)");
  gen->add_option("--center", center_csv, "translation applied after generation");
  gen->add_option("--count", gen_count, "vertex count (random_polytope)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--amplitude", gen_amp, "radial amplitude (perturbed)");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) {
    tol_flags.apply(opt.tol);
    if (!offsets_csv.empty()) {
      opt.offsets.clear();
      std::stringstream ss(offsets_csv);
      std::string item;
      while (std::getline(ss, item, ',')) opt.offsets.push_back(std::stod(item));
    }
    if (format != "json") throw std::invalid_argument("unsupported format: " + format);
    ConvexBody body = load_body(body_path);
    AnalysisReport rep = analyze_body(body, body_path, opt);
    emit(report_to_json(rep), out_path);
    if (strict && !rep.all_pass) return 1;
    return 0;
  }

  if (parkc->parsed()) {
    ParkOptions popt;
    park_tol.apply(popt.tol);
    ConvexBody c = load_body(c_path);
    ConvexBody b = load_body(b_path);
    ParkResult pr = park(c, b, popt);
    json j;
    j["feasible"] = pr.feasible;
    if (pr.witness) {
      json w = json::array();
      for (int i = 0; i < pr.witness->dim; ++i) w.push_back(round_sig((*pr.witness)[i], 12));
      j["witness"] = w;
    }
    j["margin"] = pr.margin;
    emit(j.dump(2) + "\n", park_out);
    return 0;
  }

  if (plot->parsed()) {
    ConvexBody body = load_body(plot_body);
    if (plane_csv.empty() == sil_csv.empty())
      throw std::invalid_argument("pass exactly one of --plane or --silhouette");
    std::string svg;
    if (!plane_csv.empty()) {
      std::vector<double> vals;
      std::stringstream ss(plane_csv);
      std::string item;
      while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
      if (static_cast<int>(vals.size()) != body.dim + 1)
        throw std::invalid_argument("--plane needs dim normal components plus an offset");
      Vec n = Vec::zero(body.dim);
      for (int i = 0; i < body.dim; ++i) n[i] = vals[i];
      svg = render_section_svg(body, n, vals[body.dim]);
    } else {
      svg = render_silhouette_svg(body, parse_vec(sil_csv, body.dim));
    }
    emit(svg, plot_out);
    return 0;
  }

  if (gen->parsed()) {
    BodySpec spec;
    BodyKind kind = body_kind_from_string(gen_kind);
    switch (kind) {
      case BodyKind::cube:
        spec = BodySpec::make_cube(gen_dim);
        break;
      case BodyKind::cross_polytope:
        spec = BodySpec::make_cross_polytope(gen_dim);
        break;
      case BodyKind::simplex:
        spec = BodySpec::make_simplex(gen_dim);
        break;
      case BodyKind::ellipsoid: {
        Mat q = Mat::identity(3);
        if (!shape_csv.empty()) {
          Vec d = parse_vec(shape_csv, 3);
          for (int i = 0; i < 3; ++i) q(i, i) = d[i];
        }
        spec = BodySpec::make_ellipsoid(q, gen_subdiv);
        break;
      }
      case BodyKind::random_polytope:
        spec = BodySpec::make_random(gen_count, gen_seed, gen_dim);
        break;
      case BodyKind::perturbed: {
        Mat q = Mat::identity(3);
        if (!shape_csv.empty()) {
          Vec d = parse_vec(shape_csv, 3);
          for (int i = 0; i < 3; ++i) q(i, i) = d[i];
        }
        spec = BodySpec::make_perturbed_ellipsoid(q, gen_amp, gen_seed, gen_subdiv);
        break;
      }
      default:
        throw std::invalid_argument("generate does not support kind " + gen_kind);
    }
    if (!center_csv.empty()) spec.center = parse_vec(center_csv, spec.dim);
    std::string text = spec_to_json(spec) + "\n";
    emit(text, gen_out);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
