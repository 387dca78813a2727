#include "parkable/analyze.hpp"

#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>

#include "parkable/banach.hpp"
#include "parkable/illumination.hpp"
#include "parkable/parkability.hpp"
#include "parkable/sampling.hpp"
#include "parkable/symmetry.hpp"

namespace parkable {

namespace {

using json = nlohmann::ordered_json;

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.dim; ++i) a.push_back(v[i]);
  return a;
}

class StopWatch {
 public:
  StopWatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct EntryBuilder {
  PredicateEntry entry;
  StopWatch watch;

  explicit EntryBuilder(std::string name) { entry.name = std::move(name); }

  PredicateEntry done() {
    entry.runtime_ms = watch.ms();
    return entry;
  }
  PredicateEntry skip(const std::string& why) {
    entry.applicable = false;
    entry.skip_reason = why;
    entry.runtime_ms = watch.ms();
    return entry;
  }
};

}  // namespace

const PredicateEntry* AnalysisReport::find(const std::string& name) const {
  for (const PredicateEntry& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

AnalysisReport analyze_body(const ConvexBody& body, const std::string& body_id,
                            const AnalysisOptions& opt) {
  AnalysisReport rep;
  rep.body_id = body_id;
  rep.dim = body.dim;
  rep.vertex_count = static_cast<int>(body.vertices.size());
  rep.facet_count = static_cast<int>(body.facets.size());
  rep.options = opt;

  const Tolerances& tol = opt.tol;
  ParkOptions park_opt;
  park_opt.tol = tol;

  // Symmetry center.
  SymmetryReport sym;
  {
    EntryBuilder b("symmetry_center");
    sym = symmetry_center(body, tol);
    b.entry.verdict = sym.center.has_value();
    b.entry.residual = sym.residual;
    json w = json::array();
    w.push_back({{"candidate_center", vec_json(sym.candidate)}});
    b.entry.witness_json = w.dump();
    rep.entries.push_back(b.done());
  }
  bool symmetric = sym.center.has_value() && norm(*sym.center) <=
                                                 tol.symmetry_tol * std::max(body.diameter, 1e-12);

  bool origin_interior =
      body.is_body() &&
      body.facet_violation(Vec::zero(body.dim)) < -tol.eps_geom * (1.0 + body.diameter);

  if (body.dim == 2) {
    EntryBuilder b("supporting_chord_criterion");
    if (!origin_interior) {
      rep.entries.push_back(b.skip("origin not interior"));
    } else {
      SupportingChordResult r = supporting_chord_criterion(body, std::max(90, opt.dirs / 2), tol);
      b.entry.verdict = r.pass;
      json w = json::array();
      if (r.witness) w.push_back({{"direction", vec_json(*r.witness)}});
      b.entry.witness_json = w.dump();
      rep.entries.push_back(b.done());
    }
  }

  bool scan_centers_pass = false, scan_park_pass = false, certify_pass = false;
  bool scan_centers_ran = false, scan_park_ran = false, certify_ran = false;

  if (body.dim == 3) {
    // Section-center collinearity over sampled directions.
    {
      EntryBuilder b("section_center_collinearity");
      if (!symmetric) {
        rep.entries.push_back(b.skip("body not centrally symmetric"));
      } else if (body.flat()) {
        rep.entries.push_back(b.skip("body is flat"));
      } else {
        scan_centers_ran = true;
        bool all_ok = true;
        double worst = 0.0;
        json witnesses = json::array();
        for (const Vec& u : unit_directions(3, opt.dirs)) {
          SectionCenterLine scl = section_center_line(body, u, opt.offsets, tol, false);
          worst = std::max(worst, scl.collinearity_residual);
          if (!scl.ok) {
            all_ok = false;
            if (witnesses.size() < 8) {
              json w;
              w["direction"] = vec_json(u);
              if (scl.centerless_offset) {
                w["failure"] = "centerless_section";
                w["offset_fraction"] = *scl.centerless_offset;
                w["center_residual"] = scl.worst_center_residual;
              } else {
                w["failure"] = "centers_not_collinear";
                w["collinearity_residual"] = scl.collinearity_residual;
              }
              witnesses.push_back(w);
            }
          }
        }
        b.entry.verdict = all_ok;
        b.entry.residual = worst;
        b.entry.witness_json = witnesses.dump();
        scan_centers_pass = all_ok;
        rep.entries.push_back(b.done());
      }
    }

    // Section parkability scan.
    {
      EntryBuilder b("section_parkability");
      if (!origin_interior) {
        rep.entries.push_back(b.skip("origin not interior"));
      } else {
        scan_park_ran = true;
        SectionParkabilityScan scan =
            section_parkability_scan(body, opt.dirs, opt.offsets, park_opt);
        b.entry.verdict = scan.pass;
        b.entry.residual =
            scan.sections_tested > 0
                ? static_cast<double>(scan.failures.size()) / scan.sections_tested
                : 0.0;
        json w = json::array();
        for (size_t i = 0; i < scan.failures.size() && i < 8; ++i)
          w.push_back({{"direction", vec_json(scan.failures[i].direction)},
                       {"offset_fraction", scan.failures[i].offset_fraction}});
        b.entry.witness_json = w.dump();
        json params;
        params["sections_tested"] = scan.sections_tested;
        params["degenerate_skipped"] = scan.degenerate_skipped;
        params["failures"] = scan.failures.size();
        b.entry.parameters_json = params.dump();
        scan_park_pass = scan.pass;
        rep.entries.push_back(b.done());
      }
    }

    // Chord-midpoint coplanarity.
    {
      EntryBuilder b("chord_midpoint_coplanarity");
      if (!symmetric) {
        rep.entries.push_back(b.skip("body not centrally symmetric"));
      } else if (body.flat()) {
        rep.entries.push_back(b.skip("body is flat"));
      } else {
        bool all_ok = true;
        double worst = 0.0;
        json witnesses = json::array();
        for (const Vec& d : unit_directions(3, opt.chord_dirs)) {
          ChordMidpointPlane cmp = chord_midpoint_plane(body, d, 16, tol, false);
          worst = std::max(worst, cmp.coplanarity_residual);
          if (!cmp.ok && witnesses.size() < 8)
            witnesses.push_back({{"direction", vec_json(d)},
                                 {"coplanarity_residual", cmp.coplanarity_residual}});
          all_ok = all_ok && cmp.ok;
        }
        b.entry.verdict = all_ok;
        b.entry.residual = worst;
        b.entry.witness_json = witnesses.dump();
        rep.entries.push_back(b.done());
      }
    }

    // Projection norm audit.
    {
      EntryBuilder b("projection_norm_audit");
      if (!symmetric || !origin_interior) {
        rep.entries.push_back(b.skip(!symmetric ? "gauge undefined: body not centrally symmetric"
                                                : "origin not interior"));
      } else {
        Gauge g = make_gauge(body, tol);
        ProjectionNormAudit audit = projection_norm_audit(g, opt.audit_dirs, tol);
        b.entry.verdict = audit.max_norm <= 1.0 + tol.projection_norm_tol;
        b.entry.residual = audit.max_norm;
        json w = json::array();
        w.push_back({{"direction", vec_json(audit.witness_direction)},
                     {"rank", audit.witness_rank},
                     {"norm", audit.max_norm}});
        b.entry.witness_json = w.dump();
        rep.entries.push_back(b.done());
      }
    }

    // Weak Blaschke planes at sampled directions.
    {
      EntryBuilder b("weak_blaschke");
      if (!body.is_body()) {
        rep.entries.push_back(b.skip("not a full-dimensional body"));
      } else {
        bool all_ok = true;
        double worst = 0.0;
        json witnesses = json::array();
        for (const Vec& d : fibonacci_sphere(opt.blaschke_dirs)) {
          WeakBlaschkeResult r = weak_blaschke_test(body, d, {}, tol);
          worst = std::max(worst, r.residual);
          if (!r.verdict) {
            all_ok = false;
            if (witnesses.size() < 8)
              witnesses.push_back({{"direction", vec_json(d)}, {"residual", r.residual}});
          }
        }
        b.entry.verdict = all_ok;
        b.entry.residual = worst;
        b.entry.witness_json = witnesses.dump();
        rep.entries.push_back(b.done());
      }
    }

    // Dual Blaschke supporting cones.
    {
      EntryBuilder b("dual_blaschke");
      if (!origin_interior) {
        rep.entries.push_back(b.skip("origin not interior"));
      } else {
        DualBlaschkeCheck r = dual_blaschke_check(body, opt.psi_dirs, tol);
        b.entry.verdict = r.all_nonempty;
        b.entry.residual =
            r.tested > 0 ? static_cast<double>(r.empty_directions.size()) / r.tested : 0.0;
        json w = json::array();
        for (size_t i = 0; i < r.empty_directions.size() && i < 8; ++i)
          w.push_back({{"direction", vec_json(r.empty_directions[i])}});
        b.entry.witness_json = w.dump();
        rep.entries.push_back(b.done());
      }
    }

    // Ellipsoid certificate.
    {
      EntryBuilder b("ellipsoid_certificate");
      if (!symmetric || !origin_interior) {
        rep.entries.push_back(b.skip(!symmetric ? "body not centrally symmetric"
                                                : "origin not interior"));
      } else {
        certify_ran = true;
        EllipsoidCertificate cert = ellipsoid_certify(body, tol);
        b.entry.verdict = cert.verdict;
        b.entry.residual = std::max(cert.vertex_residual, cert.surface_residual);
        json w = json::array();
        json q = json::array();
        for (int i = 0; i < 3; ++i) {
          json row = json::array();
          for (int j = 0; j < 3; ++j) row.push_back(cert.shape_matrix(i, j));
          q.push_back(row);
        }
        w.push_back({{"shape_matrix", q},
                     {"vertex_residual", cert.vertex_residual},
                     {"surface_residual", cert.surface_residual},
                     {"positive_definite", cert.positive_definite}});
        b.entry.witness_json = w.dump();
        certify_pass = cert.verdict;
        rep.entries.push_back(b.done());
      }
    }
  }

  // Equivalence summary: asymmetric bodies fail all three predicates by
  // convention (a centerless body is neither an ellipsoid nor passes the
  // section predicates).
  bool p_ii = scan_centers_ran ? scan_centers_pass : false;
  bool p_iii = scan_park_ran ? scan_park_pass : false;
  bool p_i = certify_ran ? certify_pass : false;
  rep.predicates_consistent = (p_ii == p_iii) && (p_iii == p_i);

  rep.all_pass = true;
  for (const PredicateEntry& e : rep.entries)
    if (e.applicable && !e.verdict) rep.all_pass = false;
  return rep;
}

std::string report_to_json(const AnalysisReport& rep) {
  json j;
  j["format_version"] = 1;
  j["body_id"] = rep.body_id;
  j["dim"] = rep.dim;
  j["vertex_count"] = rep.vertex_count;
  j["facet_count"] = rep.facet_count;

  json cfg;
  cfg["dirs"] = rep.options.dirs;
  cfg["offsets"] = rep.options.offsets;
  cfg["seed"] = rep.options.seed;
  cfg["chord_dirs"] = rep.options.chord_dirs;
  cfg["blaschke_dirs"] = rep.options.blaschke_dirs;
  cfg["psi_dirs"] = rep.options.psi_dirs;
  cfg["audit_dirs"] = rep.options.audit_dirs;
  json t;
  t["eps_geom"] = rep.options.tol.eps_geom;
  t["eps_lp"] = rep.options.tol.eps_lp;
  t["eps_section_rel"] = rep.options.tol.eps_section_rel;
  t["symmetry_tol"] = rep.options.tol.symmetry_tol;
  t["collinearity_tol"] = rep.options.tol.collinearity_tol;
  t["coplanarity_tol"] = rep.options.tol.coplanarity_tol;
  t["involution_tol"] = rep.options.tol.involution_tol;
  t["ellipsoid_tol"] = rep.options.tol.ellipsoid_tol;
  t["surface_tol"] = rep.options.tol.surface_tol;
  t["blaschke_tol"] = rep.options.tol.blaschke_tol;
  t["projection_norm_tol"] = rep.options.tol.projection_norm_tol;
  t["silhouette_band_rel"] = rep.options.tol.silhouette_band_rel;
  t["support_travel_rel"] = rep.options.tol.support_travel_rel;
  t["support_dir_tol"] = rep.options.tol.support_dir_tol;
  cfg["tolerances"] = t;
  j["config"] = cfg;

  json preds = json::array();
  for (const PredicateEntry& e : rep.entries) {
    json p;
    p["name"] = e.name;
    p["applicable"] = e.applicable;
    if (!e.applicable) {
      p["skip_reason"] = e.skip_reason;
    } else {
      p["verdict"] = e.verdict;
      p["residual"] = e.residual;
      p["witnesses"] = e.witness_json.empty() ? json::array() : json::parse(e.witness_json);
      if (!e.parameters_json.empty()) p["parameters"] = json::parse(e.parameters_json);
    }
    if (rep.options.timings) p["runtime_ms"] = e.runtime_ms;
    preds.push_back(p);
  }
  j["predicates"] = preds;
  j["predicates_consistent"] = rep.predicates_consistent;
  j["all_pass"] = rep.all_pass;
  return j.dump(2) + "\n";
}

}  // namespace parkable
