#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parkable/body.hpp"
#include "parkable/config.hpp"

namespace parkable {

struct AnalysisOptions {
  int dirs = 512;
  std::vector<double> offsets = default_offsets();
  std::uint64_t seed = 0;
  Tolerances tol;
  /// Sample counts of the heavier predicates; the section scans use `dirs`.
  int chord_dirs = 64;
  int blaschke_dirs = 64;
  int psi_dirs = 64;
  int audit_dirs = 512;
  int involution_flags = 64;
  /// Emit per-predicate wall times. Off by default so reports stay
  /// byte-identical across runs.
  bool timings = false;
};

/// One predicate outcome. Inapplicable predicates (3D-only checks on 2D
/// bodies, gauge checks on asymmetric bodies) carry a reason instead of a
/// verdict.
struct PredicateEntry {
  std::string name;
  bool applicable = true;
  std::string skip_reason;
  bool verdict = false;
  double residual = 0.0;
  std::string witness_json;     // serialized witness list
  std::string parameters_json;  // serialized parameter echo
  double runtime_ms = 0.0;
};

struct AnalysisReport {
  std::string body_id;
  int dim = 0;
  int vertex_count = 0;
  int facet_count = 0;
  AnalysisOptions options;
  std::vector<PredicateEntry> entries;
  /// Whether the parkability scan, the section-center scan and the
  /// ellipsoid certificate agree on this body.
  bool predicates_consistent = false;
  bool all_pass = false;

  const PredicateEntry* find(const std::string& name) const;
};

/// Runs the full predicate battery. Deterministic given options.seed.
AnalysisReport analyze_body(const ConvexBody& body, const std::string& body_id,
                            const AnalysisOptions& opt = {});

/// JSON rendering of a report (format_version 1); byte-stable for fixed
/// inputs unless options.timings is set.
std::string report_to_json(const AnalysisReport& report);

}  // namespace parkable
