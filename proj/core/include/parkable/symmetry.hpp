#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parkable/body.hpp"
#include "parkable/config.hpp"

namespace parkable {

/// Candidate symmetry center with its scaled support-mismatch residual.
/// `center` is present only when the residual clears the symmetry tolerance;
/// `candidate` always carries the solved point.
struct SymmetryReport {
  std::optional<Vec> center;
  double residual = 0.0;  // hausdorff(K, 2p - K) / diameter(K)
  Vec candidate;
};

/// Solves the center from support differences along the coordinate axes and
/// validates it over all facet normals plus a direction sample.
SymmetryReport symmetry_center(const ConvexBody& k, const Tolerances& tol = {},
                               int sample_dirs = 512);

struct SectionCenterLine {
  bool ok = false;
  std::optional<AffineSubspace> line;  // through the origin
  double collinearity_residual = 0.0;  // max center-to-line distance / diameter
  /// First offset fraction whose section lacks a center, if any. Kept apart
  /// from collinearity failures; the two mean different things.
  std::optional<double> centerless_offset;
  double worst_center_residual = 0.0;
  int sections_used = 0;
  int degenerate_skipped = 0;
  std::vector<Vec> centers;  // ambient coordinates
};

/// Centers of the parallel sections orthogonal to `dir`, with the
/// least-squares line through them. Precondition: b centrally symmetric
/// (checked unless check_symmetry is false).
SectionCenterLine section_center_line(const ConvexBody& b, const Vec& dir,
                                      const std::vector<double>& offsets,
                                      const Tolerances& tol = {},
                                      bool check_symmetry = true);

struct ChordMidpointPlane {
  bool ok = false;
  Vec normal;  // plane through 0 with this normal
  double coplanarity_residual = 0.0;
  int chords_used = 0;
};

/// Midpoints of the chords of b parallel to `line_dir`, sampled over a grid
/// of the projection shadow, with the least-squares plane through 0.
ChordMidpointPlane chord_midpoint_plane(const ConvexBody& b, const Vec& line_dir,
                                        int grid = 16, const Tolerances& tol = {},
                                        bool check_symmetry = true);

/// The conjugate-subspace map: full space -> {0}, plane -> line of section
/// centers, line -> plane of chord midpoints, {0} -> full space.
struct ConjugateSubspace {
  AffineSubspace subspace;
  double residual = 0.0;
};

ConjugateSubspace subspace_prime(const ConvexBody& b, const AffineSubspace& s,
                                 const Tolerances& tol = {});

struct InvolutionAudit {
  int flags_tested = 0;
  int reversal_violations = 0;
  int involution_violations = 0;
  int intersection_violations = 0;
  double max_reversal_angle = 0.0;    // H' direction out of the L' plane
  double max_involution_angle = 0.0;  // angle(H'', H)
};

/// Samples random flags L inside H and audits inclusion reversal, the
/// double-prime identity and trivial intersection of the conjugate map.
InvolutionAudit involution_audit(const ConvexBody& b, int n_flags, std::uint64_t seed,
                                 const Tolerances& tol = {});

struct SupportingChordResult {
  bool pass = false;
  std::optional<Vec> witness;  // first failing direction
  int tested = 0;
};

/// 2D criterion: for each sampled direction the hull of the two opposite
/// supporting-line contact sets must contain the origin.
SupportingChordResult supporting_chord_criterion(const ConvexBody& b2, int n_dirs = 360,
                                                 const Tolerances& tol = {});

struct ProjectionCenterCheck {
  bool consistent = false;
  bool body_has_center = false;
  int projections_with_center = 0;
  int projections_tested = 0;
  std::optional<Vec> witness_direction;
  double max_center_mismatch = 0.0;  // relative to diameter
};

/// Cross-validates the center of a 3D body against the centers of its 2D
/// projections over sampled plane directions.
ProjectionCenterCheck projection_center_check(const ConvexBody& b, int n_dirs = 64,
                                              const Tolerances& tol = {});

}  // namespace parkable
