#pragma once

#include <optional>
#include <vector>

#include "parkable/vec.hpp"

namespace parkable {

/// Closed halfspace { x : normal . x <= offset }.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

enum class LpStatus { feasible, infeasible };

struct FeasibilityResult {
  LpStatus status = LpStatus::infeasible;
  std::optional<Vec> witness;
  /// Signed distance to feasibility under unit-normalized constraints:
  /// positive for infeasible systems (minimax violation), non-positive for
  /// feasible ones (depth of the returned witness). Capped at +-kMarginCap
  /// when the region is unbounded in depth.
  double margin = 0.0;

  bool feasible() const { return status == LpStatus::feasible; }
};

inline constexpr double kMarginCap = 1e9;

/// Decides nonemptiness of the intersection of halfspaces with a dense
/// two-phase simplex (Dantzig pricing, Bland anti-cycling fallback after
/// degenerate stalling). Deterministic for fixed input order. The witness of
/// a feasible system is the minimax-deep point, so it is strictly interior
/// whenever the region has interior.
FeasibilityResult lp_feasible(const std::vector<Halfspace>& constraints,
                              int dim, double eps_lp = 1e-9);

/// Feasibility check only: phase one of the simplex, no depth optimization.
/// Cheaper on large systems; witness is an arbitrary feasible point.
FeasibilityResult lp_feasible_fast(const std::vector<Halfspace>& constraints,
                                   int dim, double eps_lp = 1e-9);

/// max { objective . x : constraints } for bounded problems.
/// Returns nullopt when infeasible; throws when unbounded.
std::optional<Vec> lp_maximize(const std::vector<Halfspace>& constraints,
                               const Vec& objective, double eps_lp = 1e-9);

}  // namespace parkable
