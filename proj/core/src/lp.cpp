#include "parkable/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace parkable {

namespace {

constexpr double kPivotEps = 1e-11;

// Dense simplex tableau for
//   min c . xi   s.t.  A xi = b,  xi >= 0,  b >= 0,
// built from halfspace systems with free variables split into +/- parts.
// Dantzig pricing with a permanent switch to Bland's rule after a run of
// degenerate pivots, which guarantees termination.
class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows, -1) {}

  double& at(int i, int j) { return t_[i * (n_ + 1) + j]; }
  double at(int i, int j) const { return t_[i * (n_ + 1) + j]; }
  double& rhs(int i) { return t_[i * (n_ + 1) + n_]; }
  double& obj(int j) { return t_[m_ * (n_ + 1) + j]; }
  double& obj_rhs() { return t_[m_ * (n_ + 1) + n_]; }

  int rows() const { return m_; }
  int cols() const { return n_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int pr, int pc) {
    double inv = 1.0 / at(pr, pc);
    for (int j = 0; j <= n_; ++j) t_[pr * (n_ + 1) + j] *= inv;
    at(pr, pc) = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == pr) continue;
      double f = at(i, pc);
      if (std::fabs(f) < kPivotEps) {
        at(i, pc) = 0.0;
        continue;
      }
      for (int j = 0; j <= n_; ++j) t_[i * (n_ + 1) + j] -= f * t_[pr * (n_ + 1) + j];
      at(i, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  // Minimize the current objective row. `allowed` masks enterable columns.
  // Returns false if unbounded.
  bool solve(const std::vector<char>& allowed, double eps) {
    int degenerate_run = 0;
    bool bland = false;
    for (long iter = 0;; ++iter) {
      int enter = -1;
      double best = -eps;
      for (int j = 0; j < n_; ++j) {
        if (!allowed[j]) continue;
        double r = obj(j);
        if (bland) {
          if (r < -eps) {
            enter = j;
            break;
          }
        } else if (r < best) {
          best = r;
          enter = j;
        }
      }
      if (enter < 0) return true;  // optimal

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        double a = at(i, enter);
        if (a > kPivotEps) {
          double ratio = rhs(i) / a;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded

      if (best_ratio < 1e-12) {
        if (++degenerate_run > 50) bland = true;
      } else {
        degenerate_run = 0;
      }
      pivot(leave, enter);
      if (iter > 20000L * (m_ + n_)) throw std::runtime_error("simplex iteration limit");
    }
  }

 private:
  int m_, n_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

struct NormalizedSystem {
  std::vector<Vec> normals;   // unit length
  std::vector<double> offsets;
  bool trivially_infeasible = false;
  double trivial_violation = 0.0;
};

NormalizedSystem normalize(const std::vector<Halfspace>& cs, int dim) {
  NormalizedSystem s;
  s.normals.reserve(cs.size());
  s.offsets.reserve(cs.size());
  for (const Halfspace& h : cs) {
    if (!is_finite(h.normal) || !std::isfinite(h.offset))
      throw std::invalid_argument("non-finite constraint");
    if (h.normal.dim != dim) throw std::invalid_argument("constraint dimension mismatch");
    double len = norm(h.normal);
    if (len < 1e-13) {
      // 0 . x <= b : vacuous if b >= 0, impossible otherwise.
      if (h.offset < 0.0) {
        s.trivially_infeasible = true;
        s.trivial_violation = std::max(s.trivial_violation, -h.offset);
      }
      continue;
    }
    s.normals.push_back(h.normal * (1.0 / len));
    s.offsets.push_back(h.offset / len);
  }
  return s;
}

// Builds the phase-1 tableau for rows n_i . x (+ s coefficient cs_i) <= b_i.
// Columns: x+/x- (2*dim), optional s+/s- (2), slacks (m), artificials.
struct Phase1 {
  Tableau tab;
  int dim;
  bool with_margin;
  int slack0, art0, n_art;
  std::vector<char> allowed;

  Phase1(const NormalizedSystem& sys, int d, bool margin, double margin_cap)
      : tab(static_cast<int>(sys.normals.size()) + (margin ? 1 : 0),
            2 * d + (margin ? 2 : 0) + static_cast<int>(sys.normals.size()) + (margin ? 1 : 0) +
                count_art(sys, margin)),
        dim(d),
        with_margin(margin) {
    int m = static_cast<int>(sys.normals.size()) + (margin ? 1 : 0);
    int base = 2 * d + (margin ? 2 : 0);
    slack0 = base;
    art0 = slack0 + m;
    n_art = 0;

    for (int i = 0; i < m; ++i) {
      Vec n;
      double b;
      double s_coef = 0.0;
      if (i < static_cast<int>(sys.normals.size())) {
        n = sys.normals[i];
        b = sys.offsets[i];
        s_coef = margin ? -1.0 : 0.0;  // n.x - s <= b
      } else {
        // margin cap row: -s <= cap
        n = Vec::zero(d);
        b = margin_cap;
        s_coef = -1.0;
      }
      double sign = (b >= 0.0) ? 1.0 : -1.0;
      for (int k = 0; k < d; ++k) {
        tab.at(i, 2 * k) = sign * n[k];
        tab.at(i, 2 * k + 1) = -sign * n[k];
      }
      if (margin) {
        tab.at(i, 2 * d) = sign * s_coef;       // s+
        tab.at(i, 2 * d + 1) = -sign * s_coef;  // s-
      }
      tab.at(i, slack0 + i) = sign;
      tab.rhs(i) = sign * b;
      if (sign > 0.0) {
        tab.basis()[i] = slack0 + i;
      } else {
        tab.at(i, art0 + n_art) = 1.0;
        tab.basis()[i] = art0 + n_art;
        ++n_art;
      }
    }

    allowed.assign(tab.cols(), 0);
    for (int j = 0; j < art0 + n_art; ++j) allowed[j] = 1;

    // Phase-1 reduced costs: c_j minus the sum over artificial-basic rows.
    for (int i = 0; i < m; ++i) {
      if (tab.basis()[i] < art0) continue;
      for (int j = 0; j < tab.cols(); ++j) tab.obj(j) -= tab.at(i, j);
      tab.obj_rhs() -= tab.rhs(i);
    }
    for (int a = 0; a < n_art; ++a) tab.obj(art0 + a) += 1.0;
  }

  static int count_art(const NormalizedSystem& sys, bool margin) {
    (void)margin;  // the cap row has positive rhs and never needs an artificial
    int n = 0;
    for (double b : sys.offsets)
      if (b < 0.0) ++n;
    return n + 1;
  }

  double infeasibility() { return -tab.obj_rhs(); }

  Vec solution() {
    Vec x = Vec::zero(dim);
    for (int i = 0; i < tab.rows(); ++i) {
      int b = tab.basis()[i];
      if (b < 2 * dim) {
        int k = b / 2;
        x[k] += (b % 2 == 0) ? tab.rhs(i) : -tab.rhs(i);
      }
    }
    return x;
  }

  double margin_value() {
    double s = 0.0;
    for (int i = 0; i < tab.rows(); ++i) {
      int b = tab.basis()[i];
      if (b == 2 * dim) s += tab.rhs(i);
      if (b == 2 * dim + 1) s -= tab.rhs(i);
    }
    return s;
  }
};

}  // namespace

FeasibilityResult lp_feasible_fast(const std::vector<Halfspace>& constraints, int dim,
                                   double eps_lp) {
  NormalizedSystem sys = normalize(constraints, dim);
  if (sys.trivially_infeasible)
    return {LpStatus::infeasible, std::nullopt, sys.trivial_violation};
  if (sys.normals.empty()) return {LpStatus::feasible, Vec::zero(dim), -kMarginCap};

  Phase1 p(sys, dim, /*margin=*/false, 0.0);
  if (!p.tab.solve(p.allowed, eps_lp)) throw std::runtime_error("phase-1 unbounded");
  double infeas = p.infeasibility();
  if (infeas > eps_lp) return {LpStatus::infeasible, std::nullopt, infeas};
  return {LpStatus::feasible, p.solution(), 0.0};
}

FeasibilityResult lp_feasible(const std::vector<Halfspace>& constraints, int dim,
                              double eps_lp) {
  NormalizedSystem sys = normalize(constraints, dim);
  if (sys.trivially_infeasible)
    return {LpStatus::infeasible, std::nullopt, sys.trivial_violation};
  if (sys.normals.empty()) return {LpStatus::feasible, Vec::zero(dim), -kMarginCap};

  Phase1 p(sys, dim, /*margin=*/true, kMarginCap);
  if (!p.tab.solve(p.allowed, eps_lp)) throw std::runtime_error("phase-1 unbounded");
  if (p.infeasibility() > eps_lp)
    throw std::runtime_error("margin system unexpectedly infeasible");

  // Phase 2: minimize s = s+ - s-. Bar artificial columns from entering.
  std::vector<char> allowed = p.allowed;
  for (int j = p.art0; j < p.tab.cols(); ++j) allowed[j] = 0;
  for (int j = 0; j <= p.tab.cols(); ++j) p.tab.obj(j) = 0.0;
  std::vector<double> cost(p.tab.cols(), 0.0);
  cost[2 * dim] = 1.0;
  cost[2 * dim + 1] = -1.0;
  for (int j = 0; j < p.tab.cols(); ++j) p.tab.obj(j) = cost[j];
  p.tab.obj_rhs() = 0.0;
  for (int i = 0; i < p.tab.rows(); ++i) {
    double cb = cost[p.tab.basis()[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j < p.tab.cols(); ++j) p.tab.obj(j) -= cb * p.tab.at(i, j);
    p.tab.obj_rhs() -= cb * p.tab.rhs(i);
  }
  if (!p.tab.solve(allowed, eps_lp)) throw std::runtime_error("margin LP unbounded");

  double margin = p.margin_value();
  if (margin > eps_lp) return {LpStatus::infeasible, std::nullopt, margin};
  return {LpStatus::feasible, p.solution(), margin};
}

std::optional<Vec> lp_maximize(const std::vector<Halfspace>& constraints, const Vec& objective,
                               double eps_lp) {
  int dim = objective.dim;
  NormalizedSystem sys = normalize(constraints, dim);
  if (sys.trivially_infeasible) return std::nullopt;

  Phase1 p(sys, dim, /*margin=*/false, 0.0);
  if (!p.tab.solve(p.allowed, eps_lp)) throw std::runtime_error("phase-1 unbounded");
  if (p.infeasibility() > eps_lp) return std::nullopt;

  std::vector<char> allowed = p.allowed;
  for (int j = p.art0; j < p.tab.cols(); ++j) allowed[j] = 0;
  std::vector<double> cost(p.tab.cols(), 0.0);
  for (int k = 0; k < dim; ++k) {
    cost[2 * k] = -objective[k];  // maximize = minimize negation
    cost[2 * k + 1] = objective[k];
  }
  for (int j = 0; j < p.tab.cols(); ++j) p.tab.obj(j) = cost[j];
  p.tab.obj_rhs() = 0.0;
  for (int i = 0; i < p.tab.rows(); ++i) {
    double cb = cost[p.tab.basis()[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j < p.tab.cols(); ++j) p.tab.obj(j) -= cb * p.tab.at(i, j);
    p.tab.obj_rhs() -= cb * p.tab.rhs(i);
  }
  if (!p.tab.solve(allowed, eps_lp)) throw std::runtime_error("objective unbounded");
  return p.solution();
}

}  // namespace parkable
