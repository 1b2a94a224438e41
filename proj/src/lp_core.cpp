#include "sliceopt/lp_core.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace sliceopt {

namespace {

constexpr double kFeasTol = 1e-7;    // bound/row feasibility
constexpr double kCostTol = 1e-7;    // reduced-cost optimality
constexpr double kPivotFloor = 1e-11;  // smallest acceptable pivot magnitude
constexpr double kRatioTieTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRefactorEvery = 150;
constexpr int kStallLimit = 500;  // non-improving pivots before Bland's rule

enum class PhaseStatus { Optimal, Unbounded };

}  // namespace

namespace {

/// A basis the LU factorization rejects. Recoverable on warm restarts (the
/// solver falls back to a cold solve); fatal on cold ones.
struct SingularBasis : NumericalBreakdown {
  SingularBasis() : NumericalBreakdown("singular basis factorization") {}
};

}  // namespace

double max_violation(const LinearProgram& lp, const std::vector<double>& values) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_columns; ++j) {
    worst = std::max(worst, lp.lower[j] - values[j]);
    if (std::isfinite(lp.upper[j])) worst = std::max(worst, values[j] - lp.upper[j]);
  }
  for (const LinearProgram::Row& row : lp.rows) {
    double lhs = 0.0;
    for (const auto& [col, coeff] : row.terms) lhs += coeff * values[col];
    switch (row.rel) {
      case Relation::LessEq: worst = std::max(worst, lhs - row.rhs); break;
      case Relation::GreaterEq: worst = std::max(worst, row.rhs - lhs); break;
      case Relation::Equal: worst = std::max(worst, std::fabs(lhs - row.rhs)); break;
    }
  }
  return worst;
}

/// Bounded-variable revised primal simplex over the equality form
/// [A | I_logical | I_artificial] x = b. Column space: structural columns
/// first, one logical per row (sign via bounds), one artificial per row
/// (explicit Phase-1 columns, permanently fixed to 0 once feasible).
struct SimplexSolver::Impl {
  LinearProgram lp;

  int ns = 0;       // structural columns
  int m = 0;        // rows
  int ncols = 0;    // ns + 2m
  std::vector<std::vector<std::pair<int, double>>> struct_cols;
  Eigen::VectorXd b;
  std::vector<double> lo, up;    // per column, artificials included
  std::vector<double> cost2;     // phase-2 objective
  std::vector<double> sigma;     // artificial column signs, one per row

  std::vector<int> basis;        // row position -> basic column
  std::vector<int> where;        // column -> row position, -1 if nonbasic
  std::vector<double> val;       // current value per column
  std::vector<char> at_upper;    // nonbasic rest position

  Eigen::SparseMatrix<double> basis_matrix;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  struct Eta {
    int r;
    double wr;                                // pivot entry w(r)
    std::vector<std::pair<int, double>> nz;   // nonzeros of w, r included
  };
  std::vector<Eta> etas;
  int pivots_since_refactor = 0;

  std::vector<double> gamma;  // devex reference weights, one per column

  bool have_basis = false;
  bool values_dirty = false;  // nonbasic value changed since last basic recompute
  long call_iterations = 0;
  long lifetime_iterations = 0;

  explicit Impl(LinearProgram prog) : lp(std::move(prog)) {
    ns = lp.num_columns;
    m = static_cast<int>(lp.rows.size());
    ncols = ns + 2 * m;
    struct_cols.assign(ns, {});
    for (int r = 0; r < m; ++r) {
      for (const auto& [col, coeff] : lp.rows[r].terms) {
        if (col < 0 || col >= ns) throw std::invalid_argument("row references unknown column");
        struct_cols[col].emplace_back(r, coeff);
      }
    }
    b.resize(m);
    for (int r = 0; r < m; ++r) b(r) = lp.rows[r].rhs;
    for (int j = 0; j < ns; ++j) {
      if (!std::isfinite(lp.lower[j])) throw std::invalid_argument("structural lower bound must be finite");
    }
    sigma.assign(m, 1.0);
    reset_arrays();
  }

  void reset_arrays() {
    lo.assign(ncols, 0.0);
    up.assign(ncols, 0.0);
    cost2.assign(ncols, 0.0);
    for (int j = 0; j < ns; ++j) {
      lo[j] = lp.lower[j];
      up[j] = lp.upper[j];
      cost2[j] = lp.objective[j];
    }
    for (int r = 0; r < m; ++r) {
      const int sl = ns + r;
      switch (lp.rows[r].rel) {
        case Relation::LessEq: lo[sl] = 0.0; up[sl] = kInf; break;
        case Relation::GreaterEq: lo[sl] = -kInf; up[sl] = 0.0; break;
        case Relation::Equal: lo[sl] = 0.0; up[sl] = 0.0; break;
      }
      const int art = ns + m + r;
      lo[art] = 0.0;
      up[art] = 0.0;  // opened to [0,inf) only while the row needs Phase 1
    }
  }

  bool is_artificial(int j) const { return j >= ns + m; }
  bool is_fixed(int j) const { return lo[j] == up[j]; }

  template <typename Fn>
  void for_entries(int j, Fn&& fn) const {
    if (j < ns) {
      for (const auto& [r, coeff] : struct_cols[j]) fn(r, coeff);
    } else if (j < ns + m) {
      fn(j - ns, 1.0);
    } else {
      fn(j - ns - m, sigma[j - ns - m]);
    }
  }

  double dot_col(const Eigen::VectorXd& y, int j) const {
    double acc = 0.0;
    for_entries(j, [&](int r, double coeff) { acc += y(r) * coeff; });
    return acc;
  }

  // ---- factorization ----

  void refactor() {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(m) * 3);
    for (int r = 0; r < m; ++r) {
      for_entries(basis[r], [&](int row, double coeff) { trips.emplace_back(row, r, coeff); });
    }
    basis_matrix.resize(m, m);
    basis_matrix.setFromTriplets(trips.begin(), trips.end());
    basis_matrix.makeCompressed();
    lu.compute(basis_matrix);
    if (lu.info() != Eigen::Success) throw SingularBasis();
    etas.clear();
    pivots_since_refactor = 0;
    recompute_basics();
  }

  /// x := B^{-1} x
  void ftran(Eigen::VectorXd& x) const {
    x = lu.solve(x);
    for (const Eta& e : etas) {
      const double t = x(e.r) / e.wr;
      if (t != 0.0) {
        for (const auto& [i, v] : e.nz) x(i) -= t * v;
      }
      x(e.r) = t;
    }
  }

  /// y := B^{-T} y  (non-const: Eigen 3.4 SparseLU::transpose() is non-const)
  void btran(Eigen::VectorXd& y) {
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double d = 0.0;
      for (const auto& [i, v] : it->nz) d += v * y(i);
      y(it->r) = (y(it->r) * (1.0 + it->wr) - d) / it->wr;
    }
    y = lu.transpose().solve(y).eval();
  }

  void recompute_basics() {
    Eigen::VectorXd rho = b;
    for (int j = 0; j < ncols; ++j) {
      if (where[j] >= 0 || val[j] == 0.0) continue;
      for_entries(j, [&](int r, double coeff) { rho(r) -= coeff * val[j]; });
    }
    ftran(rho);
    for (int r = 0; r < m; ++r) val[basis[r]] = rho(r);
    values_dirty = false;
  }

  // ---- cold start ----

  LpOutcome solve_cold() {
    call_iterations = 0;
    reset_arrays();
    for (int j = 0; j < ns; ++j) {
      if (lp.lower[j] > lp.upper[j] + kFeasTol) return finish(LpStatus::Infeasible);
    }
    if (m == 0) return solve_unconstrained();

    basis.assign(m, -1);
    where.assign(ncols, -1);
    val.assign(ncols, 0.0);
    at_upper.assign(ncols, 0);
    for (int j = 0; j < ns; ++j) val[j] = lo[j];

    Eigen::VectorXd rho = b;
    for (int j = 0; j < ns; ++j) {
      if (val[j] == 0.0) continue;
      for (const auto& [r, coeff] : struct_cols[j]) rho(r) -= coeff * val[j];
    }
    bool need_phase1 = false;
    for (int r = 0; r < m; ++r) {
      const int sl = ns + r;
      const int art = ns + m + r;
      if (rho(r) >= lo[sl] - kFeasTol && rho(r) <= up[sl] + kFeasTol) {
        basis[r] = sl;
        where[sl] = r;
        val[sl] = rho(r);
      } else {
        sigma[r] = rho(r) >= 0.0 ? 1.0 : -1.0;
        up[art] = kInf;  // open the artificial for Phase 1
        basis[r] = art;
        where[art] = r;
        val[art] = std::fabs(rho(r));
        val[sl] = up[sl] == kInf ? lo[sl] : up[sl];  // rest the logical at a finite bound
        at_upper[sl] = val[sl] == up[sl] && up[sl] != kInf ? 1 : 0;
        need_phase1 = true;
      }
    }
    have_basis = true;
    refactor();

    if (need_phase1) {
      std::vector<double> cost1(ncols, 0.0);
      for (int r = 0; r < m; ++r) cost1[ns + m + r] = 1.0;
      const PhaseStatus st = run_phase(cost1, /*phase1=*/true);
      if (st == PhaseStatus::Unbounded) throw NumericalBreakdown("phase-1 reported unbounded");
      // Re-close the artificial bounds either way: on the infeasible path a
      // still-positive basic artificial must register as a bound violation to
      // any later warm restart, not masquerade as free slack.
      const bool feasible = artificial_sum() <= kFeasTol;
      fix_artificials();
      if (!feasible) return finish(LpStatus::Infeasible);
    }
    return run_phase2_and_finish();
  }

  LpOutcome solve_unconstrained() {
    val.assign(ncols, 0.0);
    where.assign(ncols, -1);
    at_upper.assign(ncols, 0);
    basis.clear();
    have_basis = true;
    for (int j = 0; j < ns; ++j) {
      if (cost2[j] < 0.0) {
        if (up[j] == kInf) return finish(LpStatus::Unbounded);
        val[j] = up[j];
        at_upper[j] = 1;
      } else {
        val[j] = lo[j];
      }
    }
    return finish(LpStatus::Optimal);
  }

  double artificial_sum() const {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += std::fabs(val[ns + m + r]);
    return s;
  }

  void fix_artificials() {
    for (int r = 0; r < m; ++r) {
      const int art = ns + m + r;
      lo[art] = up[art] = 0.0;
      if (where[art] < 0) val[art] = 0.0;
    }
  }

  // ---- warm start ----

  void set_bounds(int column, double lower, double upper_bound) {
    if (column < 0 || column >= ns) throw std::invalid_argument("set_bounds: bad column");
    if (!std::isfinite(lower) || lower > upper_bound)
      throw std::invalid_argument("set_bounds: bad bounds");
    lp.lower[column] = lower;
    lp.upper[column] = upper_bound;
    lo[column] = lower;
    up[column] = upper_bound;
    if (!have_basis || m == 0 || where[column] >= 0) return;
    // Nonbasic variables rest on a bound. Keep the current value when it
    // still coincides with one (no basic recompute needed), else clamp.
    const double cur = val[column];
    double target;
    char rest_upper;
    if (cur == lower) {
      target = cur;
      rest_upper = 0;
    } else if (std::isfinite(upper_bound) && cur == upper_bound) {
      target = cur;
      rest_upper = 1;
    } else if (cur < lower) {
      target = lower;
      rest_upper = 0;
    } else if (std::isfinite(upper_bound) && cur > upper_bound) {
      target = upper_bound;
      rest_upper = 1;
    } else {
      target = lower;
      rest_upper = 0;
    }
    if (target != cur) {
      val[column] = target;
      values_dirty = true;
    }
    at_upper[column] = rest_upper;
  }

  LpOutcome reoptimize() {
    if (!have_basis) return solve_cold();
    call_iterations = 0;
    if (m == 0) return solve_unconstrained();
    if (values_dirty) recompute_basics();
    if (!repair()) return finish(LpStatus::Infeasible);
    return run_phase2_and_finish();
  }

  LpOutcome run_phase2_and_finish() {
    for (int attempt = 0;; ++attempt) {
      const PhaseStatus st = run_phase(cost2, /*phase1=*/false);
      if (st == PhaseStatus::Unbounded) return finish(LpStatus::Unbounded);
      if (primal_residual() <= 1e-6 && worst_bound_violation() <= 1e-6)
        return finish(LpStatus::Optimal);
      if (attempt >= 1) throw NumericalBreakdown("residual check failed after refactorization");
      refactor();
      if (!repair()) return finish(LpStatus::Infeasible);
    }
  }

  /// Drives bound-violating basic variables back inside their bounds by
  /// minimizing the total violation (composite Phase 1 with a pass-through
  /// ratio test). Returns false when the violation cannot reach zero.
  bool repair() {
    int stall = 0;
    bool bland = false;
    long guard = iteration_guard();
    gamma.assign(ncols, 1.0);
    Eigen::VectorXd e(m), y(m), w(m);
    while (true) {
      if (--guard < 0) throw NumericalBreakdown("repair iteration safeguard tripped");
      double total_violation = 0.0;
      bool any = false;
      for (int r = 0; r < m; ++r) {
        const int i = basis[r];
        if (val[i] > up[i] + kFeasTol) {
          e(r) = 1.0;
          total_violation += val[i] - up[i];
          any = true;
        } else if (val[i] < lo[i] - kFeasTol) {
          e(r) = -1.0;
          total_violation += lo[i] - val[i];
          any = true;
        } else {
          e(r) = 0.0;
        }
      }
      if (!any) return true;

      y = e;
      btran(y);
      int q = -1;
      double best = 0.0;
      for (int j = 0; j < ncols; ++j) {
        if (where[j] >= 0 || is_fixed(j)) continue;
        const double d = -dot_col(y, j);
        const bool eligible = at_upper[j] ? d > kCostTol : d < -kCostTol;
        if (!eligible) continue;
        if (bland) {
          q = j;
          break;
        }
        const double score = d * d / gamma[j];
        if (score > best) {
          best = score;
          q = j;
        }
      }
      if (q < 0) return false;  // violation is minimal and nonzero

      load_column(q, w);
      ftran(w);
      const double moved = repair_step(q, w, e, bland);
      if (moved < 0.0) throw NumericalBreakdown("repair direction unblocked");
      if (moved <= kRatioTieTol) {
        if (++stall > kStallLimit) bland = true;
      } else {
        stall = 0;
      }
    }
  }

  // ---- simplex core ----

  void load_column(int j, Eigen::VectorXd& out) const {
    out.setZero(m);
    for_entries(j, [&](int r, double coeff) { out(r) = coeff; });
  }

  long iteration_guard() const { return 20000 + 400L * (m + ns); }

  PhaseStatus run_phase(const std::vector<double>& cost, bool phase1) {
    int stall = 0;
    bool bland = false;
    long guard = iteration_guard();
    gamma.assign(ncols, 1.0);
    Eigen::VectorXd y(m), w(m);
    while (true) {
      if (--guard < 0) throw NumericalBreakdown("simplex iteration safeguard tripped");
      if (phase1 && artificial_sum() <= kRatioTieTol) return PhaseStatus::Optimal;

      for (int r = 0; r < m; ++r) y(r) = cost[basis[r]];
      btran(y);
      int q = -1;
      double best = 0.0;
      for (int j = 0; j < ncols; ++j) {
        if (where[j] >= 0 || is_fixed(j)) continue;
        const double d = cost[j] - dot_col(y, j);
        const bool eligible = at_upper[j] ? d > kCostTol : d < -kCostTol;
        if (!eligible) continue;
        if (bland) {
          q = j;
          break;
        }
        const double score = d * d / gamma[j];
        if (score > best) {
          best = score;
          q = j;
        }
      }
      if (q < 0) return PhaseStatus::Optimal;

      load_column(q, w);
      ftran(w);
      const double moved = pivot_or_flip(q, w, bland);
      if (moved < 0.0) return PhaseStatus::Unbounded;
      if (moved <= kRatioTieTol) {
        if (++stall > kStallLimit) bland = true;
      } else {
        stall = 0;
      }
    }
  }

  /// Blocking bound of basic row r along the entering direction, or nullopt
  /// when the row never blocks.
  struct Block {
    double ratio;
    double bound;
    bool toward_upper;
  };
  std::optional<Block> row_block(int r, double delta) const {
    const int i = basis[r];
    double bound = 0.0;
    bool toward_upper = false;
    if (delta < 0.0) {
      if (lo[i] == -kInf) return std::nullopt;
      bound = lo[i];
      toward_upper = false;
    } else {
      if (up[i] == kInf) return std::nullopt;
      bound = up[i];
      toward_upper = true;
    }
    return Block{std::max(0.0, (bound - val[i]) / delta), bound, toward_upper};
  }

  /// Devex reference weights: each gamma[j] approximates the steepest-edge
  /// norm of column j. Refreshed to unit weights at every phase start (and
  /// when the reference estimate blows up), then grown one pivot at a time
  /// from the pivot row. Pricing by d^2 / gamma resists the degenerate spin
  /// that plain largest-coefficient pricing falls into on massively
  /// degenerate bases.
  void devex_update(int q, const Eigen::VectorXd& w, int block_row) {
    double gq = gamma[q];
    if (gq > 1e10) {  // reference framework exhausted: restart it here
      gamma.assign(ncols, 1.0);
      gq = 1.0;
    }
    const double aq = w(block_row);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
    beta(block_row) = 1.0;
    btran(beta);
    const double scale = gq / (aq * aq);
    for (int j = 0; j < ncols; ++j) {
      if (where[j] >= 0 || is_fixed(j) || j == q) continue;
      const double aj = dot_col(beta, j);
      if (aj == 0.0) continue;
      const double cand = aj * aj * scale;
      if (cand > gamma[j]) gamma[j] = cand;
    }
    gamma[basis[block_row]] = std::max(scale, 1.0);
  }

  /// Moves entering q to its own opposite bound: no basis change.
  double commit_flip(int q, const Eigen::VectorXd& w, double dir, double span) {
    apply_step(q, w, dir, span);
    val[q] = at_upper[q] ? lo[q] : up[q];
    at_upper[q] = at_upper[q] ? 0 : 1;
    return span;
  }

  /// Pivots entering q against basic row `block_row` after a step of t; the
  /// leaving variable lands exactly on `bound`.
  double commit_pivot(int q, const Eigen::VectorXd& w, double dir, double t, int block_row,
                      double bound, bool toward_upper) {
    apply_step(q, w, dir, t);
    const int leaving = basis[block_row];
    val[leaving] = bound;  // snap exactly onto the blocking bound
    at_upper[leaving] = toward_upper ? 1 : 0;
    where[leaving] = -1;
    if (is_artificial(leaving)) {
      lo[leaving] = up[leaving] = 0.0;  // artificials never re-enter
      val[leaving] = 0.0;
      at_upper[leaving] = 0;
    }
    basis[block_row] = q;
    where[q] = block_row;

    Eta eta;
    eta.r = block_row;
    eta.wr = w(block_row);
    for (int r = 0; r < m; ++r) {
      if (w(r) != 0.0) eta.nz.emplace_back(r, w(r));
    }
    etas.push_back(std::move(eta));
    if (++pivots_since_refactor >= kRefactorEvery) {
      refactor();
    }
    return t;
  }

  /// Moves entering column q along direction w: either a bound flip (q hits
  /// its own opposite bound) or a basis pivot at the blocking row. Returns
  /// the step length, or -1 when the ray is unblocked (unbounded). Two-pass
  /// ratio test: pass one finds the tightest ratio, pass two picks the row
  /// with the most stable pivot inside the tie window (smallest variable
  /// index instead when `bland`, for the termination guarantee).
  double pivot_or_flip(int q, const Eigen::VectorXd& w, bool bland) {
    const double dir = at_upper[q] ? -1.0 : 1.0;

    double t_basic = kInf;
    for (int r = 0; r < m; ++r) {
      if (std::fabs(w(r)) <= kPivotFloor) continue;
      if (const auto b = row_block(r, -dir * w(r))) t_basic = std::min(t_basic, b->ratio);
    }

    const double span = up[q] - lo[q];
    if (!std::isfinite(t_basic) && !std::isfinite(span)) return -1.0;

    ++call_iterations;
    ++lifetime_iterations;

    if (span <= t_basic) return commit_flip(q, w, dir, span);

    int block_row = -1;
    Block block{};
    for (int r = 0; r < m; ++r) {
      if (std::fabs(w(r)) <= kPivotFloor) continue;
      const auto b = row_block(r, -dir * w(r));
      if (!b || b->ratio > t_basic + kRatioTieTol) continue;
      const bool prefer =
          block_row < 0 || (bland ? basis[r] < basis[block_row]
                                  : std::fabs(w(r)) > std::fabs(w(block_row)));
      if (prefer) {
        block_row = r;
        block = *b;
      }
    }
    if (block_row < 0 || std::fabs(w(block_row)) < kPivotFloor)
      throw NumericalBreakdown("pivot below stability floor");

    devex_update(q, w, block_row);
    return commit_pivot(q, w, dir, t_basic, block_row, block.bound, block.toward_upper);
  }

  /// Long-step ratio test for the repair phase. The total bound violation is
  /// piecewise linear along the entering direction, so instead of stopping at
  /// the first breakpoint (which walks back one bound per iteration after a
  /// large warm-start jump) this crosses breakpoints in ratio order while the
  /// slope stays negative and pivots where it turns. Violated basics crossed
  /// on the way become feasible; feasible ones become violated only when the
  /// trade still shrinks the total. Returns the step length, or -1 when no
  /// breakpoint blocks (the violation objective rules that out in exact
  /// arithmetic; it signals a numerical emergency upstream).
  struct Breakpoint {
    double t;
    int row;
    double bound;
    bool toward_upper;
  };
  std::vector<Breakpoint> bps;  // scratch, reused across calls
  double repair_step(int q, const Eigen::VectorXd& w, const Eigen::VectorXd& viol, bool bland) {
    const double dir = at_upper[q] ? -1.0 : 1.0;

    bps.clear();
    double slope = 0.0;  // df/dt from the violated movers; feasible rows add nothing yet
    for (int r = 0; r < m; ++r) {
      const double piv = w(r);
      if (std::fabs(piv) <= kPivotFloor) {
        if (viol(r) > 0.5)
          slope += -dir * piv;
        else if (viol(r) < -0.5)
          slope += dir * piv;
        continue;
      }
      const double delta = -dir * piv;  // movement of basis[r] per unit step
      const int i = basis[r];
      if (viol(r) > 0.5) {  // violated above
        slope += delta;
        if (delta >= 0.0) continue;  // walks away; no breakpoint, slope already counted
        bps.push_back({std::max(0.0, (up[i] - val[i]) / delta), r, up[i], true});
        if (lo[i] != -kInf)
          bps.push_back({std::max(0.0, (lo[i] - val[i]) / delta), r, lo[i], false});
      } else if (viol(r) < -0.5) {  // violated below
        slope += -delta;
        if (delta <= 0.0) continue;
        bps.push_back({std::max(0.0, (lo[i] - val[i]) / delta), r, lo[i], false});
        if (up[i] != kInf)
          bps.push_back({std::max(0.0, (up[i] - val[i]) / delta), r, up[i], true});
      } else if (delta < 0.0) {  // feasible, moving down: may start violating at lo
        if (lo[i] == -kInf) continue;
        bps.push_back({std::max(0.0, (lo[i] - val[i]) / delta), r, lo[i], false});
      } else {  // feasible, moving up: may start violating at up
        if (up[i] == kInf) continue;
        bps.push_back({std::max(0.0, (up[i] - val[i]) / delta), r, up[i], true});
      }
    }
    if (slope >= -kCostTol) return 0.0;  // pricing promised descent; disagree ⇒ stall

    const double span = up[q] - lo[q];
    if (bps.empty()) {
      if (!std::isfinite(span)) return -1.0;
      ++call_iterations;
      ++lifetime_iterations;
      return commit_flip(q, w, dir, span);
    }

    std::sort(bps.begin(), bps.end(), [](const Breakpoint& a, const Breakpoint& b) {
      return a.t != b.t ? a.t < b.t : a.row < b.row;
    });

    ++call_iterations;
    ++lifetime_iterations;

    // Walk the breakpoints. Each crossing flattens the violation slope by the
    // |pivot| of its row; stop at the first one where the slope turns.
    int stop = -1;
    for (int k = 0; k < static_cast<int>(bps.size()); ++k) {
      if (span <= bps[k].t) return commit_flip(q, w, dir, span);
      slope += std::fabs(w(bps[k].row));
      if (slope >= -kCostTol) {
        stop = k;
        break;
      }
    }
    if (stop < 0) stop = static_cast<int>(bps.size()) - 1;  // numerical tail: take the last

    // Stability pass inside the tie window around the stopping ratio.
    const double t_stop = bps[stop].t;
    int pick = stop;
    for (int k = 0; k < static_cast<int>(bps.size()); ++k) {
      if (std::fabs(bps[k].t - t_stop) > kRatioTieTol) continue;
      const bool prefer = bland ? basis[bps[k].row] < basis[bps[pick].row]
                                : std::fabs(w(bps[k].row)) > std::fabs(w(bps[pick].row));
      if (k != pick && prefer) pick = k;
    }
    devex_update(q, w, bps[pick].row);
    return commit_pivot(q, w, dir, t_stop, bps[pick].row, bps[pick].bound, bps[pick].toward_upper);
  }

  void apply_step(int q, const Eigen::VectorXd& w, double dir, double t) {
    if (t == 0.0) return;
    for (int r = 0; r < m; ++r) {
      if (w(r) != 0.0) val[basis[r]] -= dir * t * w(r);
    }
    val[q] += dir * t;
  }

  // ---- outcome assembly ----

  double primal_residual() const {
    double worst = 0.0;
    Eigen::VectorXd lhs = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < ncols; ++j) {
      if (val[j] == 0.0) continue;
      for_entries(j, [&](int r, double coeff) { lhs(r) += coeff * val[j]; });
    }
    for (int r = 0; r < m; ++r) worst = std::max(worst, std::fabs(lhs(r) - b(r)));
    return worst;
  }

  double worst_bound_violation() const {
    double worst = 0.0;
    for (int j = 0; j < ncols; ++j) {
      worst = std::max(worst, lo[j] - val[j]);
      if (up[j] != kInf) worst = std::max(worst, val[j] - up[j]);
    }
    return worst;
  }

  LpOutcome finish(LpStatus status) {
    LpOutcome out;
    out.status = status;
    out.iterations = call_iterations;
    if (status == LpStatus::Optimal) {
      out.values.assign(val.begin(), val.begin() + ns);
      out.objective = lp.objective_constant;
      for (int j = 0; j < ns; ++j) out.objective += lp.objective[j] * val[j];
    }
    return out;
  }
};

SimplexSolver::SimplexSolver(LinearProgram lp) : impl_(std::make_unique<Impl>(std::move(lp))) {}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

const LinearProgram& SimplexSolver::program() const { return impl_->lp; }

LpOutcome SimplexSolver::solve() { return impl_->solve_cold(); }

void SimplexSolver::set_bounds(int column, double lower, double upper) {
  impl_->set_bounds(column, lower, upper);
}

LpOutcome SimplexSolver::reoptimize() {
  try {
    return impl_->reoptimize();
  } catch (const SingularBasis&) {
    // The warm basis went numerically bad; rebuild from scratch. A second
    // singularity inside the cold solve propagates as NumericalBreakdown.
    impl_->have_basis = false;
    return impl_->solve_cold();
  }
}

LpOutcome SimplexSolver::resolve(int column, double lower, double upper) {
  impl_->set_bounds(column, lower, upper);
  return reoptimize();
}

LpOutcome solve_lp(const LinearProgram& lp) { return SimplexSolver(lp).solve(); }

}  // namespace sliceopt
