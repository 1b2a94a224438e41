#include "sliceopt/mblp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <queue>
#include <utility>

#include "sliceopt/lp_text.hpp"

namespace sliceopt {

namespace {

constexpr double kIntTol = 1e-6;
constexpr double kObjTieTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Fixings = std::vector<std::pair<int, signed char>>;

/// Objective value recomputed from a concrete point, so incumbents from
/// different search paths (and different solvers) agree bit-for-bit.
double point_objective(const ModelIR& model, const std::vector<double>& values) {
  double obj = model.objective_constant;
  for (std::size_t c = 0; c < values.size(); ++c) obj += model.objective[c] * values[c];
  return obj;
}

void snap_binaries(const ModelIR& model, std::vector<double>& values) {
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (model.columns[c].binary) values[c] = std::round(values[c]);
  }
}

void fill_solution(const ModelIR& model, MblpStatus status, double objective,
                   std::vector<double> values, MblpSolution& out) {
  out.status = status;
  if (values.empty()) return;
  out.objective = model.objective_is_integral() ? std::round(objective) : objective;
  for (std::size_t c = 0; c < values.size(); ++c)
    out.assignment[model.columns[c].key] = values[c];
  out.values = std::move(values);
}

/// Mirrors node fixings onto the shared solver, releasing stale columns and
/// tightening new ones. Fixing lists are tree paths, so diffs stay short.
class BoundDriver {
 public:
  BoundDriver(const ModelIR& model, SimplexSolver& solver) : model_(model), solver_(solver) {}

  void apply(const Fixings& target) {
    auto lookup = [](const Fixings& set, int col) -> const signed char* {
      for (const auto& [c, v] : set)
        if (c == col) return &v;
      return nullptr;
    };
    for (const auto& [col, v] : current_) {
      if (!lookup(target, col))
        solver_.set_bounds(col, model_.columns[col].lower, model_.columns[col].upper);
    }
    for (const auto& [col, v] : target) {
      const signed char* cur = lookup(current_, col);
      if (!cur || *cur != v) solver_.set_bounds(col, v, v);
    }
    current_ = target;
  }

 private:
  const ModelIR& model_;
  SimplexSolver& solver_;
  Fixings current_;
};

std::string describe_fixings(const ModelIR& model, const Fixings& fixings) {
  std::string text = "{";
  for (std::size_t i = 0; i < fixings.size(); ++i) {
    if (i > 0) text += ", ";
    text += model.columns[fixings[i].first].name;
    text += '=';
    text += fixings[i].second ? '1' : '0';
  }
  text += '}';
  return text;
}

struct Node {
  double bound = -kInf;  // parent relaxation bound: a valid lower bound
  int depth = 0;
  long id = 0;
  Fixings fixings;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // smallest bound pops first
    return a.id < b.id;  // then depth-first: the newest node continues the
                         // current plunge, so consecutive LPs differ by only
                         // a couple of bound fixings
  }
};

}  // namespace

std::string_view mblp_status_name(MblpStatus status) {
  switch (status) {
    case MblpStatus::Optimal: return "Optimal";
    case MblpStatus::Infeasible: return "Infeasible";
    case MblpStatus::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

LinearProgram relaxation(const ModelIR& model) {
  LinearProgram lp;
  lp.num_columns = static_cast<int>(model.columns.size());
  lp.lower.reserve(model.columns.size());
  lp.upper.reserve(model.columns.size());
  for (const ModelColumn& col : model.columns) {
    lp.lower.push_back(col.lower);
    lp.upper.push_back(col.upper);
  }
  lp.objective = model.objective;
  lp.objective_constant = model.objective_constant;
  lp.rows.reserve(model.rows.size());
  for (const ModelRow& row : model.rows) lp.rows.push_back({row.terms, row.rel, row.rhs});
  return lp;
}

int branching_order(const ModelIR& model, const std::vector<double>& values) {
  int pick = -1;
  double pick_frac = kIntTol;  // must exceed the integrality tolerance
  for (int c = 0; c < static_cast<int>(model.columns.size()); ++c) {
    if (!model.columns[c].binary) continue;
    const double frac = std::fabs(values[c] - std::round(values[c]));
    if (frac > pick_frac) {
      pick_frac = frac;
      pick = c;
    }
  }
  return pick;
}

MblpSolution solve_mblp(const ModelIR& model, const SolveBudget& budget, std::ostream* trace,
                        const std::vector<double>* start) {
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  MblpSolution result;
  SolveStats& st = result.stats;

  std::vector<int> binary_cols;
  for (int c = 0; c < static_cast<int>(model.columns.size()); ++c)
    if (model.columns[c].binary) binary_cols.push_back(c);

  const LinearProgram base = relaxation(model);

  // The relaxations are massively degenerate: whole families of binary
  // columns are objective-free, so the optimal face is huge and simplex keeps
  // returning deeply fractional vertices of it. A deterministic micro-cost on
  // every binary column steers each LP to an extreme (usually near-integral)
  // vertex of that face. Exactness is preserved by bookkeeping, not hope:
  // bounds used for pruning subtract the whole perturbation mass, incumbents
  // are re-priced on the true objective, and binaries are bounded columns so
  // feasibility and unboundedness are unaffected.
  LinearProgram perturbed = base;
  double pert_mass = 0.0;
  for (int c : binary_cols) {
    const double eps =
        1e-6 * (1.0 + ((static_cast<unsigned>(c) * 2654435761u) & 1023u) / 1024.0);
    perturbed.objective[c] += eps;
    pert_mass += eps;
  }

  SimplexSolver solver(perturbed);
  BoundDriver driver(model, solver);

  const bool integral_obj = model.objective_is_integral();
  double incumbent_obj = kInf;
  std::vector<double> incumbent_values;

  // Nodes with bound > cutoff cannot improve the incumbent. With an
  // all-integer objective any improvement is a full unit, which prunes far
  // more aggressively.
  auto cutoff = [&] {
    if (incumbent_obj == kInf) return kInf;
    return integral_obj ? incumbent_obj - 1.0 + kIntTol : incumbent_obj - kObjTieTol;
  };

  auto reoptimize_at = [&](const Fixings& fixings) {
    driver.apply(fixings);
    try {
      LpOutcome out = solver.reoptimize();
      ++st.lp_solves;
      st.lp_iterations += out.iterations;
      return out;
    } catch (const NumericalBreakdown& e) {
      throw NumericalBreakdown(std::string(e.what()) + " at node fixings " +
                               describe_fixings(model, fixings));
    }
  };

  auto emit = [&](const char* event, double bound, const Node& node) {
    if (!trace) return;
    *trace << "event=" << event << " bound=" << format_number(bound) << " depth=" << node.depth
           << " fixings=" << node.fixings.size() << '\n';
  };

  // Accepts a candidate integral point (values get binary-snapped, re-priced,
  // and re-verified against the model before becoming the incumbent).
  auto try_incumbent = [&](std::vector<double> values) {
    snap_binaries(model, values);
    if (max_violation(base, values) > kIntTol) return false;
    const double obj = point_objective(model, values);
    if (obj >= incumbent_obj - kObjTieTol) return false;
    incumbent_obj = obj;
    incumbent_values = std::move(values);
    return true;
  };

  // A caller-supplied start only becomes the incumbent if it survives the
  // full candidate verification above.
  if (start != nullptr && start->size() == model.columns.size()) try_incumbent(*start);

  // Pins every binary to its rounded LP value, re-solves the continuous
  // residual, and offers the point as an incumbent. Used for integral nodes.
  auto settle_incumbent = [&](const std::vector<double>& values) {
    Fixings full;
    full.reserve(binary_cols.size());
    for (int c : binary_cols)
      full.push_back({c, static_cast<signed char>(std::lround(values[c]))});
    const LpOutcome residual = reoptimize_at(full);
    if (residual.status != LpStatus::Optimal) return false;
    return try_incumbent(residual.values);
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push({-kInf, 0, next_id++, {}});
  bool budget_hit = false;

  while (!open.empty()) {
    if (open.top().bound > cutoff()) break;  // best-first: nothing left can improve
    if (st.nodes >= budget.max_nodes || elapsed() > budget.max_seconds) {
      budget_hit = true;
      break;
    }

    Node node = open.top();
    open.pop();
    ++st.nodes;

    const LpOutcome out = reoptimize_at(node.fixings);
    if (out.status == LpStatus::Unbounded)
      throw std::runtime_error("model relaxation is unbounded");
    if (out.status == LpStatus::Infeasible) {
      emit("infeasible", kInf, node);
      continue;
    }
    // Valid true-objective lower bound: the micro-costs only ever add mass.
    const double bound = out.objective - pert_mass;
    if (st.nodes == 1) st.root_bound = bound;
    if (bound > cutoff()) {
      emit("fathom", bound, node);
      continue;
    }

    const int bcol = branching_order(model, out.values);
    if (bcol < 0) {  // integral point
      if (node.fixings.size() == binary_cols.size()) {
        // Every binary is pinned, so this LP already is the residual.
        emit(try_incumbent(out.values) ? "incumbent" : "reject", bound, node);
      } else {
        emit(settle_incumbent(out.values) ? "incumbent" : "reject", bound, node);
      }
      continue;
    }

    emit("branch", bound, node);
    // Floor the inherited bound onto a 1e-2 grid: still a valid lower bound,
    // and neither LP noise nor the micro-perturbation mass (both far below
    // the grid) can order "equal" nodes apart, so the recency tie-break keeps
    // plateau exploration local. Post-solve fathoming still uses the node's
    // own full-precision bound.
    const double child_bound = std::floor(bound * 100.0) / 100.0;
    for (signed char v : {0, 1}) {
      Node child;
      child.bound = child_bound;
      child.depth = node.depth + 1;
      child.id = next_id++;
      child.fixings = node.fixings;
      child.fixings.push_back({bcol, v});
      open.push(std::move(child));
    }
  }

  st.wall_seconds = elapsed();
  if (budget_hit) {
    fill_solution(model, MblpStatus::BudgetExceeded, incumbent_obj, std::move(incumbent_values),
                  result);
  } else if (!incumbent_values.empty()) {
    fill_solution(model, MblpStatus::Optimal, incumbent_obj, std::move(incumbent_values), result);
  } else {
    result.status = MblpStatus::Infeasible;
  }
  return result;
}

std::optional<std::vector<double>> lift_start(const MblpSolution& from, const ModelIR& to) {
  std::vector<double> lifted(to.columns.size(), 0.0);
  for (const auto& [key, value] : from.assignment) {
    if (std::fabs(value) <= 1e-12) continue;
    const int c = to.column(key);
    if (c < 0) return std::nullopt;
    lifted[c] = value;
  }

  // Every path slot must carry a walk whenever its placement product is on,
  // so slots beyond the source's budget repeat the first path's walk; their
  // rate columns stay zero. The source's budget is read off its own keys.
  int from_budget = 1;
  for (const auto& [key, value] : from.assignment)
    if (key.kind == VarKind::Z_pathlink && key.p > from_budget) from_budget = key.p;
  for (const auto& [key, value] : from.assignment) {
    if (key.kind != VarKind::Z_pathlink || key.p != 1 || std::lround(value) != 1) continue;
    for (int p = from_budget + 1; p <= to.path_budget; ++p) {
      VarKey slot = key;
      slot.p = p;
      const int c = to.column(slot);
      if (c < 0) return std::nullopt;
      lifted[c] = 1.0;
    }
  }

  // A source without explicit rate columns keeps rates implicit (lambda * z),
  // so the target's rate columns are constructed: the first path slot carries
  // the whole segment rate, every other slot carries zero. Lambda is read off
  // the target's seg_rate_sum rows rather than trusted from anywhere else.
  bool from_has_rates = false;
  for (const auto& [key, value] : from.assignment)
    if (key.kind == VarKind::R_pathrate) {
      from_has_rates = true;
      break;
    }
  if (!from_has_rates) {
    std::map<std::pair<std::string, int>, double> seg_rate;  // (service, segment) -> lambda
    for (const ModelRow& row : to.rows) {
      if (row.family != family::seg_rate_sum) continue;
      int r1 = -1, prod = -1;
      double lambda = 0.0;
      for (const auto& [c, coef] : row.terms) {
        if (to.columns[c].key.kind == VarKind::R_pathrate) {
          if (to.columns[c].key.p == 1) r1 = c;
        } else {
          prod = c;
          lambda = -coef;
        }
      }
      if (r1 < 0 || prod < 0) return std::nullopt;
      lifted[r1] = lambda * lifted[prod];
      seg_rate[{to.columns[r1].key.k, to.columns[r1].key.s}] = lambda;
    }
    for (int c = 0; c < static_cast<int>(to.columns.size()); ++c) {
      const VarKey& ck = to.columns[c].key;
      if (ck.kind != VarKind::R_linkrate_onpath || ck.p != 1) continue;
      VarKey zk = ck;
      zk.kind = VarKind::Z_pathlink;
      const int zc = to.column(zk);
      if (zc < 0) return std::nullopt;
      lifted[c] = seg_rate[{ck.k, ck.s}] * lifted[zc];
    }
  }

  // Segment delays re-derived minimally from the target's own delay rows (the
  // source may lack them entirely, and smaller values can only help the
  // end-to-end rows).
  for (const ModelColumn& col : to.columns)
    if (col.key.kind == VarKind::THETA_segdelay) lifted[to.column(col.key)] = 0.0;
  for (const ModelRow& row : to.rows) {
    if (row.family != family::seg_delay) continue;
    int theta_col = -1;
    double walk = 0.0;
    for (const auto& [c, coef] : row.terms) {
      if (to.columns[c].key.kind == VarKind::THETA_segdelay) theta_col = c;
      else walk -= coef * lifted[c];  // delay coefficients enter negated
    }
    if (theta_col < 0) return std::nullopt;
    lifted[theta_col] = std::max(lifted[theta_col], walk);
  }
  return lifted;
}

MblpSolution brute_force_mblp(const ModelIR& model, int cap) {
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<int> bins;
  for (int c = 0; c < static_cast<int>(model.columns.size()); ++c)
    if (model.columns[c].binary) bins.push_back(c);
  const int nb = static_cast<int>(bins.size());
  if (nb > cap) throw CapExceeded(nb, cap);

  std::vector<int> position(model.columns.size(), -1);
  for (int p = 0; p < nb; ++p) position[bins[p]] = p;

  // Rows supported entirely by binary columns can be checked exactly as soon
  // as their last column is assigned, pruning whole assignment subtrees.
  std::vector<std::vector<std::pair<int, double>>> contrib(nb);  // position -> (row, coeff)
  std::vector<std::vector<int>> due(nb);                         // position -> rows complete here
  const int nrows = static_cast<int>(model.rows.size());
  for (int r = 0; r < nrows; ++r) {
    const ModelRow& row = model.rows[r];
    int last = -1;
    bool all_binary = !row.terms.empty();
    for (const auto& [c, coeff] : row.terms) {
      if (position[c] < 0) {
        all_binary = false;
        break;
      }
      last = std::max(last, position[c]);
    }
    if (!all_binary) continue;
    for (const auto& [c, coeff] : row.terms) contrib[position[c]].push_back({r, coeff});
    due[last].push_back(r);
  }

  auto row_holds = [&](int r, double sum) {
    const ModelRow& row = model.rows[r];
    switch (row.rel) {
      case Relation::LessEq: return sum <= row.rhs + kObjTieTol;
      case Relation::Equal: return std::fabs(sum - row.rhs) <= kObjTieTol;
      case Relation::GreaterEq: return sum >= row.rhs - kObjTieTol;
    }
    return false;
  };

  const LinearProgram base = relaxation(model);
  SimplexSolver solver(base);

  MblpSolution result;
  SolveStats& st = result.stats;
  double best_obj = kInf;
  std::vector<double> best_values;

  std::vector<double> acc(model.rows.size(), 0.0);
  std::vector<signed char> assign(nb, 0);
  std::vector<signed char> solver_fix(nb, -1);

  auto solve_leaf = [&] {
    Fixings leaf;  // only for breakdown context
    for (int p = 0; p < nb; ++p)
      if (solver_fix[p] != assign[p]) {
        solver.set_bounds(bins[p], assign[p], assign[p]);
        solver_fix[p] = assign[p];
      }
    LpOutcome out;
    try {
      out = solver.reoptimize();
    } catch (const NumericalBreakdown& e) {
      for (int p = 0; p < nb; ++p) leaf.push_back({bins[p], assign[p]});
      throw NumericalBreakdown(std::string(e.what()) + " at enumerated fixings " +
                               describe_fixings(model, leaf));
    }
    ++st.nodes;
    ++st.lp_solves;
    st.lp_iterations += out.iterations;
    if (out.status == LpStatus::Unbounded)
      throw std::runtime_error("model relaxation is unbounded");
    if (out.status != LpStatus::Optimal) return;
    std::vector<double> values = out.values;
    snap_binaries(model, values);
    if (max_violation(base, values) > kIntTol) return;
    const double obj = point_objective(model, values);
    if (obj < best_obj - kObjTieTol) {
      best_obj = obj;
      best_values = std::move(values);
    }
  };

  std::function<void(int)> walk = [&](int pos) {
    if (pos == nb) {
      solve_leaf();
      return;
    }
    for (signed char v : {0, 1}) {
      assign[pos] = v;
      for (const auto& [r, coeff] : contrib[pos]) acc[r] += coeff * v;
      bool viable = true;
      for (int r : due[pos]) {
        if (!row_holds(r, acc[r])) {
          viable = false;
          break;
        }
      }
      if (viable) walk(pos + 1);
      for (const auto& [r, coeff] : contrib[pos]) acc[r] -= coeff * v;
    }
  };
  walk(0);

  st.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!best_values.empty()) {
    fill_solution(model, MblpStatus::Optimal, best_obj, std::move(best_values), result);
  } else {
    result.status = MblpStatus::Infeasible;
  }
  return result;
}

}  // namespace sliceopt
