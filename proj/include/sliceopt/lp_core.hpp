#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "sliceopt/relation.hpp"

namespace sliceopt {

/// Minimization LP over bounded columns. Lower bounds must be finite; upper
/// bounds may be +infinity. Rows are sparse with no duplicate columns.
struct LinearProgram {
  struct Row {
    std::vector<std::pair<int, double>> terms;
    Relation rel = Relation::LessEq;
    double rhs = 0.0;
  };

  int num_columns = 0;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> objective;
  double objective_constant = 0.0;
  std::vector<Row> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;  // one per structural column; empty unless Optimal
  double objective = 0.0;
  long iterations = 0;  // simplex pivots accumulated by the producing context
};

/// Raised when every candidate pivot falls below the stability floor or the
/// iteration safeguard trips; signals ill-conditioning, not infeasibility.
class NumericalBreakdown : public std::runtime_error {
 public:
  explicit NumericalBreakdown(const std::string& what) : std::runtime_error(what) {}
};

/// Reusable solver context: solve once from scratch, then cheaply reoptimize
/// after bound changes (the branch-and-bound workhorse). Single-threaded;
/// distinct contexts may run concurrently.
class SimplexSolver {
 public:
  explicit SimplexSolver(LinearProgram lp);
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  const LinearProgram& program() const;

  /// Cold Phase-1/Phase-2 solve; discards any prior basis.
  LpOutcome solve();

  /// Updates one column's bounds without reoptimizing.
  void set_bounds(int column, double lower, double upper);

  /// Continues from the current basis after set_bounds calls (cold solve on
  /// first use). Result is equivalent to a from-scratch solve.
  LpOutcome reoptimize();

  /// set_bounds followed by reoptimize.
  LpOutcome resolve(int column, double lower, double upper);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-shot convenience wrapper around SimplexSolver.
LpOutcome solve_lp(const LinearProgram& lp);

/// Largest bound/row violation of a candidate point; <= tol means feasible.
double max_violation(const LinearProgram& lp, const std::vector<double>& values);

}  // namespace sliceopt
