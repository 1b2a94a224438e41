#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sliceopt/formulation.hpp"
#include "sliceopt/lp_core.hpp"

namespace sliceopt {

/// Exploration limits for solve_mblp. The node limit is deterministic; the
/// time limit is a wall-clock safety net for oversized inputs.
struct SolveBudget {
  long max_nodes = 200000;
  double max_seconds = 60.0;
};

enum class MblpStatus { Optimal, Infeasible, BudgetExceeded };

std::string_view mblp_status_name(MblpStatus status);

struct SolveStats {
  long nodes = 0;        // branch-and-bound nodes explored (LP solved)
  long lp_solves = 0;    // relaxation + residual LP solves
  long lp_iterations = 0;
  double wall_seconds = 0.0;
  double root_bound = 0.0;  // root relaxation objective (when the root solved)
};

/// Result of an exact solve. On Optimal, every binary column is exactly 0 or
/// 1, every model row holds within 1e-6, and `objective` is rounded to the
/// nearest integer whenever the model's objective vector is all-integer.
/// BudgetExceeded carries the best incumbent if one was found (empty
/// `assignment` means none).
struct MblpSolution {
  MblpStatus status = MblpStatus::Infeasible;
  std::map<VarKey, double> assignment;  // every column, by key
  std::vector<double> values;           // same values, dense in column order
  double objective = 0.0;
  SolveStats stats;
};

/// Continuous relaxation of the model: binaries boxed to [0, 1], rows and
/// objective copied verbatim.
LinearProgram relaxation(const ModelIR& model);

/// Branching column for an LP point: the most fractional binary (closest to
/// 0.5), ties broken by smallest column index. Returns -1 when every binary
/// is integral within 1e-6.
int branching_order(const ModelIR& model, const std::vector<double>& values);

/// Exact branch-and-bound over the binary columns. Best-first by LP bound
/// (ties: deeper first, then older first); deterministic for a fixed model
/// and node budget. Optional `trace` receives one line per explored node.
/// Optional `start` supplies a candidate point (dense, in column order) that
/// seeds the incumbent only after passing the same verification as any other
/// candidate: binaries snapped and integral, every row satisfied, objective
/// re-priced from scratch. Invalid starts are ignored, so a caller can offer
/// a solution lifted from a restricted variant of the model without risking
/// correctness. Throws NumericalBreakdown (with the node's fixings appended)
/// if the LP engine breaks down.
MblpSolution solve_mblp(const ModelIR& model, const SolveBudget& budget = {},
                        std::ostream* trace = nullptr,
                        const std::vector<double>* start = nullptr);

/// Re-expresses a solution of a restricted model variant (fewer path slots,
/// or no delay tracking) as a candidate point for `to`: values are mapped by
/// variable key, unused path slots repeat the first path's walk at zero rate,
/// and segment delays are re-derived from `to`'s own delay rows. Returns
/// nullopt when some nonzero value has no counterpart column. The result is a
/// candidate only — feed it to solve_mblp's `start`, which verifies it.
std::optional<std::vector<double>> lift_start(const MblpSolution& from, const ModelIR& to);

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(int binaries, int cap)
      : std::runtime_error("brute force cap exceeded: " + std::to_string(binaries) +
                           " binary columns > cap " + std::to_string(cap)),
        binary_count(binaries),
        cap_value(cap) {}
  int binary_count;
  int cap_value;
};

/// Independent oracle: enumerates all binary assignments (prefix-pruned by
/// rows whose support is entirely binary), solves the continuous residual LP
/// for each survivor, and returns the best. Never branches on bounds, so it
/// shares no search logic with solve_mblp. Throws CapExceeded when the model
/// has more than `cap` binary columns.
MblpSolution brute_force_mblp(const ModelIR& model, int cap = 22);

}  // namespace sliceopt
