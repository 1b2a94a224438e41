#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sliceopt/instancegen.hpp"
#include "sliceopt/mblp_solver.hpp"
#include "sliceopt/net_model.hpp"
#include "sliceopt/solution.hpp"

namespace sliceopt {

/// Grid definition for the comparative studies: for every service count, the
/// same `instances_per_point` seeds starting at `first_seed`.
struct StudyConfig {
  GenConfig base;                            // template; seed/service_count set per cell
  std::vector<int> service_counts{1, 2, 3, 4};
  int instances_per_point = 20;
  std::uint64_t first_seed = 1;
  int path_budget = 2;                       // P of the full model
  SolveBudget budget;                        // per solve
};

/// One variant's outcome on one instance. Wall-clock and iteration statistics
/// stay in memory only; report files carry nothing machine-dependent.
struct VariantResult {
  MblpStatus status = MblpStatus::Infeasible;
  double objective = 0.0;
  SolveStats stats;
  bool has_solution = false;      // an incumbent exists (Optimal or budget-cut)
  bool post_check_pass = false;   // latency post-check (no-latency variant only)
  bool feasible = false;          // counted feasible for the study aggregates
};

struct InstanceRecord {
  std::uint64_t seed = 0;
  int service_count = 0;
  VariantResult full, single_path, no_latency;
  // Physical quantities of the full variant's plan (set when it has a
  // solution): activation count and per-service delay means.
  int activated = 0;
  double mean_nfv_delay = 0.0;
  double mean_comm_delay = 0.0;
  double mean_total_delay = 0.0;
};

/// Per-service-count aggregate over the grid row.
struct PointAggregate {
  int service_count = 0;
  int instances = 0;
  int feasible_full = 0;
  int feasible_single = 0;
  int feasible_no_latency_post = 0;
  // Means over instances where the full variant is feasible.
  double mean_activated = 0.0;
  double mean_nfv_delay = 0.0;
  double mean_comm_delay = 0.0;
  double mean_total_delay = 0.0;
};

/// Full study outcome: one row per instance (sorted by service count, then
/// seed) and one aggregate per service count. Aggregates are recomputable
/// from the rows.
struct ExperimentReport {
  std::vector<InstanceRecord> rows;
  std::vector<PointAggregate> points;
};

/// Solves every grid cell with all three variants: full (P = path_budget),
/// single-path (P = 1), and no-latency followed by the latency post-check on
/// its decoded plan. Every solve carrying a solution is decoded and must pass
/// the independent validator (modulo the latency family for the no-latency
/// variant) before it is counted — a failure throws std::logic_error, as does
/// a feasible single-path solve whose objective the full model cannot match.
/// Budget exhaustion is recorded per row and never aborts the study.
///
/// Instances are dispatched to a worker pool (SLICEOPT_WORKERS overrides the
/// hardware default); each instance's three solves stay on one worker because
/// the full solve reuses the baselines' solutions as verified starting
/// incumbents. Assembly is order-stable, so reports are byte-identical for
/// identical configs.
ExperimentReport run_study(const StudyConfig& cfg);

/// Feasibility-count comparison across variants (the toolkit's first study).
ExperimentReport run_feasibility_study(const StudyConfig& cfg);

/// Delay/activation trends over full-feasible instances (the second study).
ExperimentReport run_delay_study(const StudyConfig& cfg);

// Report files. CSVs carry one header line; rows are deterministic functions
// of the config (no timings, no machine-dependent counters).
std::string render_rows_csv(const ExperimentReport& report);
std::string render_aggregates_csv(const ExperimentReport& report);
std::string render_report_json(const ExperimentReport& report);

}  // namespace sliceopt
