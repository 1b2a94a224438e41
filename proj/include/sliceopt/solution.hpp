#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sliceopt/formulation.hpp"
#include "sliceopt/mblp_solver.hpp"
#include "sliceopt/net_model.hpp"

namespace sliceopt {

/// One routed path of a segment: the ordered node sequence from the segment's
/// tail placement to its head placement, the rate it carries, and the walk's
/// communication delay.
struct RoutedPath {
  std::vector<std::string> nodes;  // tail first, head last
  double rate = 0.0;
  double delay = 0.0;  // sum of link delays along the walk
};

/// Routing of one segment (the flow between two adjacent placements, with the
/// source before the first function and the destination after the last).
struct SegmentRoute {
  std::string tail;
  std::string head;
  double required_rate = 0.0;      // lambda for this segment
  std::vector<RoutedPath> paths;   // used paths only (zero-rate slots dropped)

  /// Segment communication delay: max over used paths, 0 when none.
  double delay() const;
};

struct ServicePlan {
  std::string service;
  std::map<int, std::string> placement;  // function position (1-based) -> node
  std::vector<SegmentRoute> segments;    // one per segment, position order
  double comm_delay = 0.0;               // sum of segment delays
  double nfv_delay = 0.0;                // sum of processing delays at placements
  double total_delay() const { return comm_delay + nfv_delay; }
};

/// Report-time coefficients of the linear power model. Only the activation
/// count is optimized; power is derived afterwards.
struct PowerParams {
  double beta1 = 10.0;  // active-node power
  double beta2 = 1.0;   // idle-node power
  double delta = 1.0;   // per-rate-unit processing power
};

/// Decoded, human-meaningful solution.
struct SlicePlan {
  std::vector<ServicePlan> services;
  std::vector<std::string> activated;  // powered-on cloud nodes, sorted
  std::vector<std::string> warnings;   // e.g. pruned indicator cycles
  int node_count = 0;                  // |V| of the source network
  double total_rate = 0.0;             // sum of per-function processed rates

  /// (beta1 - beta2) * |activated| + beta2 * node_count + delta * total_rate.
  double power(const PowerParams& params = {}) const;
};

struct ValidationCheck {
  std::string family;
  bool pass = true;
  double worst_slack = 0.0;            // smallest margin; negative = violation
  std::vector<std::string> offenders;  // items at or past the limit
};

/// One entry per plan-level constraint family, fixed order, plus the
/// end-to-end latency check.
struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_pass() const;
  const ValidationCheck* find(const std::string& family) const;
};

class DecodeIncoherent : public std::runtime_error {
 public:
  DecodeIncoherent(const std::string& service, int segment, const std::string& what)
      : std::runtime_error("service " + service + " segment " + std::to_string(segment) + ": " +
                           what),
        service_id(service),
        segment_index(segment) {}
  std::string service_id;
  int segment_index;
};

class UnknownService : public std::runtime_error {
 public:
  explicit UnknownService(const std::string& service)
      : std::runtime_error("plan has no service " + service), service_id(service) {}
  std::string service_id;
};

/// Decodes a solved model into a SlicePlan. Placements come from the x
/// columns, walks from the z = 1 arcs (followed from the segment tail), rates
/// from the r columns (or the full segment rate when the model keeps rates
/// implicit). Zero-rate path slots are dropped; indicator cycles disjoint
/// from a walk are pruned with a warning; delays are recomputed from link
/// data, never read from the solver's delay columns. Requires an Optimal (or
/// incumbent-carrying) solution; throws DecodeIncoherent when a used path's
/// arcs do not form a walk reaching the segment head.
SlicePlan decode(const ModelIR& model, const MblpSolution& sol, const Instance& inst);

/// Re-derives every plan-level constraint from the plan and instance alone —
/// no solver state. Families, in report order: placement_capability,
/// placement_unique, function_per_node, node_capacity, link_capacity,
/// walk_connected, rate_conservation, path_count, activation_consistent,
/// segment_endpoints, e2e_latency.
ValidationReport validate(const SlicePlan& plan, const Instance& inst);

/// End-to-end delay of service k: per-segment max used-path delay, summed,
/// plus the recorded processing delay. Throws UnknownService.
double e2e_delay(const SlicePlan& plan, const std::string& k);

// JSON round-trip for plans; line-oriented text and JSON for reports.
std::string render_plan(const SlicePlan& plan, const PowerParams& params = {});
SlicePlan parse_plan(const std::string& json_text);
std::string render_validation(const ValidationReport& report);
std::string render_validation_json(const ValidationReport& report);

}  // namespace sliceopt
