#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sliceopt {

/// Directed link with a total-rate capacity and an expected communication delay.
struct Link {
  std::string tail;
  std::string head;
  double capacity = 0.0;
  double delay = 0.0;
};

/// A function a cloud node can run, with the processing delay observed there.
struct HostedFunction {
  std::string id;
  double delay = 0.0;
};

/// Cloud node: compute capacity plus the set of functions it can host.
/// One unit of data rate consumes one unit of compute capacity.
struct CloudNode {
  std::string node;
  double capacity = 0.0;
  std::vector<HostedFunction> functions;

  bool supports(const std::string& function_id) const;
  std::optional<double> function_delay(const std::string& function_id) const;
};

struct Network {
  std::vector<std::string> nodes;
  std::vector<Link> links;
  std::vector<CloudNode> cloud_nodes;

  bool has_node(const std::string& node) const;
  bool is_cloud(const std::string& node) const;
  const CloudNode* cloud(const std::string& node) const;  // nullptr if not a cloud node
};

/// A service request: push traffic from source to destination through an
/// ordered function chain, within an end-to-end latency budget.
///
/// rates[0] is the rate entering the first function; rates[s] the rate after
/// function s. The list is one longer than the chain.
struct ServiceRequest {
  std::string id;
  std::string source;
  std::string destination;
  std::vector<std::string> chain;
  std::vector<double> rates;
  double latency_threshold = 0.0;

  int chain_length() const { return static_cast<int>(chain.size()); }
};

/// Complete problem input. Immutable after construction; safe to share
/// between concurrent solver workers.
struct Instance {
  Network network;
  std::vector<ServiceRequest> services;
  int path_budget = 1;
  std::optional<std::uint64_t> seed;  // present when produced by the generator
};

struct Diagnostic {
  std::string code;   // machine-readable rule id
  std::string where;  // offending entity
  std::string detail;
};

/// Checks every structural invariant of an instance. Returns one diagnostic
/// per violation; empty means the instance is well formed.
std::vector<Diagnostic> validate_instance(const Instance& inst);

struct PathStats {
  double mean_distance = 0.0;  // arithmetic mean over reachable ordered pairs
  std::map<std::pair<std::string, std::string>, double> distance;  // +inf when unreachable
};

class EmptyNetwork : public std::runtime_error {
 public:
  explicit EmptyNetwork(const std::string& what) : std::runtime_error(what) {}
};

/// All-pairs shortest distances over link delays (ordered pairs of distinct
/// nodes). Throws EmptyNetwork when the network has no links.
PathStats shortest_path_stats(const Network& net);

// JSON document round-trip. Top-level keys: nodes, links, cloud_nodes,
// services, path_budget (plus optional seed).
std::string render_instance(const Instance& inst);
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace sliceopt
