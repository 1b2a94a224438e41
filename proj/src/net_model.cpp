#include "sliceopt/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace sliceopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool CloudNode::supports(const std::string& function_id) const {
  return function_delay(function_id).has_value();
}

std::optional<double> CloudNode::function_delay(const std::string& function_id) const {
  for (const auto& f : functions) {
    if (f.id == function_id) return f.delay;
  }
  return std::nullopt;
}

bool Network::has_node(const std::string& node) const {
  return std::find(nodes.begin(), nodes.end(), node) != nodes.end();
}

bool Network::is_cloud(const std::string& node) const { return cloud(node) != nullptr; }

const CloudNode* Network::cloud(const std::string& node) const {
  for (const auto& c : cloud_nodes) {
    if (c.node == node) return &c;
  }
  return nullptr;
}

std::vector<Diagnostic> validate_instance(const Instance& inst) {
  std::vector<Diagnostic> out;
  const Network& net = inst.network;
  auto emit = [&out](std::string code, std::string where, std::string detail) {
    out.push_back({std::move(code), std::move(where), std::move(detail)});
  };

  std::set<std::string> node_set(net.nodes.begin(), net.nodes.end());
  if (node_set.size() != net.nodes.size())
    emit("duplicate_node", "nodes", "node list contains repeated ids");

  std::set<std::pair<std::string, std::string>> seen_links;
  for (const auto& l : net.links) {
    const std::string where = l.tail + "->" + l.head;
    if (!node_set.count(l.tail) || !node_set.count(l.head))
      emit("unknown_node", where, "link endpoint is not a declared node");
    if (l.tail == l.head) emit("self_loop", where, "self-loop links are not allowed");
    if (!seen_links.insert({l.tail, l.head}).second)
      emit("duplicate_link", where, "link appears more than once");
    if (!(l.capacity >= 0.0) || !std::isfinite(l.capacity))
      emit("bad_link_capacity", where, "capacity must be finite and non-negative");
    if (!(l.delay >= 0.0) || !std::isfinite(l.delay))
      emit("bad_link_delay", where, "delay must be finite and non-negative");
  }

  std::set<std::string> cloud_set;
  for (const auto& c : net.cloud_nodes) {
    if (!node_set.count(c.node))
      emit("cloud_not_node", c.node, "cloud node is not a declared node");
    if (!cloud_set.insert(c.node).second)
      emit("duplicate_cloud", c.node, "cloud node appears more than once");
    if (!(c.capacity >= 0.0) || !std::isfinite(c.capacity))
      emit("bad_node_capacity", c.node, "compute capacity must be finite and non-negative");
    std::set<std::string> fn_seen;
    for (const auto& f : c.functions) {
      if (!fn_seen.insert(f.id).second)
        emit("duplicate_function", c.node + ":" + f.id, "function listed twice on one node");
      if (!(f.delay >= 0.0) || !std::isfinite(f.delay))
        emit("bad_nfv_delay", c.node + ":" + f.id, "processing delay must be finite and non-negative");
    }
  }

  if (inst.path_budget < 1)
    emit("bad_path_budget", "path_budget", "at least one path per segment is required");

  std::set<std::string> service_ids;
  for (const auto& svc : inst.services) {
    const std::string& id = svc.id;
    if (!service_ids.insert(id).second)
      emit("duplicate_service", id, "service id appears more than once");
    if (!node_set.count(svc.source)) emit("unknown_node", id, "source is not a declared node");
    if (!node_set.count(svc.destination))
      emit("unknown_node", id, "destination is not a declared node");
    if (cloud_set.count(svc.source))
      emit("source_in_cloud", id, "service source must not be a cloud node");
    if (cloud_set.count(svc.destination))
      emit("destination_in_cloud", id, "service destination must not be a cloud node");
    if (svc.source == svc.destination)
      emit("source_eq_destination", id, "source and destination must differ");
    if (svc.chain.empty()) emit("empty_chain", id, "chain must contain at least one function");
    if (svc.rates.size() != svc.chain.size() + 1)
      emit("rates_length", id, "rates list must be one longer than the chain");
    for (double r : svc.rates) {
      if (!(r >= 0.0) || !std::isfinite(r)) {
        emit("bad_rate", id, "rates must be finite and non-negative");
        break;
      }
    }
    if (!(svc.latency_threshold > 0.0) || !std::isfinite(svc.latency_threshold))
      emit("bad_threshold", id, "latency threshold must be positive and finite");
    for (const auto& fn : svc.chain) {
      bool satisfiable = false;
      for (const auto& c : net.cloud_nodes) {
        if (c.supports(fn)) {
          satisfiable = true;
          break;
        }
      }
      if (!satisfiable)
        emit("unsatisfiable_function", id + ":" + fn, "no cloud node supports this function");
    }
  }
  return out;
}

PathStats shortest_path_stats(const Network& net) {
  if (net.links.empty()) throw EmptyNetwork("network has no links");

  const int n = static_cast<int>(net.nodes.size());
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx[net.nodes[i]] = i;

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& l : net.links) {
    auto it = idx.find(l.tail);
    auto jt = idx.find(l.head);
    if (it == idx.end() || jt == idx.end()) continue;
    adj[it->second].push_back({jt->second, l.delay});
  }

  PathStats stats;
  double sum = 0.0;
  int reachable_pairs = 0;
  for (int src = 0; src < n; ++src) {
    // Dijkstra; weights are non-negative by instance invariant.
    std::vector<double> dist(n, kInf);
    dist[src] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, src});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u]) continue;
      for (auto [v, w] : adj[u]) {
        if (dist[u] + w < dist[v]) {
          dist[v] = dist[u] + w;
          heap.push({dist[v], v});
        }
      }
    }
    for (int dst = 0; dst < n; ++dst) {
      if (dst == src) continue;
      stats.distance[{net.nodes[src], net.nodes[dst]}] = dist[dst];
      if (std::isfinite(dist[dst])) {
        sum += dist[dst];
        ++reachable_pairs;
      }
    }
  }
  stats.mean_distance = reachable_pairs > 0 ? sum / reachable_pairs : 0.0;
  return stats;
}

std::string render_instance(const Instance& inst) {
  nlohmann::ordered_json doc;
  doc["nodes"] = inst.network.nodes;
  auto& links = doc["links"] = nlohmann::ordered_json::array();
  for (const auto& l : inst.network.links) {
    links.push_back({{"tail", l.tail}, {"head", l.head}, {"capacity", l.capacity}, {"delay", l.delay}});
  }
  auto& clouds = doc["cloud_nodes"] = nlohmann::ordered_json::array();
  for (const auto& c : inst.network.cloud_nodes) {
    nlohmann::ordered_json fns = nlohmann::ordered_json::array();
    for (const auto& f : c.functions) fns.push_back({{"id", f.id}, {"delay", f.delay}});
    clouds.push_back({{"node", c.node}, {"capacity", c.capacity}, {"functions", fns}});
  }
  auto& services = doc["services"] = nlohmann::ordered_json::array();
  for (const auto& s : inst.services) {
    services.push_back({{"id", s.id},
                        {"source", s.source},
                        {"destination", s.destination},
                        {"chain", s.chain},
                        {"rates", s.rates},
                        {"latency_threshold", s.latency_threshold}});
  }
  doc["path_budget"] = inst.path_budget;
  if (inst.seed) doc["seed"] = *inst.seed;
  return doc.dump(2) + "\n";
}

Instance parse_instance(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("invalid instance JSON: ") + e.what());
  }
  try {
    Instance inst;
    inst.network.nodes = doc.at("nodes").get<std::vector<std::string>>();
    for (const auto& l : doc.at("links")) {
      inst.network.links.push_back({l.at("tail").get<std::string>(), l.at("head").get<std::string>(),
                                    l.at("capacity").get<double>(), l.at("delay").get<double>()});
    }
    for (const auto& c : doc.at("cloud_nodes")) {
      CloudNode cn;
      cn.node = c.at("node").get<std::string>();
      cn.capacity = c.at("capacity").get<double>();
      for (const auto& f : c.at("functions")) {
        cn.functions.push_back({f.at("id").get<std::string>(), f.at("delay").get<double>()});
      }
      inst.network.cloud_nodes.push_back(std::move(cn));
    }
    for (const auto& s : doc.at("services")) {
      ServiceRequest svc;
      svc.id = s.at("id").get<std::string>();
      svc.source = s.at("source").get<std::string>();
      svc.destination = s.at("destination").get<std::string>();
      svc.chain = s.at("chain").get<std::vector<std::string>>();
      svc.rates = s.at("rates").get<std::vector<double>>();
      svc.latency_threshold = s.at("latency_threshold").get<double>();
      inst.services.push_back(std::move(svc));
    }
    inst.path_budget = doc.at("path_budget").get<int>();
    if (doc.contains("seed")) inst.seed = doc.at("seed").get<std::uint64_t>();
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("instance document missing or mistyped field: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << render_instance(inst);
}

}  // namespace sliceopt
