#include "sliceopt/instancegen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

namespace sliceopt {
namespace {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double euclidean(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::string node_name(int i) { return "n" + std::to_string(i + 1); }
std::string function_name(int i) { return "f" + std::to_string(i + 1); }

/// Draws `count` distinct integers from [0, n) in draw order.
std::vector<int> draw_distinct(Rng& rng, int count, int n) {
  std::vector<int> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

void check_config(const GenConfig& cfg) {
  auto range_ok = [](const std::array<double, 2>& r) { return r[0] <= r[1]; };
  if (cfg.node_count < 2) throw GenConfigError("node_count must be at least 2");
  if (cfg.cloud_count < 1) throw GenConfigError("cloud_count must be at least 1");
  if (cfg.cloud_count > cfg.node_count - 2)
    throw GenConfigError("cloud_count must leave at least two non-cloud nodes");
  if (cfg.region_side <= 0.0) throw GenConfigError("region_side must be positive");
  if (cfg.link_probability < 0.0 || cfg.link_probability > 1.0)
    throw GenConfigError("link_probability must lie in [0,1]");
  if (!range_ok(cfg.node_capacity_range) || !range_ok(cfg.link_capacity_range) ||
      !range_ok(cfg.nfv_delay_range) || !range_ok(cfg.threshold_slack_range))
    throw GenConfigError("ranges must be non-empty (lo <= hi)");
  if (cfg.function_universe < 1) throw GenConfigError("function_universe must be positive");
  if (cfg.chain_length < 1 || cfg.chain_length > cfg.function_universe)
    throw GenConfigError("chain_length must lie in [1, function_universe]");
  if (cfg.rate_value <= 0.0) throw GenConfigError("rate_value must be positive");
  if (cfg.service_count < 0) throw GenConfigError("service_count must be non-negative");
}

}  // namespace

Instance generate(const GenConfig& cfg, int path_budget, int max_attempts) {
  check_config(cfg);
  if (path_budget < 1) throw GenConfigError("path_budget must be at least 1");

  Rng rng(cfg.seed);
  const int n = cfg.node_count;

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    // -- topology: uniform positions, Bernoulli links over unordered pairs --
    std::vector<Point> pos(n);
    for (auto& p : pos) {
      p.x = rng.uniform(0.0, cfg.region_side);
      p.y = rng.uniform(0.0, cfg.region_side);
    }
    const std::vector<int> clouds = draw_distinct(rng, cfg.cloud_count, n);

    struct Pair {
      int i, j;
      double capacity;
    };
    std::vector<Pair> pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.uniform() < cfg.link_probability) {
          pairs.push_back({i, j, rng.uniform(cfg.link_capacity_range[0], cfg.link_capacity_range[1])});
        }
      }
    }
    if (pairs.empty()) continue;  // unroutable; resample topology

    Network net;
    net.nodes.reserve(n);
    for (int i = 0; i < n; ++i) net.nodes.push_back(node_name(i));

    // Euclidean lengths first: the mean shortest-path length over them sets
    // the delay unit, and the same metric feeds the latency thresholds.
    Network metric = net;
    for (const Pair& pr : pairs) {
      const double len = euclidean(pos[pr.i], pos[pr.j]);
      metric.links.push_back({node_name(pr.i), node_name(pr.j), pr.capacity, len});
      metric.links.push_back({node_name(pr.j), node_name(pr.i), pr.capacity, len});
    }
    const PathStats stats = shortest_path_stats(metric);
    const double mean_dist = stats.mean_distance;
    if (!(mean_dist > 0.0)) continue;

    net.links.reserve(metric.links.size());
    for (const Link& l : metric.links) {
      net.links.push_back({l.tail, l.head, l.capacity, l.delay / mean_dist});
    }

    // -- cloud capabilities: all clouds but the last drawn are restricted to
    //    a random pair of functions; the last one hosts the whole universe --
    for (std::size_t c = 0; c < clouds.size(); ++c) {
      CloudNode cn;
      cn.node = node_name(clouds[c]);
      cn.capacity = rng.uniform(cfg.node_capacity_range[0], cfg.node_capacity_range[1]);
      std::vector<int> hosted;
      if (c + 1 < clouds.size()) {
        hosted = draw_distinct(rng, std::min(2, cfg.function_universe), cfg.function_universe);
        std::sort(hosted.begin(), hosted.end());
      } else {
        for (int f = 0; f < cfg.function_universe; ++f) hosted.push_back(f);
      }
      for (int f : hosted) {
        cn.functions.push_back(
            {function_name(f), rng.uniform(cfg.nfv_delay_range[0], cfg.nfv_delay_range[1])});
      }
      net.cloud_nodes.push_back(std::move(cn));
    }

    std::vector<int> plain;  // candidate endpoints: the non-cloud nodes
    for (int i = 0; i < n; ++i) {
      if (std::find(clouds.begin(), clouds.end(), i) == clouds.end()) plain.push_back(i);
    }

    // -- services --
    std::vector<ServiceRequest> services;
    bool routable = true;
    for (int k = 0; k < cfg.service_count; ++k) {
      const int src = plain[rng.below(plain.size())];
      int dst = src;
      while (dst == src) dst = plain[rng.below(plain.size())];

      ServiceRequest svc;
      svc.id = "s" + std::to_string(k + 1);
      svc.source = node_name(src);
      svc.destination = node_name(dst);
      for (int f : draw_distinct(rng, cfg.chain_length, cfg.function_universe)) {
        svc.chain.push_back(function_name(f));
      }
      svc.rates.assign(cfg.chain_length + 1, cfg.rate_value);

      const double dist_k = stats.distance.at({svc.source, svc.destination});
      if (!std::isfinite(dist_k)) {
        routable = false;
        break;
      }
      const double alpha =
          rng.uniform(cfg.threshold_slack_range[0], cfg.threshold_slack_range[1]);
      svc.latency_threshold = 3.0 + 6.0 * dist_k / mean_dist + alpha;
      services.push_back(std::move(svc));
    }
    if (!routable) continue;

    Instance inst;
    inst.network = std::move(net);
    inst.services = std::move(services);
    inst.path_budget = path_budget;
    inst.seed = cfg.seed;
    return inst;
  }
  throw RetryExhausted("no routable topology after " + std::to_string(max_attempts) +
                       " attempts (seed " + std::to_string(cfg.seed) + ")");
}

Instance fig1_instance() {
  Instance inst;
  inst.network.nodes = {"A", "B", "C", "D", "E"};
  inst.network.links = {
      {"A", "B", 2.0, 1.0}, {"A", "C", 2.0, 1.0}, {"B", "E", 2.0, 1.0},
      {"C", "E", 2.0, 1.0}, {"C", "B", 2.0, 1.0}, {"E", "D", 4.0, 1.0},
      {"D", "B", 2.0, 1.0},
  };
  inst.network.cloud_nodes = {
      {"C", 4.0, {{"f2", 1.0}}},
      {"E", 4.0, {{"f1", 1.0}, {"f2", 1.0}}},
  };
  inst.services = {
      {"I", "A", "D", {"f1"}, {1.0, 1.0}, 4.0},
      {"II", "A", "B", {"f2"}, {1.0, 1.0}, 3.0},
  };
  inst.path_budget = 2;
  return inst;
}

Instance fig1_rate4_instance() {
  Instance inst = fig1_instance();
  inst.services = {{"I", "A", "D", {"f1"}, {4.0, 4.0}, 4.0}};
  return inst;
}

}  // namespace sliceopt
