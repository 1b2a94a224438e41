#include "sliceopt/solution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sliceopt/lp_text.hpp"

namespace sliceopt {

namespace {

constexpr double kTol = 1e-6;       // pass margin for every plan-level check
constexpr double kUseTol = 1e-9;    // below this a path carries no traffic
constexpr double kMissing = 1e30;   // stands in for a walk over a non-link

double walk_delay(const std::vector<std::string>& nodes,
                  const std::map<std::pair<std::string, std::string>, double>& link_delay) {
  double total = 0.0;
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto it = link_delay.find({nodes[i], nodes[i + 1]});
    total += it == link_delay.end() ? kMissing : it->second;
  }
  return total;
}

std::map<std::pair<std::string, std::string>, double> delay_index(const Network& net) {
  std::map<std::pair<std::string, std::string>, double> index;
  for (const Link& l : net.links) index[{l.tail, l.head}] = l.delay;
  return index;
}

/// Accumulates one constraint family: tracks the smallest margin and the
/// items that breach it.
struct FamilyAcc {
  ValidationCheck check;
  bool any = false;

  explicit FamilyAcc(std::string family) { check.family = std::move(family); }

  void item(double slack, const std::string& who) {
    if (!any || slack < check.worst_slack) check.worst_slack = slack;
    any = true;
    if (slack < -kTol) {
      check.pass = false;
      check.offenders.push_back(who);
    }
  }

  ValidationCheck done() {
    if (!any) check.worst_slack = 0.0;
    return std::move(check);
  }
};

}  // namespace

double SegmentRoute::delay() const {
  double worst = 0.0;
  for (const RoutedPath& p : paths) worst = std::max(worst, p.delay);
  return worst;
}

double SlicePlan::power(const PowerParams& params) const {
  return (params.beta1 - params.beta2) * static_cast<double>(activated.size()) +
         params.beta2 * node_count + params.delta * total_rate;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const ValidationCheck* ValidationReport::find(const std::string& family) const {
  for (const auto& c : checks)
    if (c.family == family) return &c;
  return nullptr;
}

namespace {

/// Follows the indicator arcs of one path from `tail`, always taking the
/// lexicographically smallest unused outgoing arc. Conservation makes the
/// walk stall exactly at `head`; loops through repeated nodes and leftover
/// arcs are detached cycles and get pruned with a warning.
std::vector<std::string> extract_walk(const std::string& service, int segment,
                                      const std::string& tail, const std::string& head,
                                      std::vector<std::pair<std::string, std::string>> arcs,
                                      std::vector<std::string>& warnings) {
  std::sort(arcs.begin(), arcs.end());
  std::vector<bool> used(arcs.size(), false);

  std::vector<std::string> walk{tail};
  std::string at = tail;
  while (true) {
    int next = -1;
    for (size_t a = 0; a < arcs.size(); ++a) {
      if (!used[a] && arcs[a].first == at) {
        next = static_cast<int>(a);
        break;
      }
    }
    if (next < 0) break;
    used[next] = true;
    at = arcs[next].second;
    walk.push_back(at);
  }
  if (at != head)
    throw DecodeIncoherent(service, segment,
                           "path arcs stall at " + at + " before reaching " + head);

  // Excise loops: a repeated node means the walk threaded a cycle.
  bool pruned_loop = false;
  for (size_t i = 0; i < walk.size();) {
    size_t j = i + 1;
    while (j < walk.size() && walk[j] != walk[i]) ++j;
    if (j < walk.size()) {
      walk.erase(walk.begin() + static_cast<long>(i), walk.begin() + static_cast<long>(j));
      pruned_loop = true;
    } else {
      ++i;
    }
  }
  if (pruned_loop)
    warnings.push_back("service " + service + " segment " + std::to_string(segment) +
                       ": pruned an indicator cycle threaded through the walk");
  const long leftover = std::count(used.begin(), used.end(), false);
  if (leftover > 0)
    warnings.push_back("service " + service + " segment " + std::to_string(segment) + ": pruned " +
                       std::to_string(leftover) + " detached indicator cycle arc(s)");
  return walk;
}

}  // namespace

SlicePlan decode(const ModelIR& model, const MblpSolution& sol, const Instance& inst) {
  SlicePlan plan;
  plan.node_count = static_cast<int>(inst.network.nodes.size());

  auto value = [&](const VarKey& key) {
    const int c = model.column(key);
    return c < 0 ? 0.0 : sol.values[static_cast<size_t>(c)];
  };

  for (const CloudNode& cn : inst.network.cloud_nodes)
    if (value(y_key(cn.node)) >= 0.5) plan.activated.push_back(cn.node);
  std::sort(plan.activated.begin(), plan.activated.end());

  const auto link_delay = delay_index(inst.network);
  const bool has_rates = model.count(VarKind::R_pathrate) > 0;

  for (const ServiceRequest& svc : inst.services) {
    ServicePlan sp;
    sp.service = svc.id;
    for (int s = 1; s <= svc.chain_length(); ++s) plan.total_rate += svc.rates[s];

    for (int s = 1; s <= svc.chain_length(); ++s) {
      for (const CloudNode& cn : inst.network.cloud_nodes) {
        if (value(x_key(svc.id, s, cn.node)) >= 0.5) {
          sp.placement[s] = cn.node;
          break;
        }
      }
      if (!sp.placement.count(s))
        throw DecodeIncoherent(svc.id, s, "no placement column set for this function position");
      const auto delay = inst.network.cloud(sp.placement[s])->function_delay(svc.chain[s - 1]);
      sp.nfv_delay += delay.value_or(0.0);
    }

    for (int s = 0; s <= svc.chain_length(); ++s) {
      SegmentRoute seg;
      seg.tail = s == 0 ? svc.source : sp.placement[s];
      seg.head = s == svc.chain_length() ? svc.destination : sp.placement[s + 1];
      seg.required_rate = svc.rates[s];

      for (int p = 1; p <= model.path_budget; ++p) {
        const double rate = has_rates ? value(r_path_key(svc.id, s, seg.tail, seg.head, p))
                                      : (p == 1 ? svc.rates[s] : 0.0);
        if (rate <= kUseTol) continue;  // unused slot: dropped, never walked
        std::vector<std::pair<std::string, std::string>> arcs;
        for (const Link& l : inst.network.links)
          if (value(z_key(svc.id, s, seg.tail, seg.head, p, l.tail, l.head)) >= 0.5)
            arcs.emplace_back(l.tail, l.head);
        RoutedPath path;
        path.nodes = extract_walk(svc.id, s, seg.tail, seg.head, std::move(arcs), plan.warnings);
        path.rate = rate;
        path.delay = walk_delay(path.nodes, link_delay);
        seg.paths.push_back(std::move(path));
      }
      sp.comm_delay += seg.delay();
      sp.segments.push_back(std::move(seg));
    }
    plan.services.push_back(std::move(sp));
  }
  return plan;
}

ValidationReport validate(const SlicePlan& plan, const Instance& inst) {
  ValidationReport report;
  const auto link_delay = delay_index(inst.network);

  auto service_of = [&](const std::string& id) -> const ServiceRequest* {
    for (const ServiceRequest& svc : inst.services)
      if (svc.id == id) return &svc;
    return nullptr;
  };

  // placement_capability: every placed function sits on a cloud node that
  // supports it.
  {
    FamilyAcc acc("placement_capability");
    for (const ServicePlan& sp : plan.services) {
      const ServiceRequest* svc = service_of(sp.service);
      for (const auto& [s, node] : sp.placement) {
        const CloudNode* cloud = inst.network.cloud(node);
        const bool known = svc && s >= 1 && s <= svc->chain_length();
        const bool ok = known && cloud && cloud->supports(svc->chain[s - 1]);
        acc.item(ok ? 1.0 : -1.0, "k=" + sp.service + ",s=" + std::to_string(s) + ",v=" + node);
      }
    }
    report.checks.push_back(acc.done());
  }

  // placement_unique: exactly one node per function position.
  {
    FamilyAcc acc("placement_unique");
    for (const ServicePlan& sp : plan.services) {
      const ServiceRequest* svc = service_of(sp.service);
      const int chain = svc ? svc->chain_length() : 0;
      for (int s = 1; s <= chain; ++s)
        acc.item(sp.placement.count(s) ? 1.0 : -1.0,
                 "k=" + sp.service + ",s=" + std::to_string(s));
      for (const auto& [s, node] : sp.placement)
        if (s < 1 || s > chain)
          acc.item(-1.0, "k=" + sp.service + ",s=" + std::to_string(s));
    }
    report.checks.push_back(acc.done());
  }

  // function_per_node: a flow places at most one of its functions per node.
  {
    FamilyAcc acc("function_per_node");
    for (const ServicePlan& sp : plan.services) {
      std::map<std::string, int> count;
      for (const auto& [s, node] : sp.placement) ++count[node];
      for (const auto& [node, n] : count)
        acc.item(1.0 - n, "k=" + sp.service + ",v=" + node);
    }
    report.checks.push_back(acc.done());
  }

  // node_capacity: per cloud node, hosted rates within compute capacity.
  {
    FamilyAcc acc("node_capacity");
    std::map<std::string, double> load;
    for (const ServicePlan& sp : plan.services) {
      const ServiceRequest* svc = service_of(sp.service);
      if (!svc) continue;
      for (const auto& [s, node] : sp.placement)
        if (s >= 1 && s <= svc->chain_length()) load[node] += svc->rates[s];
    }
    for (const CloudNode& cn : inst.network.cloud_nodes)
      acc.item(cn.capacity - load[cn.node], "v=" + cn.node);
    report.checks.push_back(acc.done());
  }

  // link_capacity: per directed link, the sum of path rates crossing it.
  {
    FamilyAcc acc("link_capacity");
    std::map<std::pair<std::string, std::string>, double> load;
    for (const ServicePlan& sp : plan.services)
      for (const SegmentRoute& seg : sp.segments)
        for (const RoutedPath& path : seg.paths)
          for (size_t i = 0; i + 1 < path.nodes.size(); ++i)
            load[{path.nodes[i], path.nodes[i + 1]}] += path.rate;
    for (const Link& l : inst.network.links)
      acc.item(l.capacity - load[{l.tail, l.head}], "link=" + l.tail + "->" + l.head);
    report.checks.push_back(acc.done());
  }

  // walk_connected: each used path is a real link walk from tail to head.
  {
    FamilyAcc acc("walk_connected");
    for (const ServicePlan& sp : plan.services)
      for (size_t s = 0; s < sp.segments.size(); ++s) {
        const SegmentRoute& seg = sp.segments[s];
        for (size_t p = 0; p < seg.paths.size(); ++p) {
          const auto& nodes = seg.paths[p].nodes;
          bool ok = !nodes.empty() && nodes.front() == seg.tail && nodes.back() == seg.head;
          for (size_t i = 0; ok && i + 1 < nodes.size(); ++i)
            ok = link_delay.count({nodes[i], nodes[i + 1]}) > 0;
          acc.item(ok ? 1.0 : -1.0, "k=" + sp.service + ",s=" + std::to_string(s) +
                                        ",path=" + std::to_string(p + 1));
        }
      }
    report.checks.push_back(acc.done());
  }

  // rate_conservation: used-path rates of a segment sum to its required rate.
  {
    FamilyAcc acc("rate_conservation");
    for (const ServicePlan& sp : plan.services) {
      const ServiceRequest* svc = service_of(sp.service);
      if (!svc) continue;
      for (size_t s = 0; s < sp.segments.size(); ++s) {
        if (s >= svc->rates.size()) break;
        double total = 0.0;
        for (const RoutedPath& path : sp.segments[s].paths) total += path.rate;
        acc.item(-std::fabs(total - svc->rates[s]),
                 "k=" + sp.service + ",s=" + std::to_string(s));
      }
    }
    report.checks.push_back(acc.done());
  }

  // path_count: at most the instance's path budget per segment.
  {
    FamilyAcc acc("path_count");
    for (const ServicePlan& sp : plan.services)
      for (size_t s = 0; s < sp.segments.size(); ++s)
        acc.item(static_cast<double>(inst.path_budget) -
                     static_cast<double>(sp.segments[s].paths.size()),
                 "k=" + sp.service + ",s=" + std::to_string(s));
    report.checks.push_back(acc.done());
  }

  // activation_consistent: hosting nodes appear in the activation set.
  {
    FamilyAcc acc("activation_consistent");
    const std::set<std::string> on(plan.activated.begin(), plan.activated.end());
    for (const ServicePlan& sp : plan.services)
      for (const auto& [s, node] : sp.placement)
        acc.item(on.count(node) ? 1.0 : -1.0,
                 "k=" + sp.service + ",s=" + std::to_string(s) + ",v=" + node);
    report.checks.push_back(acc.done());
  }

  // segment_endpoints: segments chain source -> placements in order -> destination.
  {
    FamilyAcc acc("segment_endpoints");
    for (const ServicePlan& sp : plan.services) {
      const ServiceRequest* svc = service_of(sp.service);
      if (!svc) {
        acc.item(-1.0, "k=" + sp.service);
        continue;
      }
      const int chain = svc->chain_length();
      acc.item(sp.segments.size() == static_cast<size_t>(chain) + 1 ? 1.0 : -1.0,
               "k=" + sp.service + ",segments");
      for (size_t s = 0; s < sp.segments.size(); ++s) {
        const SegmentRoute& seg = sp.segments[s];
        const int si = static_cast<int>(s);
        auto placed = [&](int pos) {
          const auto it = sp.placement.find(pos);
          return it == sp.placement.end() ? std::string() : it->second;
        };
        const std::string want_tail = si == 0 ? svc->source : placed(si);
        const std::string want_head = si == chain ? svc->destination : placed(si + 1);
        acc.item(seg.tail == want_tail && seg.head == want_head ? 1.0 : -1.0,
                 "k=" + sp.service + ",s=" + std::to_string(s));
      }
    }
    report.checks.push_back(acc.done());
  }

  // e2e_latency: recomputed link delay (max per segment) plus recomputed
  // processing delay within the service threshold.
  {
    FamilyAcc acc("e2e_latency");
    for (const ServicePlan& sp : plan.services) {
      const ServiceRequest* svc = service_of(sp.service);
      if (!svc) continue;
      double comm = 0.0;
      for (const SegmentRoute& seg : sp.segments) {
        double worst = 0.0;
        for (const RoutedPath& path : seg.paths)
          worst = std::max(worst, walk_delay(path.nodes, link_delay));
        comm += worst;
      }
      double nfv = 0.0;
      for (const auto& [s, node] : sp.placement) {
        if (s < 1 || s > svc->chain_length()) continue;
        const CloudNode* cloud = inst.network.cloud(node);
        if (cloud) nfv += cloud->function_delay(svc->chain[s - 1]).value_or(0.0);
      }
      acc.item(svc->latency_threshold - (comm + nfv), "k=" + sp.service);
    }
    report.checks.push_back(acc.done());
  }

  return report;
}

double e2e_delay(const SlicePlan& plan, const std::string& k) {
  for (const ServicePlan& sp : plan.services) {
    if (sp.service != k) continue;
    double comm = 0.0;
    for (const SegmentRoute& seg : sp.segments) comm += seg.delay();
    return comm + sp.nfv_delay;
  }
  throw UnknownService(k);
}

std::string render_plan(const SlicePlan& plan, const PowerParams& params) {
  nlohmann::ordered_json doc;
  auto& services = doc["services"] = nlohmann::ordered_json::array();
  for (const ServicePlan& sp : plan.services) {
    nlohmann::ordered_json js;
    js["service"] = sp.service;
    auto& placement = js["placement"] = nlohmann::ordered_json::object();
    for (const auto& [s, node] : sp.placement) placement[std::to_string(s)] = node;
    auto& segments = js["segments"] = nlohmann::ordered_json::array();
    for (size_t s = 0; s < sp.segments.size(); ++s) {
      const SegmentRoute& seg = sp.segments[s];
      nlohmann::ordered_json jseg;
      jseg["index"] = s;
      jseg["tail"] = seg.tail;
      jseg["head"] = seg.head;
      jseg["required_rate"] = seg.required_rate;
      auto& paths = jseg["paths"] = nlohmann::ordered_json::array();
      for (const RoutedPath& path : seg.paths)
        paths.push_back({{"nodes", path.nodes}, {"rate", path.rate}, {"delay", path.delay}});
      jseg["delay"] = seg.delay();
      segments.push_back(std::move(jseg));
    }
    js["comm_delay"] = sp.comm_delay;
    js["nfv_delay"] = sp.nfv_delay;
    js["total_delay"] = sp.total_delay();
    services.push_back(std::move(js));
  }
  doc["activated"] = plan.activated;
  doc["node_count"] = plan.node_count;
  doc["total_rate"] = plan.total_rate;
  doc["warnings"] = plan.warnings;
  doc["power"] = {{"beta1", params.beta1},
                  {"beta2", params.beta2},
                  {"delta", params.delta},
                  {"value", plan.power(params)}};
  return doc.dump(2) + "\n";
}

SlicePlan parse_plan(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("plan JSON parse error: ") + e.what());
  }
  SlicePlan plan;
  try {
    for (const auto& js : doc.at("services")) {
      ServicePlan sp;
      sp.service = js.at("service").get<std::string>();
      for (const auto& [s, node] : js.at("placement").items())
        sp.placement[std::stoi(s)] = node.get<std::string>();
      for (const auto& jseg : js.at("segments")) {
        SegmentRoute seg;
        seg.tail = jseg.at("tail").get<std::string>();
        seg.head = jseg.at("head").get<std::string>();
        seg.required_rate = jseg.at("required_rate").get<double>();
        for (const auto& jp : jseg.at("paths")) {
          RoutedPath path;
          path.nodes = jp.at("nodes").get<std::vector<std::string>>();
          path.rate = jp.at("rate").get<double>();
          path.delay = jp.at("delay").get<double>();
          seg.paths.push_back(std::move(path));
        }
        sp.segments.push_back(std::move(seg));
      }
      sp.comm_delay = js.at("comm_delay").get<double>();
      sp.nfv_delay = js.at("nfv_delay").get<double>();
      plan.services.push_back(std::move(sp));
    }
    plan.activated = doc.at("activated").get<std::vector<std::string>>();
    plan.node_count = doc.at("node_count").get<int>();
    plan.total_rate = doc.at("total_rate").get<double>();
    if (doc.contains("warnings"))
      plan.warnings = doc.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("plan JSON shape error: ") + e.what());
  }
  return plan;
}

std::string render_validation(const ValidationReport& report) {
  std::ostringstream out;
  for (const ValidationCheck& c : report.checks) {
    out << (c.pass ? "PASS" : "FAIL") << ' ' << c.family << " worst_slack=";
    out << format_number(c.worst_slack);
    if (!c.offenders.empty()) {
      out << " offenders=";
      for (size_t i = 0; i < c.offenders.size(); ++i)
        out << (i ? ";" : "") << c.offenders[i];
    }
    out << '\n';
  }
  out << "result: " << (report.all_pass() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string render_validation_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  auto& checks = doc["checks"] = nlohmann::ordered_json::array();
  for (const ValidationCheck& c : report.checks)
    checks.push_back({{"family", c.family},
                      {"pass", c.pass},
                      {"worst_slack", c.worst_slack},
                      {"offenders", c.offenders}});
  doc["pass"] = report.all_pass();
  return doc.dump(2) + "\n";
}

}  // namespace sliceopt
