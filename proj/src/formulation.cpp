#include "sliceopt/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace sliceopt {

namespace {

/// Renders `prefix[key=value,...]` names shared by variables and rows.
class NameBuilder {
 public:
  explicit NameBuilder(std::string_view prefix) : out_(prefix) { out_ += '['; }
  NameBuilder& field(std::string_view key, std::string_view value) {
    if (out_.back() != '[') out_ += ',';
    out_ += key;
    out_ += '=';
    out_ += value;
    return *this;
  }
  NameBuilder& field(std::string_view key, int value) { return field(key, std::to_string(value)); }
  std::string str() {
    out_ += ']';
    return out_;
  }

 private:
  std::string out_;
};

}  // namespace

VarKey y_key(const std::string& v) {
  VarKey key;
  key.kind = VarKind::Y_activate;
  key.v = v;
  return key;
}

VarKey x_key(const std::string& k, int s, const std::string& v) {
  VarKey key;
  key.kind = VarKind::X_place;
  key.k = k;
  key.s = s;
  key.v = v;
  return key;
}

VarKey omega_key(const std::string& k, int s, const std::string& vs, const std::string& vt) {
  VarKey key;
  key.kind = VarKind::OMEGA_pairplace;
  key.k = k;
  key.s = s;
  key.vs = vs;
  key.vt = vt;
  return key;
}

VarKey z_key(const std::string& k, int s, const std::string& vs, const std::string& vt, int p,
             const std::string& i, const std::string& j) {
  VarKey key;
  key.kind = VarKind::Z_pathlink;
  key.k = k;
  key.s = s;
  key.vs = vs;
  key.vt = vt;
  key.p = p;
  key.i = i;
  key.j = j;
  return key;
}

VarKey r_path_key(const std::string& k, int s, const std::string& vs, const std::string& vt, int p) {
  VarKey key;
  key.kind = VarKind::R_pathrate;
  key.k = k;
  key.s = s;
  key.vs = vs;
  key.vt = vt;
  key.p = p;
  return key;
}

VarKey r_link_key(const std::string& k, int s, const std::string& vs, const std::string& vt, int p,
                  const std::string& i, const std::string& j) {
  VarKey key = z_key(k, s, vs, vt, p, i, j);
  key.kind = VarKind::R_linkrate_onpath;
  return key;
}

VarKey theta_key(const std::string& k, int s) {
  VarKey key;
  key.kind = VarKind::THETA_segdelay;
  key.k = k;
  key.s = s;
  return key;
}

std::string var_name(const VarKey& key) {
  switch (key.kind) {
    case VarKind::Y_activate:
      return NameBuilder("y").field("v", key.v).str();
    case VarKind::X_place:
      return NameBuilder("x").field("k", key.k).field("s", key.s).field("v", key.v).str();
    case VarKind::OMEGA_pairplace:
      return NameBuilder("omega").field("k", key.k).field("s", key.s).field("vs", key.vs).field("vt", key.vt).str();
    case VarKind::Z_pathlink:
      return NameBuilder("z")
          .field("k", key.k).field("s", key.s).field("vs", key.vs).field("vt", key.vt)
          .field("p", key.p).field("i", key.i).field("j", key.j)
          .str();
    case VarKind::R_pathrate:
      return NameBuilder("r")
          .field("k", key.k).field("s", key.s).field("vs", key.vs).field("vt", key.vt).field("p", key.p)
          .str();
    case VarKind::R_linkrate_onpath:
      return NameBuilder("rl")
          .field("k", key.k).field("s", key.s).field("vs", key.vs).field("vt", key.vt)
          .field("p", key.p).field("i", key.i).field("j", key.j)
          .str();
    case VarKind::THETA_segdelay:
      return NameBuilder("theta").field("k", key.k).field("s", key.s).str();
  }
  throw std::logic_error("unknown VarKind");
}

VarKey parse_var_name(const std::string& name) {
  const auto bracket = name.find('[');
  if (bracket == std::string::npos || name.empty() || name.back() != ']')
    throw std::invalid_argument("malformed variable name: " + name);
  const std::string prefix = name.substr(0, bracket);
  VarKey key;
  if (prefix == "y") key.kind = VarKind::Y_activate;
  else if (prefix == "x") key.kind = VarKind::X_place;
  else if (prefix == "omega") key.kind = VarKind::OMEGA_pairplace;
  else if (prefix == "z") key.kind = VarKind::Z_pathlink;
  else if (prefix == "r") key.kind = VarKind::R_pathrate;
  else if (prefix == "rl") key.kind = VarKind::R_linkrate_onpath;
  else if (prefix == "theta") key.kind = VarKind::THETA_segdelay;
  else throw std::invalid_argument("unknown variable prefix in: " + name);

  const std::string body = name.substr(bracket + 1, name.size() - bracket - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    const std::string item = body.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed field in: " + name);
    const std::string fkey = item.substr(0, eq);
    const std::string fval = item.substr(eq + 1);
    if (fkey == "k") key.k = fval;
    else if (fkey == "s") key.s = std::stoi(fval);
    else if (fkey == "v") key.v = fval;
    else if (fkey == "vs") key.vs = fval;
    else if (fkey == "vt") key.vt = fval;
    else if (fkey == "p") key.p = std::stoi(fval);
    else if (fkey == "i") key.i = fval;
    else if (fkey == "j") key.j = fval;
    else throw std::invalid_argument("unknown field '" + fkey + "' in: " + name);
    pos = comma + 1;
  }
  return key;
}

std::string_view variant_name(ModelVariant variant) {
  switch (variant) {
    case ModelVariant::Full: return "full";
    case ModelVariant::SinglePath: return "single-path";
    case ModelVariant::NoLatency: return "no-latency";
  }
  return "?";
}

int ModelIR::column(const VarKey& key) const {
  const auto it = index_of.find(key);
  return it == index_of.end() ? -1 : it->second;
}

int ModelIR::count(VarKind kind) const {
  int n = 0;
  for (const ModelColumn& col : columns) {
    if (col.key.kind == kind) ++n;
  }
  return n;
}

bool ModelIR::objective_is_integral() const {
  if (objective_constant != std::floor(objective_constant)) return false;
  return std::all_of(objective.begin(), objective.end(),
                     [](double c) { return c == std::floor(c); });
}

namespace {

/// Accumulates sparse terms; silently drops exact zeros so degenerate
/// coefficients (e.g. zero segment rates) never appear in rows.
struct RowTerms {
  std::vector<std::pair<int, double>> terms;
  void add(int col, double coeff) {
    if (coeff != 0.0) terms.emplace_back(col, coeff);
  }
};

class ModelBuilder {
 public:
  ModelBuilder(const Instance& inst, ModelVariant variant, const BuildOptions& opt)
      : inst_(inst), variant_(variant), opt_(opt) {
    with_rates_ = variant != ModelVariant::SinglePath;
    with_delay_ = variant != ModelVariant::NoLatency;
    path_budget_ = variant == ModelVariant::SinglePath
                       ? 1
                       : std::max(1, opt.path_budget.value_or(inst.path_budget));
  }

  ModelIR build() {
    compute_geometry();
    catalog_columns();
    emit_placement_rows();
    if (with_rates_) emit_segment_rate_rows();
    emit_linearization_rows();
    emit_path_selection_rows();
    if (with_rates_) emit_link_rate_rows();
    emit_link_capacity_rows();
    if (with_rates_) emit_rate_conservation_rows();
    emit_path_conservation_rows();
    if (with_delay_) emit_delay_rows();
    if (with_rates_ && opt_.order_path_rates) emit_path_order_rows();
    model_.path_budget = path_budget_;
    model_.variant = variant_;
    return std::move(model_);
  }

 private:
  // Candidate placements per segment: tail/head node lists whose cross
  // product (minus equal pairs) indexes every routing variable.
  struct ServiceGeom {
    std::vector<std::vector<std::string>> cand;  // cand[s], s in 1..l
    std::vector<std::vector<std::pair<std::string, std::string>>> pairs;  // pairs[s], s in 0..l
  };

  void compute_geometry() {
    for (const ServiceRequest& svc : inst_.services) {
      ServiceGeom geom;
      const int l = svc.chain_length();
      geom.cand.resize(l + 1);
      for (int s = 1; s <= l; ++s) {
        for (const CloudNode& cn : inst_.network.cloud_nodes) {
          if (cn.supports(svc.chain[s - 1])) geom.cand[s].push_back(cn.node);
        }
        if (geom.cand[s].empty()) throw UnsatisfiableFunction(svc.id, svc.chain[s - 1]);
      }
      geom.pairs.resize(l + 1);
      for (int s = 0; s <= l; ++s) {
        const std::vector<std::string> tails =
            s == 0 ? std::vector<std::string>{svc.source} : geom.cand[s];
        const std::vector<std::string>& heads =
            s == l ? dest_singleton(svc) : geom.cand[s + 1];
        for (const std::string& vs : tails) {
          for (const std::string& vt : heads) {
            if (vs != vt) geom.pairs[s].emplace_back(vs, vt);
          }
        }
      }
      geom_.push_back(std::move(geom));
    }
    for (std::size_t li = 0; li < inst_.network.links.size(); ++li) {
      in_links_[inst_.network.links[li].head].push_back(static_cast<int>(li));
      out_links_[inst_.network.links[li].tail].push_back(static_cast<int>(li));
    }
  }

  const std::vector<std::string>& dest_singleton(const ServiceRequest& svc) {
    dest_buf_.assign(1, svc.destination);
    return dest_buf_;
  }

  int add_column(const VarKey& key, bool binary) {
    ModelColumn col;
    col.key = key;
    col.binary = binary;
    col.lower = 0.0;
    col.upper = binary ? 1.0 : std::numeric_limits<double>::infinity();
    col.name = var_name(key);
    const int idx = static_cast<int>(model_.columns.size());
    model_.index_of.emplace(key, idx);
    model_.columns.push_back(std::move(col));
    return idx;
  }

  // Column order: Y | X | OMEGA | Z | R | RL | THETA. Binary kinds lead, so
  // the branching rule's index tie-break follows the kind priority for free.
  void catalog_columns() {
    for (const CloudNode& cn : inst_.network.cloud_nodes) add_column(y_key(cn.node), true);
    for_each_service([&](const ServiceRequest& svc, const ServiceGeom& geom) {
      for (int s = 1; s <= svc.chain_length(); ++s) {
        for (const std::string& v : geom.cand[s]) add_column(x_key(svc.id, s, v), true);
      }
    });
    for_each_service([&](const ServiceRequest& svc, const ServiceGeom& geom) {
      for (int s = 1; s + 1 <= svc.chain_length(); ++s) {
        for (const auto& [vs, vt] : geom.pairs[s]) add_column(omega_key(svc.id, s, vs, vt), true);
      }
    });
    for_each_tuple([&](const ServiceRequest& svc, int s, const std::string& vs,
                       const std::string& vt, int p) {
      for (const Link& l : inst_.network.links) {
        add_column(z_key(svc.id, s, vs, vt, p, l.tail, l.head), true);
      }
    });
    if (with_rates_) {
      for_each_tuple([&](const ServiceRequest& svc, int s, const std::string& vs,
                         const std::string& vt, int p) {
        add_column(r_path_key(svc.id, s, vs, vt, p), false);
      });
      for_each_tuple([&](const ServiceRequest& svc, int s, const std::string& vs,
                         const std::string& vt, int p) {
        for (const Link& l : inst_.network.links) {
          add_column(r_link_key(svc.id, s, vs, vt, p, l.tail, l.head), false);
        }
      });
    }
    if (with_delay_) {
      for_each_service([&](const ServiceRequest& svc, const ServiceGeom&) {
        for (int s = 0; s <= svc.chain_length(); ++s) add_column(theta_key(svc.id, s), false);
      });
    }
    model_.objective.assign(model_.columns.size(), 0.0);
    for (std::size_t c = 0; c < model_.columns.size(); ++c) {
      if (model_.columns[c].key.kind == VarKind::Y_activate) model_.objective[c] = 1.0;
    }
    model_.objective_constant = 0.0;
  }

  void add_row(std::string_view fam, std::string name, RowTerms terms, Relation rel, double rhs) {
    if (terms.terms.empty()) return;  // family quantified over an empty index set
    model_.rows.push_back({std::string(fam), std::move(name), std::move(terms.terms), rel, rhs});
  }

  /// Column standing in for the placement product x[vs,s]*x[vt,s+1]. The
  /// virtual endpoints contribute the constant 1, collapsing the product to
  /// a single placement column; middle segments use the shared omega.
  int product_column(const ServiceRequest& svc, int s, const std::string& vs,
                     const std::string& vt) const {
    if (s == 0) return model_.column(x_key(svc.id, 1, vt));
    if (s == svc.chain_length()) return model_.column(x_key(svc.id, s, vs));
    return model_.column(omega_key(svc.id, s, vs, vt));
  }

  void emit_placement_rows() {
    // per-flow node budget: at most one function of a flow per node
    for_each_service([&](const ServiceRequest& svc, const ServiceGeom&) {
      for (const CloudNode& cn : inst_.network.cloud_nodes) {
        RowTerms t;
        for (int s = 1; s <= svc.chain_length(); ++s) {
          const int col = model_.column(x_key(svc.id, s, cn.node));
          if (col >= 0) t.add(col, 1.0);
        }
        add_row(family::node_budget,
                NameBuilder("node_budget").field("k", svc.id).field("v", cn.node).str(),
                std::move(t), Relation::LessEq, 1.0);
      }
    });
    // each function served by exactly one cloud node
    for_each_service([&](const ServiceRequest& svc, const ServiceGeom& geom) {
      for (int s = 1; s <= svc.chain_length(); ++s) {
        RowTerms t;
        for (const std::string& v : geom.cand[s]) t.add(model_.column(x_key(svc.id, s, v)), 1.0);
        add_row(family::assign_once,
                NameBuilder("assign_once").field("k", svc.id).field("s", s).str(), std::move(t),
                Relation::Equal, 1.0);
      }
    });
    // compute capacity per cloud node
    for (const CloudNode& cn : inst_.network.cloud_nodes) {
      RowTerms t;
      for_each_service([&](const ServiceRequest& svc, const ServiceGeom&) {
        for (int s = 1; s <= svc.chain_length(); ++s) {
          const int col = model_.column(x_key(svc.id, s, cn.node));
          if (col >= 0) t.add(col, svc.rates[s]);
        }
      });
      add_row(family::node_cap, NameBuilder("node_cap").field("v", cn.node).str(), std::move(t),
              Relation::LessEq, cn.capacity);
    }
    // placement activates the hosting node
    for_each_service([&](const ServiceRequest& svc, const ServiceGeom& geom) {
      for (int s = 1; s <= svc.chain_length(); ++s) {
        for (const std::string& v : geom.cand[s]) {
          RowTerms t;
          t.add(model_.column(x_key(svc.id, s, v)), 1.0);
          t.add(model_.column(y_key(v)), -1.0);
          add_row(family::activation,
                  NameBuilder("activation").field("k", svc.id).field("s", s).field("v", v).str(),
                  std::move(t), Relation::LessEq, 0.0);
        }
      }
    });
  }

  void emit_segment_rate_rows() {
    for_each_pair([&](const ServiceRequest& svc, int s, const std::string& vs,
                      const std::string& vt) {
      RowTerms t;
      for (int p = 1; p <= path_budget_; ++p) {
        t.add(model_.column(r_path_key(svc.id, s, vs, vt, p)), 1.0);
      }
      t.add(product_column(svc, s, vs, vt), -svc.rates[s]);
      add_row(family::seg_rate_sum,
              NameBuilder("seg_rate_sum").field("k", svc.id).field("s", s).field("vs", vs).field("vt", vt).str(),
              std::move(t), Relation::Equal, 0.0);
    });
  }

  void emit_linearization_rows() {
    for_each_service([&](const ServiceRequest& svc, const ServiceGeom& geom) {
      for (int s = 1; s + 1 <= svc.chain_length(); ++s) {
        for (const auto& [vs, vt] : geom.pairs[s]) {
          const int w = model_.column(omega_key(svc.id, s, vs, vt));
          const int xt = model_.column(x_key(svc.id, s, vs));
          const int xh = model_.column(x_key(svc.id, s + 1, vt));
          const auto name = [&](std::string_view fam) {
            return NameBuilder(fam).field("k", svc.id).field("s", s).field("vs", vs).field("vt", vt).str();
          };
          RowTerms tail;
          tail.add(w, 1.0);
          tail.add(xt, -1.0);
          add_row(family::lin_le_tail, name(family::lin_le_tail), std::move(tail),
                  Relation::LessEq, 0.0);
          RowTerms head;
          head.add(w, 1.0);
          head.add(xh, -1.0);
          add_row(family::lin_le_head, name(family::lin_le_head), std::move(head),
                  Relation::LessEq, 0.0);
          RowTerms both;
          both.add(w, 1.0);
          both.add(xt, -1.0);
          both.add(xh, -1.0);
          add_row(family::lin_ge_sum, name(family::lin_ge_sum), std::move(both),
                  Relation::GreaterEq, -1.0);
        }
      }
    });
  }

  void emit_path_selection_rows() {
    for_each_tuple([&](const ServiceRequest& svc, int s, const std::string& vs,
                       const std::string& vt, int p) {
      const int prod = product_column(svc, s, vs, vt);
      for (const Link& l : inst_.network.links) {
        RowTerms t;
        t.add(model_.column(z_key(svc.id, s, vs, vt, p, l.tail, l.head)), 1.0);
        t.add(prod, -1.0);
        add_row(family::path_sel,
                NameBuilder("path_sel")
                    .field("k", svc.id).field("s", s).field("vs", vs).field("vt", vt)
                    .field("p", p).field("i", l.tail).field("j", l.head)
                    .str(),
                std::move(t), Relation::LessEq, 0.0);
      }
    });
  }

  void emit_link_rate_rows() {
    for_each_tuple([&](const ServiceRequest& svc, int s, const std::string& vs,
                       const std::string& vt, int p) {
      for (const Link& l : inst_.network.links) {
        RowTerms t;
        t.add(model_.column(r_link_key(svc.id, s, vs, vt, p, l.tail, l.head)), 1.0);
        t.add(model_.column(z_key(svc.id, s, vs, vt, p, l.tail, l.head)), -svc.rates[s]);
        add_row(family::link_rate_sel,
                NameBuilder("link_rate_sel")
                    .field("k", svc.id).field("s", s).field("vs", vs).field("vt", vt)
                    .field("p", p).field("i", l.tail).field("j", l.head)
                    .str(),
                std::move(t), Relation::LessEq, 0.0);
      }
    });
  }

  void emit_link_capacity_rows() {
    for (const Link& l : inst_.network.links) {
      RowTerms t;
      for_each_tuple([&](const ServiceRequest& svc, int s, const std::string& vs,
                         const std::string& vt, int p) {
        if (with_rates_) {
          t.add(model_.column(r_link_key(svc.id, s, vs, vt, p, l.tail, l.head)), 1.0);
        } else {
          // single-path reduction: the per-link rate equals lambda_s * z
          t.add(model_.column(z_key(svc.id, s, vs, vt, p, l.tail, l.head)), svc.rates[s]);
        }
      });
      add_row(family::link_cap, NameBuilder("link_cap").field("i", l.tail).field("j", l.head).str(),
              std::move(t), Relation::LessEq, l.capacity);
    }
  }

  void emit_rate_conservation_rows() {
    for_each_tuple([&](const ServiceRequest& svc, int s, const std::string& vs,
                       const std::string& vt, int p) {
      const int rate = model_.column(r_path_key(svc.id, s, vs, vt, p));
      for (const std::string& node : inst_.network.nodes) {
        RowTerms t;
        add_incidence(t, node, [&](const Link& l) {
          return model_.column(r_link_key(svc.id, s, vs, vt, p, l.tail, l.head));
        });
        if (node == vs) t.add(rate, 1.0);
        if (node == vt) t.add(rate, -1.0);
        add_row(family::flow_rate,
                NameBuilder("flow_rate")
                    .field("k", svc.id).field("s", s).field("vs", vs).field("vt", vt)
                    .field("p", p).field("i", node)
                    .str(),
                std::move(t), Relation::Equal, 0.0);
      }
    });
  }

  void emit_path_conservation_rows() {
    for_each_tuple([&](const ServiceRequest& svc, int s, const std::string& vs,
                       const std::string& vt, int p) {
      const int prod = product_column(svc, s, vs, vt);
      for (const std::string& node : inst_.network.nodes) {
        RowTerms t;
        add_incidence(t, node, [&](const Link& l) {
          return model_.column(z_key(svc.id, s, vs, vt, p, l.tail, l.head));
        });
        if (node == vs) t.add(prod, 1.0);
        if (node == vt) t.add(prod, -1.0);
        add_row(family::flow_path,
                NameBuilder("flow_path")
                    .field("k", svc.id).field("s", s).field("vs", vs).field("vt", vt)
                    .field("p", p).field("i", node)
                    .str(),
                std::move(t), Relation::Equal, 0.0);
      }
    });
  }

  void emit_delay_rows() {
    // per-segment communication delay dominates every path's walk delay
    for_each_service([&](const ServiceRequest& svc, const ServiceGeom& geom) {
      for (int s = 0; s <= svc.chain_length(); ++s) {
        for (int p = 1; p <= path_budget_; ++p) {
          RowTerms t;
          t.add(model_.column(theta_key(svc.id, s)), 1.0);
          for (const auto& [vs, vt] : geom.pairs[s]) {
            for (const Link& l : inst_.network.links) {
              t.add(model_.column(z_key(svc.id, s, vs, vt, p, l.tail, l.head)), -l.delay);
            }
          }
          add_row(family::seg_delay,
                  NameBuilder("seg_delay").field("k", svc.id).field("s", s).field("p", p).str(),
                  std::move(t), Relation::GreaterEq, 0.0);
        }
      }
    });
    // end-to-end threshold with the two delay totals substituted in
    for_each_service([&](const ServiceRequest& svc, const ServiceGeom& geom) {
      RowTerms t;
      for (int s = 0; s <= svc.chain_length(); ++s) {
        t.add(model_.column(theta_key(svc.id, s)), 1.0);
      }
      for (int s = 1; s <= svc.chain_length(); ++s) {
        for (const std::string& v : geom.cand[s]) {
          const auto delay = inst_.network.cloud(v)->function_delay(svc.chain[s - 1]);
          t.add(model_.column(x_key(svc.id, s, v)), delay.value_or(0.0));
        }
      }
      add_row(family::e2e, NameBuilder("e2e").field("k", svc.id).str(), std::move(t),
              Relation::LessEq, svc.latency_threshold);
    });
  }

  void emit_path_order_rows() {
    for_each_pair([&](const ServiceRequest& svc, int s, const std::string& vs,
                      const std::string& vt) {
      for (int p = 1; p < path_budget_; ++p) {
        RowTerms t;
        t.add(model_.column(r_path_key(svc.id, s, vs, vt, p)), 1.0);
        t.add(model_.column(r_path_key(svc.id, s, vs, vt, p + 1)), -1.0);
        add_row(family::path_order,
                NameBuilder("path_order")
                    .field("k", svc.id).field("s", s).field("vs", vs).field("vt", vt).field("p", p)
                    .str(),
                std::move(t), Relation::GreaterEq, 0.0);
      }
    });
  }

  template <typename Fn>
  void for_each_service(Fn&& fn) {
    for (std::size_t i = 0; i < inst_.services.size(); ++i) fn(inst_.services[i], geom_[i]);
  }

  template <typename Fn>
  void for_each_pair(Fn&& fn) {
    for_each_service([&](const ServiceRequest& svc, const ServiceGeom& geom) {
      for (int s = 0; s <= svc.chain_length(); ++s) {
        for (const auto& [vs, vt] : geom.pairs[s]) fn(svc, s, vs, vt);
      }
    });
  }

  template <typename Fn>
  void for_each_tuple(Fn&& fn) {
    for_each_pair([&](const ServiceRequest& svc, int s, const std::string& vs,
                      const std::string& vt) {
      for (int p = 1; p <= path_budget_; ++p) fn(svc, s, vs, vt, p);
    });
  }

  /// Adds +1 terms for links entering `node` and -1 terms for links leaving
  /// it, with columns supplied by `col_of`.
  template <typename ColFn>
  void add_incidence(RowTerms& t, const std::string& node, ColFn&& col_of) {
    if (const auto it = in_links_.find(node); it != in_links_.end()) {
      for (int li : it->second) t.add(col_of(inst_.network.links[li]), 1.0);
    }
    if (const auto it = out_links_.find(node); it != out_links_.end()) {
      for (int li : it->second) t.add(col_of(inst_.network.links[li]), -1.0);
    }
  }

  const Instance& inst_;
  ModelVariant variant_;
  BuildOptions opt_;
  bool with_rates_ = true;
  bool with_delay_ = true;
  int path_budget_ = 1;
  ModelIR model_;
  std::vector<ServiceGeom> geom_;
  std::vector<std::string> dest_buf_;
  std::map<std::string, std::vector<int>> in_links_;
  std::map<std::string, std::vector<int>> out_links_;
};

}  // namespace

ModelIR build_full(const Instance& inst, const BuildOptions& opt) {
  return ModelBuilder(inst, ModelVariant::Full, opt).build();
}

ModelIR build_single_path(const Instance& inst, const BuildOptions& opt) {
  return ModelBuilder(inst, ModelVariant::SinglePath, opt).build();
}

ModelIR build_no_latency(const Instance& inst, const BuildOptions& opt) {
  return ModelBuilder(inst, ModelVariant::NoLatency, opt).build();
}

}  // namespace sliceopt
