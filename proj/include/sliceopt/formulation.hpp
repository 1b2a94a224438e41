#pragma once

#include <compare>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sliceopt/net_model.hpp"
#include "sliceopt/relation.hpp"

namespace sliceopt {

/// Variable families of the slicing program.
///
/// The enumeration order doubles as the column-block order in every built
/// model, which in turn drives the solver's branching tie-breaks.
enum class VarKind {
  Y_activate,          // y[v]: cloud node v powered on
  X_place,             // x[k,s,v]: function s of service k runs on v
  OMEGA_pairplace,     // omega[k,s,vs,vt]: x[k,s,vs] * x[k,s+1,vt]
  Z_pathlink,          // z[k,s,vs,vt,p,i,j]: link (i,j) lies on path p
  R_pathrate,          // r[k,s,vs,vt,p]: rate routed on path p
  R_linkrate_onpath,   // rl[k,s,vs,vt,p,i,j]: rate of path p crossing (i,j)
  THETA_segdelay,      // theta[k,s]: communication delay of segment s
};

/// Index tuple of one variable. Unused fields stay at their defaults, so the
/// same struct covers every kind; equality/ordering are field-wise.
struct VarKey {
  VarKind kind = VarKind::Y_activate;
  std::string k;   // service id
  int s = -1;      // function position (X) or segment index (others)
  std::string v;   // hosting node (X, Y)
  std::string vs;  // segment tail placement
  std::string vt;  // segment head placement
  int p = 0;       // path index, 1-based
  std::string i;   // link tail
  std::string j;   // link head

  auto operator<=>(const VarKey&) const = default;
};

VarKey y_key(const std::string& v);
VarKey x_key(const std::string& k, int s, const std::string& v);
VarKey omega_key(const std::string& k, int s, const std::string& vs, const std::string& vt);
VarKey z_key(const std::string& k, int s, const std::string& vs, const std::string& vt, int p,
             const std::string& i, const std::string& j);
VarKey r_path_key(const std::string& k, int s, const std::string& vs, const std::string& vt, int p);
VarKey r_link_key(const std::string& k, int s, const std::string& vs, const std::string& vt, int p,
                  const std::string& i, const std::string& j);
VarKey theta_key(const std::string& k, int s);

/// Canonical text name, e.g. `z[k=I,s=0,vs=A,vt=E,p=1,i=A,j=B]`.
std::string var_name(const VarKey& key);
/// Inverse of var_name. Requires ids free of  `[ ] = ,`  and whitespace.
VarKey parse_var_name(const std::string& name);

struct ModelColumn {
  VarKey key;
  bool binary = false;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::string name;
};

/// One linear constraint; `terms` holds (column index, coefficient) pairs
/// with no duplicate columns and no explicit zeros.
struct ModelRow {
  std::string family;  // constraint-family tag (see family namespace)
  std::string name;    // family tag + bracketed indices; unique per model
  std::vector<std::pair<int, double>> terms;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

namespace family {
inline constexpr std::string_view node_budget = "node_budget";      // per-flow, per-node function budget
inline constexpr std::string_view assign_once = "assign_once";      // each function on exactly one node
inline constexpr std::string_view node_cap = "node_cap";            // compute capacity
inline constexpr std::string_view activation = "activation";        // x <= y coupling
inline constexpr std::string_view seg_rate_sum = "seg_rate_sum";    // per-pair path rates sum to the segment rate
inline constexpr std::string_view lin_le_tail = "lin_le_tail";      // omega <= x(tail)
inline constexpr std::string_view lin_le_head = "lin_le_head";      // omega <= x(head)
inline constexpr std::string_view lin_ge_sum = "lin_ge_sum";        // omega >= x + x' - 1
inline constexpr std::string_view path_sel = "path_sel";            // z <= placement product
inline constexpr std::string_view link_rate_sel = "link_rate_sel";  // rl <= lambda * z
inline constexpr std::string_view link_cap = "link_cap";            // link capacity
inline constexpr std::string_view flow_rate = "flow_rate";          // rate conservation
inline constexpr std::string_view flow_path = "flow_path";          // path-indicator conservation
inline constexpr std::string_view seg_delay = "seg_delay";          // theta >= per-path delay
inline constexpr std::string_view e2e = "e2e";                      // end-to-end latency threshold
inline constexpr std::string_view path_order = "path_order";        // optional symmetry breaking
}  // namespace family

enum class ModelVariant { Full, SinglePath, NoLatency };

std::string_view variant_name(ModelVariant variant);

/// Solver-agnostic mixed binary linear program: column catalog, sparse rows,
/// minimize objective. Immutable once built.
struct ModelIR {
  std::vector<ModelColumn> columns;
  std::vector<ModelRow> rows;
  std::vector<double> objective;  // one cost per column
  double objective_constant = 0.0;
  int path_budget = 1;
  ModelVariant variant = ModelVariant::Full;

  /// Column index for a key, or -1 when the column was pruned/never built.
  int column(const VarKey& key) const;
  int count(VarKind kind) const;
  bool objective_is_integral() const;

  std::map<VarKey, int> index_of;  // populated by the builders
};

struct BuildOptions {
  /// Overrides the instance's path budget (ignored by build_single_path).
  std::optional<int> path_budget;
  /// Adds lexicographic rate-ordering rows over path indices (full variant
  /// only). Off by default; identical feasible placements either way.
  bool order_path_rates = false;
};

class UnsatisfiableFunction : public std::runtime_error {
 public:
  UnsatisfiableFunction(const std::string& service, const std::string& function)
      : std::runtime_error("service " + service + ": no cloud node supports function " + function),
        service_id(service),
        function_id(function) {}
  std::string service_id;
  std::string function_id;
};

/// Latency-aware multi-path formulation (the complete program).
ModelIR build_full(const Instance& inst, const BuildOptions& opt = {});
/// Single-path baseline: P forced to 1, per-path rate variables eliminated
/// by substituting lambda*z into the link-capacity rows.
ModelIR build_single_path(const Instance& inst, const BuildOptions& opt = {});
/// Capacity-only baseline: the full model minus every delay row and column.
ModelIR build_no_latency(const Instance& inst, const BuildOptions& opt = {});

}  // namespace sliceopt
