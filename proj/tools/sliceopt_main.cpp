// Command-line front end: instance generation, single solves with validation,
// plan validation, and the two comparative studies.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sliceopt/experiment.hpp"
#include "sliceopt/formulation.hpp"
#include "sliceopt/instancegen.hpp"
#include "sliceopt/mblp_solver.hpp"
#include "sliceopt/net_model.hpp"
#include "sliceopt/solution.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kInfeasible = 2;
constexpr int kBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (path)
    write_file(*path, text);
  else
    std::cout << text;
}

int generate_cmd(const sliceopt::GenConfig& cfg, int paths,
                 const std::optional<std::string>& out) {
  const sliceopt::Instance inst = sliceopt::generate(cfg, paths);
  emit(out, sliceopt::render_instance(inst));
  return kOk;
}

int fig1_cmd(bool rate4, const std::optional<std::string>& out) {
  const sliceopt::Instance inst =
      rate4 ? sliceopt::fig1_rate4_instance() : sliceopt::fig1_instance();
  emit(out, sliceopt::render_instance(inst));
  return kOk;
}

int solve_cmd(const std::string& instance_path, const std::string& variant, int paths,
              bool order_path_rates, const sliceopt::SolveBudget& budget,
              const std::optional<std::string>& plan_out,
              const std::optional<std::string>& validation_out) {
  const sliceopt::Instance inst = sliceopt::load_instance(instance_path);
  const auto diagnostics = sliceopt::validate_instance(inst);
  if (!diagnostics.empty()) {
    for (const auto& d : diagnostics)
      std::cerr << "instance error [" << d.code << "] " << d.where << ": " << d.detail << "\n";
    return kInputError;
  }

  sliceopt::BuildOptions opt;
  if (paths > 0) opt.path_budget = paths;
  opt.order_path_rates = order_path_rates;
  sliceopt::ModelIR model;
  if (variant == "full")
    model = sliceopt::build_full(inst, opt);
  else if (variant == "single-path")
    model = sliceopt::build_single_path(inst, opt);
  else
    model = sliceopt::build_no_latency(inst, opt);

  const sliceopt::MblpSolution sol = sliceopt::solve_mblp(model, budget);
  if (sol.status == sliceopt::MblpStatus::Infeasible) {
    std::cerr << "model is infeasible\n";
    return kInfeasible;
  }
  if (!sol.values.empty()) {
    const sliceopt::SlicePlan plan = sliceopt::decode(model, sol, inst);
    const sliceopt::ValidationReport report = sliceopt::validate(plan, inst);
    emit(plan_out, sliceopt::render_plan(plan));
    if (validation_out) write_file(*validation_out, sliceopt::render_validation_json(report));
    std::cerr << sliceopt::render_validation(report);
  }
  if (sol.status == sliceopt::MblpStatus::BudgetExceeded) {
    std::cerr << "budget exceeded"
              << (sol.values.empty() ? " with no incumbent\n" : "; best incumbent emitted\n");
    return kBudget;
  }
  return kOk;
}

int validate_cmd(const std::string& instance_path, const std::string& plan_path, bool as_json) {
  const sliceopt::Instance inst = sliceopt::load_instance(instance_path);
  const sliceopt::SlicePlan plan = sliceopt::parse_plan(read_file(plan_path));
  const sliceopt::ValidationReport report = sliceopt::validate(plan, inst);
  std::cout << (as_json ? sliceopt::render_validation_json(report)
                        : sliceopt::render_validation(report));
  return kOk;  // validation is a query; a failing report is a valid answer
}

int experiment_cmd(const sliceopt::StudyConfig& cfg, bool feasibility,
                   const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const sliceopt::ExperimentReport report =
      feasibility ? sliceopt::run_feasibility_study(cfg) : sliceopt::run_delay_study(cfg);
  write_file(out_dir + "/rows.csv", sliceopt::render_rows_csv(report));
  write_file(out_dir + "/aggregates.csv", sliceopt::render_aggregates_csv(report));
  write_file(out_dir + "/report.json", sliceopt::render_report_json(report));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for joint function placement, multi-path routing, "
               "and latency-guaranteed slice allocation"};
  app.require_subcommand(1);

  // generate
  sliceopt::GenConfig gen;
  int gen_paths = 2;
  std::optional<std::string> gen_out;
  auto* cmd_gen = app.add_subcommand("generate", "Sample a random instance to JSON");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  cmd_gen->add_option("--services", gen.service_count, "number of service requests");
  cmd_gen->add_option("--nodes", gen.node_count, "network node count");
  cmd_gen->add_option("--clouds", gen.cloud_count, "cloud node count");
  cmd_gen->add_option("--link-prob", gen.link_probability, "per-pair link probability");
  cmd_gen->add_option("--functions", gen.function_universe, "function universe size");
  cmd_gen->add_option("--chain", gen.chain_length, "functions per service chain");
  cmd_gen->add_option("--rate", gen.rate_value, "constant per-segment data rate");
  cmd_gen->add_option("--paths", gen_paths, "path budget recorded on the instance");
  cmd_gen->add_option("--out", gen_out, "output file (default stdout)");

  // fig1
  bool fig_rate4 = false;
  std::optional<std::string> fig_out;
  auto* cmd_fig = app.add_subcommand("fig1", "Emit a bundled five-node fixture");
  cmd_fig->add_flag("--rate4", fig_rate4, "the single-service rate-4 variant");
  cmd_fig->add_option("--out", fig_out, "output file (default stdout)");

  // solve
  std::string solve_instance, solve_variant = "full";
  int solve_paths = 0;
  bool solve_order = false;
  sliceopt::SolveBudget solve_budget;
  std::optional<std::string> solve_plan_out, solve_validation_out;
  auto* cmd_solve = app.add_subcommand("solve", "Solve one instance and emit the decoded plan");
  cmd_solve->add_option("--instance", solve_instance, "instance JSON file")->required();
  cmd_solve->add_option("--variant", solve_variant, "model variant")
      ->check(CLI::IsMember({"full", "single-path", "no-latency"}));
  cmd_solve->add_option("--paths", solve_paths, "path budget override (0 = instance value)");
  cmd_solve->add_flag("--order-path-rates", solve_order,
                      "add symmetry-breaking rate ordering rows (full variant)");
  cmd_solve->add_option("--max-nodes", solve_budget.max_nodes, "search node budget");
  cmd_solve->add_option("--max-seconds", solve_budget.max_seconds, "wall-clock budget");
  cmd_solve->add_option("--plan-out", solve_plan_out, "plan JSON file (default stdout)");
  cmd_solve->add_option("--validation-out", solve_validation_out, "validation JSON file");

  // validate
  std::string val_instance, val_plan;
  bool val_json = false;
  auto* cmd_val = app.add_subcommand("validate", "Re-check a plan against an instance");
  cmd_val->add_option("--instance", val_instance, "instance JSON file")->required();
  cmd_val->add_option("--plan", val_plan, "plan JSON file")->required();
  cmd_val->add_flag("--json", val_json, "emit the report as JSON");

  // experiment feasibility|delay
  sliceopt::StudyConfig study;
  std::string exp_out_dir = "experiment-out";
  auto* cmd_exp = app.add_subcommand("experiment", "Run a comparative study");
  cmd_exp->require_subcommand(1);
  auto* cmd_exp_f = cmd_exp->add_subcommand("feasibility", "feasible-count comparison");
  auto* cmd_exp_d = cmd_exp->add_subcommand("delay", "delay/activation trends");
  for (auto* sub : {cmd_exp_f, cmd_exp_d}) {
    sub->add_option("--service-counts", study.service_counts, "grid of service counts");
    sub->add_option("--instances", study.instances_per_point, "instances per service count");
    sub->add_option("--first-seed", study.first_seed, "seed of the first instance");
    sub->add_option("--paths", study.path_budget, "full-model path budget");
    sub->add_option("--max-nodes", study.budget.max_nodes, "per-solve node budget");
    sub->add_option("--max-seconds", study.budget.max_seconds, "per-solve wall budget");
    sub->add_option("--out-dir", exp_out_dir, "report directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (cmd_gen->parsed()) return generate_cmd(gen, gen_paths, gen_out);
    if (cmd_fig->parsed()) return fig1_cmd(fig_rate4, fig_out);
    if (cmd_solve->parsed())
      return solve_cmd(solve_instance, solve_variant, solve_paths, solve_order, solve_budget,
                       solve_plan_out, solve_validation_out);
    if (cmd_val->parsed()) return validate_cmd(val_instance, val_plan, val_json);
    if (cmd_exp->parsed()) return experiment_cmd(study, cmd_exp_f->parsed(), exp_out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
