#include "sliceopt/experiment.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sliceopt/formulation.hpp"
#include "sliceopt/lp_text.hpp"

namespace sliceopt {

namespace {

int worker_count() {
  if (const char* env = std::getenv("SLICEOPT_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool carries_solution(const MblpSolution& sol) {
  return !sol.values.empty() &&
         (sol.status == MblpStatus::Optimal || sol.status == MblpStatus::BudgetExceeded);
}

/// Decodes and validates a solver solution; any failing family (latency
/// excepted where requested) is a solver or model bug, not a data point.
SlicePlan checked_plan(const ModelIR& model, const MblpSolution& sol, const Instance& inst,
                       bool ignore_latency, const std::string& label, bool& latency_pass) {
  SlicePlan plan = decode(model, sol, inst);
  const ValidationReport report = validate(plan, inst);
  latency_pass = true;
  for (const ValidationCheck& check : report.checks) {
    if (check.family == "e2e_latency") {
      latency_pass = check.pass;
      if (ignore_latency) continue;
    }
    if (!check.pass)
      throw std::logic_error(label + ": family " + check.family +
                             " failed validation on a solver solution");
  }
  return plan;
}

InstanceRecord solve_cell(const StudyConfig& cfg, int service_count, std::uint64_t seed) {
  GenConfig gen = cfg.base;
  gen.service_count = service_count;
  gen.seed = seed;
  const Instance inst = generate(gen, cfg.path_budget);

  InstanceRecord rec;
  rec.seed = seed;
  rec.service_count = service_count;
  const std::string where = "seed " + std::to_string(seed) + " services " +
                            std::to_string(service_count);
  bool latency_pass = false;

  const ModelIR single = build_single_path(inst);
  const MblpSolution ssol = solve_mblp(single, cfg.budget);
  rec.single_path.status = ssol.status;
  rec.single_path.objective = ssol.objective;
  rec.single_path.stats = ssol.stats;
  rec.single_path.has_solution = carries_solution(ssol);
  if (rec.single_path.has_solution) {
    checked_plan(single, ssol, inst, false, where + " single-path", latency_pass);
    rec.single_path.feasible = true;
  }

  const ModelIR nolat = build_no_latency(inst);
  const MblpSolution nsol = solve_mblp(nolat, cfg.budget);
  rec.no_latency.status = nsol.status;
  rec.no_latency.objective = nsol.objective;
  rec.no_latency.stats = nsol.stats;
  rec.no_latency.has_solution = carries_solution(nsol);
  if (rec.no_latency.has_solution) {
    // The paper's procedure: substitute the solution into the latency
    // constraints; count it feasible only when every service passes.
    checked_plan(nolat, nsol, inst, true, where + " no-latency", latency_pass);
    rec.no_latency.post_check_pass = latency_pass;
    rec.no_latency.feasible = latency_pass;
  }

  const ModelIR full = build_full(inst);
  std::optional<std::vector<double>> start;
  if (rec.single_path.has_solution) start = lift_start(ssol, full);
  if (!start && rec.no_latency.has_solution) start = lift_start(nsol, full);
  const MblpSolution fsol = solve_mblp(full, cfg.budget, nullptr, start ? &*start : nullptr);
  rec.full.status = fsol.status;
  rec.full.objective = fsol.objective;
  rec.full.stats = fsol.stats;
  rec.full.has_solution = carries_solution(fsol);
  if (rec.full.has_solution) {
    const SlicePlan plan = checked_plan(full, fsol, inst, false, where + " full", latency_pass);
    rec.full.feasible = true;
    rec.activated = static_cast<int>(plan.activated.size());
    double nfv = 0.0, comm = 0.0;
    for (const ServicePlan& sp : plan.services) {
      nfv += sp.nfv_delay;
      comm += sp.comm_delay;
    }
    const double n = static_cast<double>(plan.services.size());
    if (n > 0) {
      rec.mean_nfv_delay = nfv / n;
      rec.mean_comm_delay = comm / n;
      rec.mean_total_delay = rec.mean_nfv_delay + rec.mean_comm_delay;
    }
  }

  // A single-path solution embeds into the full model, so the full model can
  // never do worse. Anything else is a solver defect.
  if (rec.single_path.status == MblpStatus::Optimal) {
    const bool ok = rec.full.status == MblpStatus::Optimal &&
                    rec.full.objective <= rec.single_path.objective + 1e-9;
    if (!ok)
      throw std::logic_error(where + ": full model failed to match feasible single-path result");
  }
  return rec;
}

}  // namespace

ExperimentReport run_study(const StudyConfig& cfg) {
  struct Cell {
    int service_count;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int k : cfg.service_counts)
    for (int i = 0; i < cfg.instances_per_point; ++i)
      cells.push_back({k, cfg.first_seed + static_cast<std::uint64_t>(i)});

  std::vector<InstanceRecord> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<size_t> next{0};

  auto work = [&] {
    while (true) {
      const size_t at = next.fetch_add(1);
      if (at >= cells.size()) return;
      try {
        rows[at] = solve_cell(cfg, cells[at].service_count, cells[at].seed);
      } catch (...) {
        errors[at] = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(worker_count(), std::max<size_t>(cells.size(), 1));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& err : errors)
    if (err) std::rethrow_exception(err);

  ExperimentReport report;
  report.rows = std::move(rows);  // cells were generated sorted: counts, then seeds

  for (int k : cfg.service_counts) {
    PointAggregate point;
    point.service_count = k;
    double activated = 0.0, nfv = 0.0, comm = 0.0, total = 0.0;
    for (const InstanceRecord& rec : report.rows) {
      if (rec.service_count != k) continue;
      ++point.instances;
      point.feasible_full += rec.full.feasible;
      point.feasible_single += rec.single_path.feasible;
      point.feasible_no_latency_post += rec.no_latency.feasible;
      if (rec.full.feasible) {
        activated += rec.activated;
        nfv += rec.mean_nfv_delay;
        comm += rec.mean_comm_delay;
        total += rec.mean_total_delay;
      }
    }
    if (point.feasible_full > 0) {
      const double n = point.feasible_full;
      point.mean_activated = activated / n;
      point.mean_nfv_delay = nfv / n;
      point.mean_comm_delay = comm / n;
      point.mean_total_delay = total / n;
    }
    report.points.push_back(point);
  }
  return report;
}

ExperimentReport run_feasibility_study(const StudyConfig& cfg) { return run_study(cfg); }

ExperimentReport run_delay_study(const StudyConfig& cfg) { return run_study(cfg); }

namespace {

const char* variant_label(int which) {
  switch (which) {
    case 0: return "full";
    case 1: return "no-latency";
    default: return "single-path";
  }
}

const VariantResult& variant_of(const InstanceRecord& rec, int which) {
  switch (which) {
    case 0: return rec.full;
    case 1: return rec.no_latency;
    default: return rec.single_path;
  }
}

}  // namespace

std::string render_rows_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "service_count,seed,variant,status,objective,feasible,post_check,"
         "activated,mean_nfv_delay,mean_comm_delay,mean_total_delay\n";
  for (const InstanceRecord& rec : report.rows) {
    for (int which = 0; which < 3; ++which) {
      const VariantResult& v = variant_of(rec, which);
      out << rec.service_count << ',' << rec.seed << ',' << variant_label(which) << ','
          << mblp_status_name(v.status) << ',';
      if (v.has_solution) out << format_number(v.objective);
      out << ',' << (v.feasible ? 1 : 0) << ',';
      if (which == 1 && v.has_solution) out << (v.post_check_pass ? "pass" : "fail");
      out << ',';
      if (which == 0 && v.has_solution) {
        out << rec.activated << ',' << format_number(rec.mean_nfv_delay) << ','
            << format_number(rec.mean_comm_delay) << ',' << format_number(rec.mean_total_delay);
      } else {
        out << ",,,";
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string render_aggregates_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "service_count,instances,feasible_full,feasible_single,feasible_no_latency_post,"
         "mean_activated,mean_nfv_delay,mean_comm_delay,mean_total_delay\n";
  for (const PointAggregate& p : report.points) {
    out << p.service_count << ',' << p.instances << ',' << p.feasible_full << ','
        << p.feasible_single << ',' << p.feasible_no_latency_post << ',';
    if (p.feasible_full > 0) {
      out << format_number(p.mean_activated) << ',' << format_number(p.mean_nfv_delay) << ','
          << format_number(p.mean_comm_delay) << ',' << format_number(p.mean_total_delay);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

std::string render_report_json(const ExperimentReport& report) {
  nlohmann::ordered_json doc;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const InstanceRecord& rec : report.rows) {
    nlohmann::ordered_json row;
    row["service_count"] = rec.service_count;
    row["seed"] = rec.seed;
    for (int which = 0; which < 3; ++which) {
      const VariantResult& v = variant_of(rec, which);
      nlohmann::ordered_json jv;
      jv["status"] = std::string(mblp_status_name(v.status));
      if (v.has_solution) jv["objective"] = v.objective;
      jv["feasible"] = v.feasible;
      if (which == 1 && v.has_solution) jv["post_check"] = v.post_check_pass ? "pass" : "fail";
      if (which == 0 && v.has_solution) {
        jv["activated"] = rec.activated;
        jv["mean_nfv_delay"] = rec.mean_nfv_delay;
        jv["mean_comm_delay"] = rec.mean_comm_delay;
        jv["mean_total_delay"] = rec.mean_total_delay;
      }
      row[variant_label(which)] = std::move(jv);
    }
    rows.push_back(std::move(row));
  }
  auto& points = doc["points"] = nlohmann::ordered_json::array();
  for (const PointAggregate& p : report.points) {
    nlohmann::ordered_json jp;
    jp["service_count"] = p.service_count;
    jp["instances"] = p.instances;
    jp["feasible_full"] = p.feasible_full;
    jp["feasible_single"] = p.feasible_single;
    jp["feasible_no_latency_post"] = p.feasible_no_latency_post;
    if (p.feasible_full > 0) {
      jp["mean_activated"] = p.mean_activated;
      jp["mean_nfv_delay"] = p.mean_nfv_delay;
      jp["mean_comm_delay"] = p.mean_comm_delay;
      jp["mean_total_delay"] = p.mean_total_delay;
    }
    points.push_back(std::move(jp));
  }
  return doc.dump(2) + "\n";
}

}  // namespace sliceopt
