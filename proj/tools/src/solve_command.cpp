#include "solve_command.hpp"

#include <iostream>

#include "aspcost/delete_free.hpp"
#include "aspcost/stepless_planner.hpp"
#include "aspcost/two_threaded.hpp"

namespace aspcost::cli {
namespace {

using nlohmann::json;
using Seconds = std::chrono::duration<double>;

json optional_json(const auto& value) { return value ? json(*value) : json(nullptr); }

json bound_json(const Bound& b) { return b.infinite ? json("inf") : json(b.value); }

SolveReport solve_two_threaded(const Instance& inst, const SolverDriver& driver, const SolveFlags& flags,
                               std::stop_token stop) {
  TwoThreadedConfig config;
  config.start_makespan = flags.start_makespan;
  config.global_timeout = Seconds(flags.timeout);
  config.asap = flags.asap;
  config.cost_bound = !flags.no_cost_bound;
  config.mutex_style = flags.quadratic ? MutexStyle::Quadratic : MutexStyle::Reduced;
  if (flags.verbose) {
    config.on_event = [](const LedgerEvent& e) {
      std::cerr << "[" << e.at << "s] " << to_string(e.kind) << " makespan=" << e.makespan;
      if (e.cost) std::cerr << " cost=" << *e.cost;
      if (!e.detail.empty()) std::cerr << " (" << e.detail << ")";
      std::cerr << "\n";
    };
  }
  const auto r = run_two_threaded(inst.problem, driver, config, stop);

  json doc;
  doc["status"] = status_name(r.outcome.kind);
  doc["cost"] = r.outcome.kind == OutcomeKind::OptimalPlan ? json(r.outcome.cost) : json(nullptr);
  doc["plan"] = r.outcome.kind == OutcomeKind::OptimalPlan ? plan_json(inst.problem, r.outcome.plan) : json(nullptr);
  doc["v1_makespan"] = optional_json(r.plan_makespan);
  doc["v2_proof_makespan"] = optional_json(r.v2_proof_makespan);
  doc["wall_time"] = r.outcome.wall_time;
  doc["best_upper"] = optional_json(r.outcome.best_upper);
  doc["best_lower"] = optional_json(r.outcome.best_lower);
  doc["reason"] = r.outcome.reason;
  doc["v1_time"] = r.v1_time;
  doc["v2_time"] = r.v2_time;
  json lower = json::object();
  for (const auto& [k, b] : r.lower_bounds) lower[std::to_string(k)] = bound_json(b);
  doc["lower_bounds"] = lower;
  json upper = json::object();
  for (const auto& [k, c] : r.v1_costs) upper[std::to_string(k)] = optional_json(c);
  doc["v1_costs"] = upper;
  // Time at which Variant-I reported the plan that was finally returned.
  std::optional<double> plan_found_at;
  for (const auto& e : r.audit) {
    if (e.kind == LedgerEvent::Kind::V1Plan && r.plan_makespan && e.makespan == *r.plan_makespan) plan_found_at = e.at;
  }
  doc["plan_found_at"] = optional_json(plan_found_at);
  return {doc, exit_code_for(r.outcome.kind)};
}

SolveReport solve_stepless(const Instance& inst, const SolverDriver& driver, const SolveFlags& flags,
                           std::stop_token stop) {
  SteplessConfig config;
  config.timeout = Seconds(flags.timeout);
  config.max_iterations = flags.max_iterations;
  if (flags.verbose) {
    config.on_iteration = [](const SteplessIteration& it) {
      std::cerr << "iteration " << it.index << ": cost " << it.cost << (it.use_suffix ? " (suffix)" : "") << ", "
                << it.bag_facts << " bag facts, " << it.wall_time << "s\n";
      if (!it.added.empty()) {
        std::cerr << "Adding:\n";
        for (const auto& line : it.added) std::cerr << "  " << line << "\n";
      }
    };
  }
  const auto r = run_stepless(inst.problem, driver, config, stop);

  json doc;
  doc["status"] = status_name(r.outcome.kind);
  doc["cost"] = r.outcome.kind == OutcomeKind::OptimalPlan ? json(r.outcome.cost) : json(nullptr);
  doc["plan"] = r.outcome.kind == OutcomeKind::OptimalPlan ? plan_json(inst.problem, r.outcome.plan) : json(nullptr);
  doc["wall_time"] = r.outcome.wall_time;
  doc["best_lower"] = optional_json(r.outcome.best_lower);
  doc["reason"] = r.outcome.reason;
  json iterations = json::array();
  for (const auto& it : r.iterations) {
    iterations.push_back({{"index", it.index},
                          {"cost", it.cost},
                          {"use_suffix", it.use_suffix},
                          {"bag_facts", it.bag_facts},
                          {"added", it.added},
                          {"wall_time", it.wall_time}});
  }
  doc["iterations"] = iterations;
  return {doc, exit_code_for(r.outcome.kind)};
}

SolveReport solve_layered_once(const Instance& inst, const SolverDriver& driver, const SolveFlags& flags,
                               std::stop_token stop) {
  if (flags.variant != 1 && flags.variant != 2) throw UsageError("--variant must be 1 or 2");
  const auto problem = inst.problem.has_preserving_actions() ? inst.problem : add_preserving_actions(inst.problem);
  const auto graph = PlanningGraph::build(problem);
  const auto first = first_goal_layer(graph, problem.goal());
  json doc;
  doc["variant"] = flags.variant;
  if (!first && flags.variant == 1) {
    doc["status"] = "no_solution";
    doc["reason"] = "goal unreachable in the planning graph";
    return {doc, kExitNoSolution};
  }
  const std::size_t k = flags.makespan.value_or(flags.variant == 1 ? *first : 0);
  auto opts = flags.variant == 1 ? EncodeOptions::variant_one() : EncodeOptions::variant_two();
  opts.mutex_style = flags.quadratic ? MutexStyle::Quadratic : MutexStyle::Reduced;
  opts.asap_rule = flags.asap && flags.variant == 2;
  const auto r = solve_layered(problem, graph, k, opts, driver, Seconds(flags.timeout), stop, inst.name);

  doc["makespan"] = k;
  doc["wall_time"] = r.wall_time;
  if (r.has_model && r.complete()) {
    // An optimum for this makespan only; not a proof of global optimality.
    doc["status"] = "optimal_at_makespan";
    doc["cost"] = r.total_cost();
    doc["plan"] = plan_json(problem, r.plan);
    doc["use_suffix"] = r.use_suffix;
    doc["suffix_cost"] = r.suffix_cost;
    return {doc, kExitOk};
  }
  if (r.status == SolveStatus::Unsat) {
    doc["status"] = "unsat_at_makespan";
    return {doc, kExitInconclusive};
  }
  doc["status"] = "inconclusive";
  doc["reason"] = to_string(r.status);
  if (r.has_model) doc["best_upper"] = r.total_cost();
  return {doc, kExitInconclusive};
}

SolveReport solve_relaxed(const Instance& inst, const SolverDriver& driver, const SolveFlags& flags,
                          std::stop_token stop) {
  DeleteFreeDirection dir;
  if (flags.direction == "forward") {
    dir = DeleteFreeDirection::Forward;
  } else if (flags.direction == "backward") {
    dir = DeleteFreeDirection::Backward;
  } else {
    throw UsageError("--direction must be forward or backward");
  }
  const auto r = solve_delete_free(inst.problem, dir, driver, Seconds(flags.timeout), stop);
  json doc;
  doc["direction"] = flags.direction;
  doc["wall_time"] = r.wall_time;
  if (r.status == SolveStatus::Unsat) {
    // The relaxation is unsolvable, so the problem is too.
    doc["status"] = "no_solution";
    return {doc, kExitNoSolution};
  }
  if (r.status != SolveStatus::OptimumFound && r.status != SolveStatus::Sat) {
    doc["status"] = "inconclusive";
    doc["best_upper"] = optional_json(r.cost);
    return {doc, kExitInconclusive};
  }
  doc["status"] = "optimal";
  doc["cost"] = *r.cost;
  SequentialPlan actions{r.actions};
  doc["actions"] = plan_json(inst.problem, actions);
  return {doc, kExitOk};
}

}  // namespace

SolveReport run_solve(const Instance& instance, const SolverDriver& driver, const SolveFlags& flags,
                      std::stop_token stop) {
  if (flags.timeout <= 0) throw UsageError("--timeout must be positive");
  SolveReport report;
  if (flags.mode == "two-threaded") {
    report = solve_two_threaded(instance, driver, flags, stop);
  } else if (flags.mode == "stepless") {
    report = solve_stepless(instance, driver, flags, stop);
  } else if (flags.mode == "layered") {
    report = solve_layered_once(instance, driver, flags, stop);
  } else if (flags.mode == "delete-free") {
    report = solve_relaxed(instance, driver, flags, stop);
  } else {
    throw UsageError("unknown mode '" + flags.mode + "'");
  }
  report.doc["instance"] = instance.name;
  report.doc["mode"] = flags.mode;
  return report;
}

}  // namespace aspcost::cli
