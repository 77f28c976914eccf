#include "aspcost/stepless_planner.hpp"

#include "aspcost/errors.hpp"

namespace aspcost {

SteplessResult run_stepless(const GroundProblem& input, const SolverDriver& driver, const SteplessConfig& config,
                            std::stop_token stop) {
  const auto started = std::chrono::steady_clock::now();
  const auto deadline = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(config.timeout);
  const GroundProblem problem = input.has_preserving_actions() ? remove_preserving_actions(input) : input;

  SteplessResult result;
  OccurrenceBag bag = initial_bag(problem);
  auto finish = [&](OutcomeKind kind, std::string reason) {
    result.outcome.kind = kind;
    result.outcome.reason = std::move(reason);
    result.outcome.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.final_bag = bag;
    if (!result.iterations.empty()) result.outcome.best_lower = result.iterations.back().cost;
    return result;
  };

  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    const std::chrono::duration<double> left = deadline - std::chrono::steady_clock::now();
    if (left.count() <= 0) return finish(OutcomeKind::Inconclusive, "timeout");
    if (stop.stop_requested()) return finish(OutcomeKind::Inconclusive, "cancelled");

    SolveRequest req;
    req.program = emit_stepless(problem, bag, config.encoding).text;
    req.extra_args = config.solver_args;
    req.timeout = left;
    req.name = "stepless." + std::to_string(it);
    const auto res = driver.solve(req, stop);

    if (res.status == SolveStatus::Unsat) return finish(OutcomeKind::NoSolution, "stepless program unsatisfiable");
    if (res.status == SolveStatus::Timeout || res.status == SolveStatus::Cancelled) {
      return finish(OutcomeKind::Inconclusive, res.status == SolveStatus::Timeout ? "timeout" : "cancelled");
    }
    auto model = decode_stepless(problem, res.best_model.value());

    SteplessIteration rec;
    rec.index = it;
    rec.cost = model.cost;
    rec.use_suffix = model.use_suffix;
    rec.bag_facts = bag.fact_count();
    rec.wall_time = res.wall_time;

    if (!model.use_suffix) {
      result.iterations.push_back(rec);
      if (config.on_iteration) config.on_iteration(rec);
      auto plan = topo_sort_plan(problem, model);
      const auto report = validate_plan(problem, plan);
      if (!report.valid) throw InvariantViolation("stepless plan does not validate: " + report.reason);
      if (report.cost != model.cost) throw InvariantViolation("stepless plan cost differs from the model cost");
      result.outcome.plan = std::move(plan);
      result.outcome.cost = report.cost;
      result.outcome.best_upper = report.cost;
      result.final_model = std::move(model);
      auto out = finish(OutcomeKind::OptimalPlan, "optimum without suffix");
      out.outcome.best_lower = out.outcome.cost;
      return out;
    }

    const auto saturated = extract_saturated(model, bag);
    auto next = expand_bag(bag, saturated);
    rec.added = bag_additions(problem, bag, next);
    result.iterations.push_back(rec);
    if (config.on_iteration) config.on_iteration(rec);
    bag = std::move(next);
  }
  return finish(OutcomeKind::Inconclusive, "iteration limit");
}

}  // namespace aspcost
