#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "aspcost/outcome.hpp"
#include "aspcost/solver.hpp"
#include "aspcost/stepless.hpp"

namespace aspcost {

struct SteplessIteration {
  std::size_t index = 0;  // 1-based
  Cost cost = 0;          // certified lower bound on the optimum
  bool use_suffix = false;
  std::size_t bag_facts = 0;
  std::vector<std::string> added;  // bag facts added after this iteration
  double wall_time = 0.0;
};

struct SteplessConfig {
  std::chrono::duration<double> timeout{300.0};
  SteplessOptions encoding;
  std::vector<std::string> solver_args = {"--opt-strategy=usc"};
  std::size_t max_iterations = 100000;
  std::function<void(const SteplessIteration&)> on_iteration;
};

struct SteplessResult {
  Outcome outcome;
  std::vector<SteplessIteration> iterations;
  std::optional<SteplessModel> final_model;
  OccurrenceBag final_bag;
};

/// Solves, harvests saturated items and grows the bag until an optimum
/// without the suffix layer appears or the program is unsatisfiable.
SteplessResult run_stepless(const GroundProblem& problem, const SolverDriver& driver,
                            const SteplessConfig& config, std::stop_token stop = {});

}  // namespace aspcost
