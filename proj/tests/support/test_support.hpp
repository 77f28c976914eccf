#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "aspcost/solver.hpp"
#include "aspcost/strips.hpp"

namespace aspcost::testing {

/// Directory holding the checked-in fixtures (data/ in the source tree).
std::filesystem::path data_dir();
std::filesystem::path data_path(const std::string& relative);

/// Solver command template for solver-backed tests: ASP_SOLVER when set,
/// otherwise the command detected at configure time.
std::string solver_command();

/// Driver configuration for solver_command() with default arguments.
SolverConfig solver_config();

struct RandomSpec {
  std::size_t min_fluents = 2;
  std::size_t max_fluents = 8;
  std::size_t min_actions = 1;
  std::size_t max_actions = 10;
  Cost max_cost = 5;
  std::size_t max_pre = 2;
  std::size_t max_add = 2;
  std::size_t max_del = 2;
  std::size_t max_goal = 3;
};

/// Small random STRIPS task with fluents f0..fn-1 and actions a0..am-1.
/// Costs are drawn uniformly from [0, max_cost], so zero-cost actions occur.
GroundProblem random_problem(std::mt19937_64& rng, const RandomSpec& spec = {});

/// Problem built by hand in tests: actions given as (name, pre, add, del, cost)
/// over fluent names.
struct ActionSpec {
  std::string name;
  std::vector<std::string> pre;
  std::vector<std::string> add;
  std::vector<std::string> del;
  Cost cost = 1;
};

GroundProblem make_problem(const std::vector<std::string>& fluents,
                           const std::vector<ActionSpec>& actions,
                           const std::vector<std::string>& init,
                           const std::vector<std::string>& goal);

SequentialPlan plan_of(const GroundProblem& problem, const std::vector<std::string>& names);

}  // namespace aspcost::testing
