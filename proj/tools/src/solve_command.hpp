#pragma once

#include <cstddef>
#include <optional>
#include <stop_token>
#include <string>

#include "common.hpp"

namespace aspcost::cli {

struct SolveFlags {
  std::string mode = "two-threaded";  // layered | two-threaded | stepless | delete-free
  double timeout = 300.0;
  std::optional<std::size_t> makespan;        // layered
  int variant = 1;                            // layered
  std::optional<std::size_t> start_makespan;  // two-threaded
  bool asap = false;
  bool no_cost_bound = false;
  bool quadratic = false;
  std::string direction = "forward";  // delete-free
  std::size_t max_iterations = 100000;
  bool verbose = false;
};

struct SolveReport {
  nlohmann::json doc;
  int exit_code = kExitOk;
};

SolveReport run_solve(const Instance& instance, const SolverDriver& driver, const SolveFlags& flags,
                      std::stop_token stop = {});

}  // namespace aspcost::cli
