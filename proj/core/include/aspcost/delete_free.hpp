#pragma once

#include <chrono>
#include <optional>
#include <stop_token>
#include <vector>

#include "aspcost/asp_codegen.hpp"
#include "aspcost/solver.hpp"
#include "aspcost/strips.hpp"

namespace aspcost {

struct DeleteFreeSolve {
  SolveStatus status = SolveStatus::Unsat;
  std::optional<Cost> cost;         // set when a model was found
  std::vector<ActionId> actions;    // chosen actions, sorted by id
  double wall_time = 0.0;
};

/// Solves the delete relaxation with one of the two one-shot encodings.
/// Preserving actions are ignored.
DeleteFreeSolve solve_delete_free(const GroundProblem& problem, DeleteFreeDirection direction,
                                  const SolverDriver& driver, std::chrono::duration<double> timeout,
                                  std::stop_token stop = {});

}  // namespace aspcost
