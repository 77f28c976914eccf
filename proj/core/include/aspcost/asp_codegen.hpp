#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "aspcost/plangraph.hpp"
#include "aspcost/strips.hpp"

namespace aspcost {

/// Generated ASP-Core-2 source plus a short description of what produced it.
struct AspProgram {
  std::string text;
  std::string kind;  // "layered", "dfp-forward", "dfp-backward", "stepless", ...
  std::size_t makespan = 0;
  std::string flags;
};

enum class MutexStyle { Quadratic, Reduced };
enum class DeleteFreeDirection { Forward, Backward };

struct EncodeOptions {
  MutexStyle mutex_style = MutexStyle::Reduced;
  /// Replace the goal rule by a free choice over final-layer fluents.
  bool any_goal = false;
  bool make_progress = false;
  bool asap_rule = false;
  /// Append the delete-free suffix layer after the final layer.
  bool suffix = false;
  /// Hard bound: only models with total cost strictly below it.
  std::optional<Cost> cost_bound;
  bool weak_constraints = true;

  /// Throws InvalidOptions when flags are inconsistent.
  void validate() const;
  std::string describe() const;

  /// Plain cost-minimizing planner at a fixed makespan.
  static EncodeOptions variant_one();
  /// Any-goal planner with make-progress and the suffix layer.
  static EncodeOptions variant_two();
};

/// Problem facts: fluent/1, action/1, pre/2, add/2, del/2, cost/2, init/1,
/// goal/1 and preserving/1. Lines are sorted.
std::string problem_facts(const GroundProblem& problem, bool include_preserving = true);

/// Layered program at a fixed makespan. The graph must have been built from
/// the same problem; levels past its fixpoint repeat the last level.
AspProgram emit_layered(const GroundProblem& problem, const PlanningGraph& graph, std::size_t makespan,
                        const EncodeOptions& opts);

/// Delete-free program from the host's subgoal/1 atoms to the goal.
std::string emit_suffix_layer(const GroundProblem& problem);

/// Rule forcing every non-preserving action to start as early as possible.
std::string emit_asap_rule(const GroundProblem& problem);

/// One-shot optimal delete-free program.
AspProgram emit_delete_free(const GroundProblem& problem, DeleteFreeDirection direction);

}  // namespace aspcost
