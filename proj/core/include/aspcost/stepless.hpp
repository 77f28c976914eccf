#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aspcost/asp_codegen.hpp"
#include "aspcost/strips.hpp"
#include "aspcost/term.hpp"

namespace aspcost {

/// How many indexed copies of each fluent and action the stepless program may
/// use. Occurrence indices run 1..count; init fluents also get index 0.
struct OccurrenceBag {
  std::vector<std::uint32_t> fluent_count;
  std::vector<std::uint32_t> action_count;
  FluentSet init;

  std::size_t fact_count() const;
  bool operator==(const OccurrenceBag&) const = default;
};

OccurrenceBag initial_bag(const GroundProblem& problem);

struct SteplessOptions {
  /// Among equally good optima prefer those saturating more items. Keeps the
  /// bag growth deterministic across solver versions.
  bool saturation_tie_break = true;
  /// Emit the two-cut strong-minimality block. Off only for ablation.
  bool strong_minimality = true;
};

/// Full stepless program for the bag. Throws PreservingActionsPresent.
AspProgram emit_stepless(const GroundProblem& problem, const OccurrenceBag& bag,
                         const SteplessOptions& options = {});

struct FluentOcc {
  FluentId fluent;
  std::uint32_t index;
  auto operator<=>(const FluentOcc&) const = default;
};

struct ActionOcc {
  ActionId action;
  std::uint32_t index;
  auto operator<=>(const ActionOcc&) const = default;
};

/// A decoded stepless answer set. Relations are sorted.
struct SteplessModel {
  std::vector<ActionOcc> happens;
  std::vector<FluentOcc> holds;
  std::vector<std::pair<ActionOcc, FluentOcc>> causes;
  std::vector<std::pair<FluentOcc, ActionOcc>> permits;
  /// permits(FO, subgoal(F)): occurrences feeding the subgoal state.
  std::vector<FluentOcc> permits_subgoal;
  std::vector<std::pair<ActionOcc, FluentOcc>> deletes;
  std::vector<std::pair<ActionOcc, FluentOcc>> follows;
  std::vector<ActionId> suffix_happens;
  FluentSet saturated_fluents;
  std::vector<ActionId> saturated_actions;
  FluentSet suffix_start_fluents;
  std::vector<ActionId> suffix_start_actions;
  bool use_suffix = false;
  Cost cost = 0;
};

/// Parses shown atoms and checks the structural invariants. Throws
/// MalformedModel or InvariantViolation.
SteplessModel decode_stepless(const GroundProblem& problem, const std::vector<Term>& atoms);

struct SaturatedSet {
  FluentSet fluents;
  std::vector<ActionId> actions;
  bool empty() const noexcept { return fluents.empty() && actions.empty(); }
};

/// Items whose every bagged occurrence (index > 0) is used. The solver's
/// saturated/1 atoms are cross-checked against the model; throws
/// SaturationMismatch on disagreement.
SaturatedSet extract_saturated(const SteplessModel& model, const OccurrenceBag& bag);

/// Adds one occurrence of each saturated item. Throws EmptyExpansion.
OccurrenceBag expand_bag(const OccurrenceBag& bag, const SaturatedSet& saturated);

/// Event graph of a no-suffix model as an action-occurrence order DAG:
/// edge (i, j) when occurrence i must precede occurrence j.
PartialOrderPlan stepless_partial_order(const GroundProblem& problem, const SteplessModel& model);

/// Deterministic topological order (ties by action name, then occurrence
/// index). Throws CycleDetected.
SequentialPlan topo_sort_plan(const GroundProblem& problem, const SteplessModel& model);

/// Renders "is(...)" facts, one per line, for logging bag additions.
std::vector<std::string> bag_additions(const GroundProblem& problem, const OccurrenceBag& before,
                                       const OccurrenceBag& after);

}  // namespace aspcost
