#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "aspcost/strips.hpp"

namespace aspcost::oracle {

struct SearchOptions {
  std::size_t max_nodes = 1'000'000;
};

struct Solution {
  Cost cost = 0;
  SequentialPlan plan;
};

/// Uniform-cost search over reachable states, preferring fewer steps among
/// equal-cost plans. Preserving actions are ignored. Returns nullopt when the
/// reachable space is exhausted without reaching the goal.
/// Throws StateSpaceTooLarge once more than max_nodes states are generated.
std::optional<Solution> optimal_cost_search(const GroundProblem& problem,
                                            const SearchOptions& options = {});

/// Breadth-first search for the fewest-steps plan, ignoring costs.
std::optional<std::size_t> shortest_plan_length(const GroundProblem& problem,
                                                const SearchOptions& options = {});

struct DeleteFreeOptions {
  /// Problems with at most this many regular actions are solved by subset
  /// enumeration; larger ones by Dijkstra over relaxed fluent sets.
  std::size_t max_subset_actions = 20;
  std::size_t max_nodes = 2'000'000;
};

/// Exact optimal cost of the delete relaxation. Throws TooLarge past the caps.
std::optional<Cost> delete_free_optimal(const GroundProblem& problem,
                                        const DeleteFreeOptions& options = {});

/// The two strategies behind delete_free_optimal, exposed for cross-checks.
std::optional<Cost> delete_free_by_subsets(const GroundProblem& problem, std::size_t max_actions = 25);
std::optional<Cost> delete_free_by_search(const GroundProblem& problem, std::size_t max_nodes = 2'000'000);

/// An s-side of a cut: a downward-closed set of occurrence indices.
using Cut = std::vector<std::size_t>;

struct CutState {
  Cut ideal;
  State state;
};

/// Every order ideal of the plan together with the state reached after its
/// actions, in breadth-first order (the empty cut first). Throws InvalidPlan
/// when two serializations of one ideal disagree or an action is inapplicable,
/// TooManyCuts past max_cuts.
std::vector<CutState> enumerate_cuts(const GroundProblem& problem, const PartialOrderPlan& pop,
                                     std::size_t max_cuts = 200'000);

struct MinimalityResult {
  bool strongly_minimal = true;
  /// On failure: cuts x and y such that y contains an action x lacks, yet
  /// every fluent true in the y-state is already true in the x-state.
  std::optional<std::pair<Cut, Cut>> witness;
};

MinimalityResult is_strongly_minimal(const GroundProblem& problem, const PartialOrderPlan& pop,
                                     std::size_t max_cuts = 200'000);

/// True iff no step pair J < K of the executed plan has state(K) within state(J).
bool make_progress_check(const GroundProblem& problem, const SequentialPlan& plan);
bool make_progress_check(const std::vector<State>& layer_states);

/// Repeatedly cuts out the steps between two layers J < K with
/// state(K) within state(J). The result still reaches the goal and makes progress.
SequentialPlan reduce_to_progress(const GroundProblem& problem, const SequentialPlan& plan);

}  // namespace aspcost::oracle
