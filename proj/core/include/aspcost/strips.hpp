#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aspcost {

using FluentId = std::uint32_t;
using ActionId = std::uint32_t;
using Cost = std::int64_t;

/// Sorted, duplicate-free list of fluent ids.
using FluentSet = std::vector<FluentId>;

FluentSet make_fluent_set(std::vector<FluentId> ids);
bool contains(const FluentSet& set, FluentId id);

/// Truth assignment over the fluents of one problem, stored as a bitset.
class State {
 public:
  State() = default;
  explicit State(std::size_t fluent_count);
  State(std::size_t fluent_count, const FluentSet& holds);

  std::size_t fluent_count() const noexcept { return fluent_count_; }
  bool contains(FluentId f) const noexcept {
    return (words_[f >> 6] >> (f & 63)) & 1U;
  }
  void insert(FluentId f) noexcept { words_[f >> 6] |= std::uint64_t{1} << (f & 63); }
  void erase(FluentId f) noexcept { words_[f >> 6] &= ~(std::uint64_t{1} << (f & 63)); }

  bool contains_all(const FluentSet& fluents) const noexcept;
  bool subset_of(const State& other) const noexcept;
  std::size_t size() const noexcept;
  FluentSet holds() const;

  std::size_t hash() const noexcept;
  friend bool operator==(const State&, const State&) = default;

 private:
  std::size_t fluent_count_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept { return s.hash(); }
};

struct GroundAction {
  std::string name;
  FluentSet pre;
  FluentSet add;
  FluentSet del;
  Cost cost = 0;
  bool preserving = false;
};

/// Propositional STRIPS task. Fluent and action names are canonical ASP term
/// text, unique within the problem.
class GroundProblem {
 public:
  GroundProblem() = default;
  GroundProblem(std::vector<std::string> fluents, std::vector<GroundAction> actions,
                FluentSet init, FluentSet goal);

  const std::vector<std::string>& fluents() const noexcept { return fluents_; }
  const std::vector<GroundAction>& actions() const noexcept { return actions_; }
  const FluentSet& init() const noexcept { return init_; }
  const FluentSet& goal() const noexcept { return goal_; }

  std::size_t fluent_count() const noexcept { return fluents_.size(); }
  std::size_t action_count() const noexcept { return actions_.size(); }
  const std::string& fluent_name(FluentId f) const { return fluents_.at(f); }
  const GroundAction& action(ActionId a) const { return actions_.at(a); }

  std::optional<FluentId> find_fluent(std::string_view name) const;
  std::optional<ActionId> find_action(std::string_view name) const;

  State initial_state() const { return State(fluents_.size(), init_); }
  bool goal_satisfied(const State& s) const { return s.contains_all(goal_); }
  bool has_preserving_actions() const;
  /// Number of actions that are not preserving actions.
  std::size_t regular_action_count() const;

 private:
  void check_invariants() const;

  std::vector<std::string> fluents_;
  std::vector<GroundAction> actions_;
  FluentSet init_;
  FluentSet goal_;
  std::unordered_map<std::string, FluentId> fluent_index_;
  std::unordered_map<std::string, ActionId> action_index_;
};

struct SequentialPlan {
  std::vector<ActionId> steps;

  friend bool operator==(const SequentialPlan&, const SequentialPlan&) = default;
};

Cost plan_cost(const GroundProblem& problem, const SequentialPlan& plan);
std::vector<std::string> plan_action_names(const GroundProblem& problem,
                                           const SequentialPlan& plan);

bool applicable(const State& state, const GroundAction& action);

/// Successor state (state \ del) U add. An action that both adds and deletes a
/// fluent leaves it true. Throws InapplicableAction.
State apply(const State& state, const GroundAction& action);

struct ValidationReport {
  bool valid = false;
  Cost cost = 0;
  std::optional<std::size_t> failed_step;
  std::string reason;
};

/// Executes the plan from the initial state; preserving actions are skipped.
/// With require_goal=false only executability is checked.
ValidationReport validate_plan(const GroundProblem& problem, const SequentialPlan& plan,
                               bool require_goal = true);

/// States visited by an executable plan, including the initial one.
std::vector<State> plan_states(const GroundProblem& problem, const SequentialPlan& plan);

/// Appends preserve(F) for every fluent. Throws AlreadyAugmented.
GroundProblem add_preserving_actions(const GroundProblem& problem);

/// Drops preserving actions, keeping ids of the remaining actions in order.
GroundProblem remove_preserving_actions(const GroundProblem& problem);

/// STRIPS task whose actions and goal may also mention negated fluents.
struct LiteralAction {
  std::string name;
  FluentSet pre;
  FluentSet pre_negative;
  FluentSet add;
  FluentSet del;
  Cost cost = 0;
};

struct LiteralProblem {
  std::vector<std::string> fluents;
  std::vector<LiteralAction> actions;
  FluentSet init;
  FluentSet goal;
  FluentSet goal_negative;
};

/// Introduces not_F for every negatively referenced fluent F, kept complementary
/// to F by every action and in the initial state.
GroundProblem compile_negative_preconditions(const LiteralProblem& problem);

struct Occurrence {
  ActionId action = 0;
  std::uint32_t index = 1;

  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

/// Transitively closed DAG over action occurrences.
class PartialOrderPlan {
 public:
  PartialOrderPlan() = default;
  PartialOrderPlan(std::vector<Occurrence> occurrences,
                   const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  const std::vector<Occurrence>& occurrences() const noexcept { return occurrences_; }
  std::size_t size() const noexcept { return occurrences_.size(); }
  /// i strictly precedes j in the closure.
  bool precedes(std::size_t i, std::size_t j) const { return closure_[i * size() + j]; }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  bool acyclic() const noexcept { return acyclic_; }

  /// Calls visit for each linear extension until it returns false or limit
  /// extensions have been produced. Returns the number visited.
  std::size_t for_each_linearization(const std::function<bool(const SequentialPlan&)>& visit,
                                     std::size_t limit = SIZE_MAX) const;

 private:
  std::vector<Occurrence> occurrences_;
  std::vector<bool> closure_;
  bool acyclic_ = true;
};

/// Canonical partial order of a sequential plan: a precedes b (a earlier in the
/// plan) when a adds a precondition of b, b deletes a precondition of a, a adds
/// what b deletes, a deletes what b adds, or both are instances of the same
/// action; closed under transitivity. Preserving actions are dropped.
/// Throws InvalidPlan when the plan does not validate.
PartialOrderPlan canonical_partial_order(const GroundProblem& problem,
                                         const SequentialPlan& plan,
                                         bool require_goal = true);

}  // namespace aspcost
