#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aspcost/strips.hpp"

namespace aspcost {

/// Leveled reachability structure in the style of Blum and Furst.
///
/// Mutex propagation between levels uses the classical action mutex
/// (interference, conflicting effects, competing needs). The exported
/// relations feed the layered encodings:
///   - fluent_level / action_level give validFluent and validAct;
///   - persistent_mutex() are fluent pairs still mutex once the graph has
///     leveled off, i.e. state invariants;
///   - action_mutex() are action pairs where one deletes a precondition of the
///     other, or whose preconditions are persistently mutex. Pairs that only
///     have conflicting effects are left to the encoding's deleted/2 rule.
class PlanningGraph {
 public:
  static constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);

  /// Expands until leveled off. Problems without preserving actions get
  /// implicit no-ops during expansion.
  static PlanningGraph build(const GroundProblem& problem);

  std::size_t leveled_off() const noexcept { return leveled_off_; }
  std::size_t fluent_level(FluentId f) const { return fluent_level_.at(f); }
  std::size_t action_level(ActionId a) const { return action_level_.at(a); }
  const std::vector<std::size_t>& fluent_levels() const noexcept { return fluent_level_; }
  const std::vector<std::size_t>& action_levels() const noexcept { return action_level_; }

  bool valid_fluent(FluentId f, std::size_t level) const { return fluent_level_.at(f) <= level; }
  bool valid_action(ActionId a, std::size_t level) const { return action_level_.at(a) <= level; }

  /// Fluent mutex at a level; levels past leveled_off() repeat the last one.
  bool mutex(FluentId f, FluentId g, std::size_t level) const;

  const std::vector<std::pair<FluentId, FluentId>>& persistent_mutex() const noexcept {
    return persistent_mutex_;
  }
  const std::vector<std::pair<ActionId, ActionId>>& action_mutex() const noexcept {
    return action_mutex_;
  }

  std::string to_json(const GroundProblem& problem) const;

 private:
  std::size_t fluent_count_ = 0;
  std::size_t leveled_off_ = 0;
  std::vector<std::size_t> fluent_level_;
  std::vector<std::size_t> action_level_;
  /// Sorted keys f * n + g (f < g) of mutex pairs, per level.
  std::vector<std::vector<std::uint64_t>> mutex_by_level_;
  std::vector<std::pair<FluentId, FluentId>> persistent_mutex_;
  std::vector<std::pair<ActionId, ActionId>> action_mutex_;
};

/// First level at which every goal fluent is present and no two goals are
/// mutex; nullopt when the graph levels off before that.
std::optional<std::size_t> first_goal_layer(const PlanningGraph& graph, const FluentSet& goals);

}  // namespace aspcost
