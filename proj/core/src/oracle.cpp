#include "aspcost/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "aspcost/errors.hpp"

namespace aspcost::oracle {
namespace {

std::vector<ActionId> regular_actions(const GroundProblem& problem) {
  std::vector<ActionId> out;
  for (ActionId a = 0; a < problem.action_count(); ++a) {
    if (!problem.action(a).preserving) out.push_back(a);
  }
  return out;
}

struct Parent {
  std::size_t node;
  ActionId action;
};

SequentialPlan trace(const std::vector<std::optional<Parent>>& parents, std::size_t node) {
  SequentialPlan plan;
  while (parents[node]) {
    plan.steps.push_back(parents[node]->action);
    node = parents[node]->node;
  }
  std::reverse(plan.steps.begin(), plan.steps.end());
  return plan;
}

}  // namespace

std::optional<Solution> optimal_cost_search(const GroundProblem& problem,
                                            const SearchOptions& options) {
  const auto actions = regular_actions(problem);
  std::vector<State> states{problem.initial_state()};
  std::vector<std::optional<Parent>> parents{std::nullopt};
  std::vector<std::pair<Cost, std::size_t>> best{{0, 0}};
  std::unordered_map<State, std::size_t, StateHash> index{{states[0], 0}};
  std::vector<bool> closed{false};

  using Entry = std::tuple<Cost, std::size_t, std::size_t>;  // cost, steps, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  open.emplace(0, 0, 0);
  while (!open.empty()) {
    auto [cost, steps, node] = open.top();
    open.pop();
    if (closed[node] || std::make_pair(cost, steps) != best[node]) continue;
    closed[node] = true;
    if (problem.goal_satisfied(states[node])) return Solution{cost, trace(parents, node)};
    for (ActionId a : actions) {
      const auto& act = problem.action(a);
      if (!applicable(states[node], act)) continue;
      State next = apply(states[node], act);
      const std::pair<Cost, std::size_t> key{cost + act.cost, steps + 1};
      auto [it, inserted] = index.emplace(next, states.size());
      if (inserted) {
        if (states.size() >= options.max_nodes) {
          throw StateSpaceTooLarge("state space exceeds " + std::to_string(options.max_nodes) +
                                   " states");
        }
        states.push_back(std::move(next));
        parents.emplace_back(Parent{node, a});
        best.push_back(key);
        closed.push_back(false);
      } else if (closed[it->second] || key >= best[it->second]) {
        continue;
      } else {
        parents[it->second] = Parent{node, a};
        best[it->second] = key;
      }
      open.emplace(key.first, key.second, it->second);
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> shortest_plan_length(const GroundProblem& problem,
                                                const SearchOptions& options) {
  const auto actions = regular_actions(problem);
  std::unordered_map<State, std::size_t, StateHash> depth{{problem.initial_state(), 0}};
  std::deque<State> frontier{problem.initial_state()};
  while (!frontier.empty()) {
    State s = std::move(frontier.front());
    frontier.pop_front();
    const std::size_t d = depth[s];
    if (problem.goal_satisfied(s)) return d;
    for (ActionId a : actions) {
      if (!applicable(s, problem.action(a))) continue;
      State next = apply(s, problem.action(a));
      if (depth.emplace(next, d + 1).second) {
        if (depth.size() > options.max_nodes) {
          throw StateSpaceTooLarge("state space exceeds " + std::to_string(options.max_nodes) +
                                   " states");
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  return std::nullopt;
}

std::optional<Cost> delete_free_by_subsets(const GroundProblem& problem, std::size_t max_actions) {
  const auto actions = regular_actions(problem);
  if (actions.size() > max_actions || actions.size() >= 63) {
    throw TooLarge("subset enumeration over " + std::to_string(actions.size()) + " actions");
  }
  const State init = problem.initial_state();
  std::optional<Cost> best;
  const std::uint64_t limit = std::uint64_t{1} << actions.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    Cost cost = 0;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (mask >> i & 1U) cost += problem.action(actions[i]).cost;
    }
    if (best && cost >= *best) continue;
    // Fire chosen actions until fixpoint; every chosen action must fire.
    State s = init;
    std::uint64_t fired = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < actions.size(); ++i) {
        if (!(mask >> i & 1U) || (fired >> i & 1U)) continue;
        const auto& act = problem.action(actions[i]);
        if (!s.contains_all(act.pre)) continue;
        for (FluentId f : act.add) s.insert(f);
        fired |= std::uint64_t{1} << i;
        changed = true;
      }
    }
    if (problem.goal_satisfied(s)) best = cost;
  }
  return best;
}

std::optional<Cost> delete_free_by_search(const GroundProblem& problem, std::size_t max_nodes) {
  const auto actions = regular_actions(problem);
  std::unordered_map<State, Cost, StateHash> dist{{problem.initial_state(), 0}};
  using Entry = std::pair<Cost, State>;
  auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first; };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> open(cmp);
  open.emplace(0, problem.initial_state());
  while (!open.empty()) {
    auto [cost, s] = open.top();
    open.pop();
    if (dist[s] != cost) continue;
    if (problem.goal_satisfied(s)) return cost;
    for (ActionId a : actions) {
      const auto& act = problem.action(a);
      if (!s.contains_all(act.pre) || s.contains_all(act.add)) continue;
      State next = s;
      for (FluentId f : act.add) next.insert(f);
      const Cost c = cost + act.cost;
      auto [it, inserted] = dist.emplace(next, c);
      if (!inserted) {
        if (it->second <= c) continue;
        it->second = c;
      } else if (dist.size() > max_nodes) {
        throw TooLarge("relaxed search exceeds " + std::to_string(max_nodes) + " fluent sets");
      }
      open.emplace(c, std::move(next));
    }
  }
  return std::nullopt;
}

std::optional<Cost> delete_free_optimal(const GroundProblem& problem,
                                        const DeleteFreeOptions& options) {
  if (problem.regular_action_count() <= options.max_subset_actions) {
    return delete_free_by_subsets(problem, options.max_subset_actions);
  }
  return delete_free_by_search(problem, options.max_nodes);
}

std::vector<CutState> enumerate_cuts(const GroundProblem& problem, const PartialOrderPlan& pop,
                                     std::size_t max_cuts) {
  const std::size_t n = pop.size();
  if (n > 64) throw TooManyCuts("cut enumeration supports at most 64 occurrences");
  if (!pop.acyclic()) throw CycleDetected("partial order contains a cycle");
  std::vector<std::uint64_t> predecessors(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (pop.precedes(i, j)) predecessors[j] |= std::uint64_t{1} << i;
    }
  }
  auto to_cut = [n](std::uint64_t mask) {
    Cut cut;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) cut.push_back(i);
    }
    return cut;
  };

  std::vector<std::uint64_t> masks{0};
  std::vector<State> states{problem.initial_state()};
  std::unordered_map<std::uint64_t, std::size_t> seen{{0, 0}};
  for (std::size_t k = 0; k < masks.size(); ++k) {
    const std::uint64_t mask = masks[k];
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if ((mask & bit) || (predecessors[i] & ~mask)) continue;
      const auto& act = problem.action(pop.occurrences()[i].action);
      if (!applicable(states[k], act)) {
        throw InvalidPlan("a serialization of the partial order is not executable");
      }
      State next = apply(states[k], act);
      auto [it, inserted] = seen.emplace(mask | bit, masks.size());
      if (inserted) {
        if (masks.size() >= max_cuts) {
          throw TooManyCuts("more than " + std::to_string(max_cuts) + " cuts");
        }
        masks.push_back(mask | bit);
        states.push_back(std::move(next));
      } else if (!(states[it->second] == next)) {
        throw InvalidPlan("cut state depends on the serialization");
      }
    }
  }
  std::vector<CutState> out;
  out.reserve(masks.size());
  for (std::size_t k = 0; k < masks.size(); ++k) out.push_back({to_cut(masks[k]), states[k]});
  return out;
}

MinimalityResult is_strongly_minimal(const GroundProblem& problem, const PartialOrderPlan& pop,
                                     std::size_t max_cuts) {
  const auto cuts = enumerate_cuts(problem, pop, max_cuts);
  std::vector<std::uint64_t> masks;
  masks.reserve(cuts.size());
  for (const auto& c : cuts) {
    std::uint64_t m = 0;
    for (std::size_t i : c.ideal) m |= std::uint64_t{1} << i;
    masks.push_back(m);
  }
  for (std::size_t x = 0; x < cuts.size(); ++x) {
    for (std::size_t y = 0; y < cuts.size(); ++y) {
      if ((masks[y] & ~masks[x]) == 0) continue;
      if (cuts[y].state.subset_of(cuts[x].state)) {
        return MinimalityResult{false, std::make_pair(cuts[x].ideal, cuts[y].ideal)};
      }
    }
  }
  return MinimalityResult{};
}

bool make_progress_check(const std::vector<State>& layer_states) {
  for (std::size_t k = 1; k < layer_states.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (layer_states[k].subset_of(layer_states[j])) return false;
    }
  }
  return true;
}

bool make_progress_check(const GroundProblem& problem, const SequentialPlan& plan) {
  return make_progress_check(plan_states(problem, plan));
}

SequentialPlan reduce_to_progress(const GroundProblem& problem, const SequentialPlan& plan) {
  SequentialPlan current;
  for (ActionId a : plan.steps) {
    if (!problem.action(a).preserving) current.steps.push_back(a);
  }
  for (;;) {
    const auto states = plan_states(problem, current);
    bool reduced = false;
    for (std::size_t k = 1; k < states.size() && !reduced; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        if (states[k].subset_of(states[j])) {
          current.steps.erase(current.steps.begin() + static_cast<std::ptrdiff_t>(j),
                              current.steps.begin() + static_cast<std::ptrdiff_t>(k));
          reduced = true;
          break;
        }
      }
    }
    if (!reduced) return current;
  }
}

}  // namespace aspcost::oracle
