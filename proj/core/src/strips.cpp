#include "aspcost/strips.hpp"

#include <algorithm>
#include <bit>

#include "aspcost/errors.hpp"

namespace aspcost {

FluentSet make_fluent_set(std::vector<FluentId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool contains(const FluentSet& set, FluentId id) {
  return std::binary_search(set.begin(), set.end(), id);
}

State::State(std::size_t fluent_count)
    : fluent_count_(fluent_count), words_((fluent_count + 63) / 64, 0) {}

State::State(std::size_t fluent_count, const FluentSet& holds) : State(fluent_count) {
  for (FluentId f : holds) {
    if (f >= fluent_count) throw InvalidProblem("fluent id out of range in state");
    insert(f);
  }
}

bool State::contains_all(const FluentSet& fluents) const noexcept {
  return std::all_of(fluents.begin(), fluents.end(),
                     [this](FluentId f) { return contains(f); });
}

bool State::subset_of(const State& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  }
  return true;
}

std::size_t State::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

FluentSet State::holds() const {
  FluentSet out;
  for (std::size_t f = 0; f < fluent_count_; ++f) {
    if (contains(static_cast<FluentId>(f))) out.push_back(static_cast<FluentId>(f));
  }
  return out;
}

std::size_t State::hash() const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto w : words_) {
    h ^= static_cast<std::size_t>(w);
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return h;
}

GroundProblem::GroundProblem(std::vector<std::string> fluents,
                             std::vector<GroundAction> actions, FluentSet init,
                             FluentSet goal)
    : fluents_(std::move(fluents)),
      actions_(std::move(actions)),
      init_(make_fluent_set(std::move(init))),
      goal_(make_fluent_set(std::move(goal))) {
  for (auto& a : actions_) {
    a.pre = make_fluent_set(std::move(a.pre));
    a.add = make_fluent_set(std::move(a.add));
    a.del = make_fluent_set(std::move(a.del));
    // Add wins: a fluent both added and deleted by one action stays true, so
    // the delete is dropped and every encoding sees the same semantics.
    std::erase_if(a.del, [&a](FluentId f) { return contains(a.add, f); });
  }
  for (std::size_t i = 0; i < fluents_.size(); ++i) {
    if (!fluent_index_.emplace(fluents_[i], static_cast<FluentId>(i)).second) {
      throw InvalidProblem("duplicate fluent " + fluents_[i]);
    }
  }
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (!action_index_.emplace(actions_[i].name, static_cast<ActionId>(i)).second) {
      throw InvalidProblem("duplicate action " + actions_[i].name);
    }
  }
  check_invariants();
}

void GroundProblem::check_invariants() const {
  const auto n = fluents_.size();
  auto in_range = [n](const FluentSet& s) {
    return std::all_of(s.begin(), s.end(), [n](FluentId f) { return f < n; });
  };
  if (!in_range(init_)) throw InvalidProblem("init mentions an unknown fluent");
  if (!in_range(goal_)) throw InvalidProblem("goal mentions an unknown fluent");
  for (const auto& a : actions_) {
    if (!in_range(a.pre) || !in_range(a.add) || !in_range(a.del)) {
      throw InvalidProblem("action " + a.name + " mentions an unknown fluent");
    }
    if (a.cost < 0) throw InvalidProblem("action " + a.name + " has negative cost");
    if (a.preserving &&
        (a.pre.size() != 1 || a.add != a.pre || !a.del.empty() || a.cost != 0)) {
      throw InvalidProblem("malformed preserving action " + a.name);
    }
  }
}

std::optional<FluentId> GroundProblem::find_fluent(std::string_view name) const {
  auto it = fluent_index_.find(std::string(name));
  if (it == fluent_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ActionId> GroundProblem::find_action(std::string_view name) const {
  auto it = action_index_.find(std::string(name));
  if (it == action_index_.end()) return std::nullopt;
  return it->second;
}

bool GroundProblem::has_preserving_actions() const {
  return std::any_of(actions_.begin(), actions_.end(),
                     [](const GroundAction& a) { return a.preserving; });
}

std::size_t GroundProblem::regular_action_count() const {
  return static_cast<std::size_t>(std::count_if(
      actions_.begin(), actions_.end(), [](const GroundAction& a) { return !a.preserving; }));
}

Cost plan_cost(const GroundProblem& problem, const SequentialPlan& plan) {
  Cost total = 0;
  for (ActionId a : plan.steps) {
    const auto& act = problem.action(a);
    if (!act.preserving) total += act.cost;
  }
  return total;
}

std::vector<std::string> plan_action_names(const GroundProblem& problem,
                                           const SequentialPlan& plan) {
  std::vector<std::string> out;
  out.reserve(plan.steps.size());
  for (ActionId a : plan.steps) {
    if (!problem.action(a).preserving) out.push_back(problem.action(a).name);
  }
  return out;
}

bool applicable(const State& state, const GroundAction& action) {
  return state.contains_all(action.pre);
}

State apply(const State& state, const GroundAction& action) {
  if (!applicable(state, action)) {
    throw InapplicableAction("action " + action.name + " is not applicable");
  }
  State next = state;
  for (FluentId f : action.del) next.erase(f);
  for (FluentId f : action.add) next.insert(f);
  return next;
}

ValidationReport validate_plan(const GroundProblem& problem, const SequentialPlan& plan,
                               bool require_goal) {
  ValidationReport report;
  State state = problem.initial_state();
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    if (plan.steps[i] >= problem.action_count()) {
      report.failed_step = i;
      report.reason = "unknown action id";
      return report;
    }
    const auto& act = problem.action(plan.steps[i]);
    if (act.preserving) continue;
    if (!applicable(state, act)) {
      report.failed_step = i;
      for (FluentId f : act.pre) {
        if (!state.contains(f)) {
          report.reason = act.name + " requires " + problem.fluent_name(f);
          break;
        }
      }
      return report;
    }
    state = apply(state, act);
    report.cost += act.cost;
  }
  if (require_goal && !problem.goal_satisfied(state)) {
    for (FluentId f : problem.goal()) {
      if (!state.contains(f)) {
        report.reason = "goal " + problem.fluent_name(f) + " does not hold at the end";
        break;
      }
    }
    return report;
  }
  report.valid = true;
  return report;
}

std::vector<State> plan_states(const GroundProblem& problem, const SequentialPlan& plan) {
  std::vector<State> states{problem.initial_state()};
  for (ActionId a : plan.steps) {
    const auto& act = problem.action(a);
    if (act.preserving) continue;
    states.push_back(apply(states.back(), act));
  }
  return states;
}

GroundProblem add_preserving_actions(const GroundProblem& problem) {
  if (problem.has_preserving_actions()) {
    throw AlreadyAugmented("problem already contains preserving actions");
  }
  auto actions = problem.actions();
  actions.reserve(actions.size() + problem.fluent_count());
  for (std::size_t f = 0; f < problem.fluent_count(); ++f) {
    GroundAction p;
    p.name = "preserve(" + problem.fluent_name(static_cast<FluentId>(f)) + ")";
    p.pre = {static_cast<FluentId>(f)};
    p.add = {static_cast<FluentId>(f)};
    p.preserving = true;
    actions.push_back(std::move(p));
  }
  return GroundProblem(problem.fluents(), std::move(actions), problem.init(), problem.goal());
}

GroundProblem remove_preserving_actions(const GroundProblem& problem) {
  std::vector<GroundAction> actions;
  for (const auto& a : problem.actions()) {
    if (!a.preserving) actions.push_back(a);
  }
  return GroundProblem(problem.fluents(), std::move(actions), problem.init(), problem.goal());
}

GroundProblem compile_negative_preconditions(const LiteralProblem& problem) {
  const auto n = problem.fluents.size();
  std::vector<bool> negated(n, false);
  auto mark = [&](const FluentSet& s) {
    for (FluentId f : s) {
      if (f >= n) throw InvalidProblem("negative literal mentions an unknown fluent");
      negated[f] = true;
    }
  };
  for (const auto& a : problem.actions) mark(a.pre_negative);
  mark(problem.goal_negative);

  auto fluents = problem.fluents;
  std::vector<FluentId> complement(n, 0);
  for (std::size_t f = 0; f < n; ++f) {
    if (!negated[f]) continue;
    complement[f] = static_cast<FluentId>(fluents.size());
    fluents.push_back("not_" + problem.fluents[f]);
  }

  auto init_set = make_fluent_set(problem.init);
  std::vector<FluentId> init(init_set.begin(), init_set.end());
  for (std::size_t f = 0; f < n; ++f) {
    if (negated[f] && !contains(init_set, static_cast<FluentId>(f))) {
      init.push_back(complement[f]);
    }
  }

  std::vector<GroundAction> actions;
  actions.reserve(problem.actions.size());
  for (const auto& la : problem.actions) {
    GroundAction a;
    a.name = la.name;
    a.cost = la.cost;
    a.pre = la.pre;
    a.add = la.add;
    a.del = la.del;
    for (FluentId f : la.pre_negative) a.pre.push_back(complement[f]);
    for (FluentId f : la.add) {
      if (negated[f]) a.del.push_back(complement[f]);
    }
    for (FluentId f : la.del) {
      if (negated[f]) a.add.push_back(complement[f]);
    }
    actions.push_back(std::move(a));
  }

  std::vector<FluentId> goal = problem.goal;
  for (FluentId f : problem.goal_negative) goal.push_back(complement[f]);
  return GroundProblem(std::move(fluents), std::move(actions), std::move(init),
                       std::move(goal));
}

PartialOrderPlan::PartialOrderPlan(std::vector<Occurrence> occurrences,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : occurrences_(std::move(occurrences)) {
  const std::size_t n = occurrences_.size();
  closure_.assign(n * n, false);
  for (auto [i, j] : edges) {
    if (i >= n || j >= n) throw InvalidPlan("partial order edge out of range");
    closure_[i * n + j] = true;
  }
  // Floyd-Warshall style transitive closure.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!closure_[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (closure_[k * n + j]) closure_[i * n + j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (closure_[i * n + i]) acyclic_ = false;
  }
}

std::vector<std::pair<std::size_t, std::size_t>> PartialOrderPlan::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (precedes(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t PartialOrderPlan::for_each_linearization(
    const std::function<bool(const SequentialPlan&)>& visit, std::size_t limit) const {
  if (!acyclic_) throw CycleDetected("partial order contains a cycle");
  const std::size_t n = size();
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (precedes(i, j)) ++indegree[j];
    }
  }
  std::vector<bool> placed(n, false);
  SequentialPlan current;
  std::size_t visited = 0;
  bool stop = false;

  std::function<void()> rec = [&]() {
    if (stop) return;
    if (current.steps.size() == n) {
      ++visited;
      if (!visit(current) || visited >= limit) stop = true;
      return;
    }
    for (std::size_t i = 0; i < n && !stop; ++i) {
      if (placed[i] || indegree[i] != 0) continue;
      placed[i] = true;
      current.steps.push_back(occurrences_[i].action);
      for (std::size_t j = 0; j < n; ++j) {
        if (precedes(i, j)) --indegree[j];
      }
      rec();
      for (std::size_t j = 0; j < n; ++j) {
        if (precedes(i, j)) ++indegree[j];
      }
      current.steps.pop_back();
      placed[i] = false;
    }
  };
  rec();
  return visited;
}

namespace {

bool intersects(const FluentSet& a, const FluentSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

}  // namespace

PartialOrderPlan canonical_partial_order(const GroundProblem& problem,
                                         const SequentialPlan& plan, bool require_goal) {
  auto report = validate_plan(problem, plan, require_goal);
  if (!report.valid) throw InvalidPlan("cannot order an invalid plan: " + report.reason);

  std::vector<Occurrence> occ;
  std::vector<std::uint32_t> seen(problem.action_count(), 0);
  for (ActionId a : plan.steps) {
    if (problem.action(a).preserving) continue;
    occ.push_back(Occurrence{a, ++seen[a]});
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    const auto& a = problem.action(occ[i].action);
    for (std::size_t j = i + 1; j < occ.size(); ++j) {
      const auto& b = problem.action(occ[j].action);
      const bool ordered = intersects(a.add, b.pre) ||
                           (occ[i].action != occ[j].action && intersects(b.del, a.pre)) ||
                           intersects(a.add, b.del) || intersects(a.del, b.add) ||
                           occ[i].action == occ[j].action;
      if (ordered) edges.emplace_back(i, j);
    }
  }
  return PartialOrderPlan(std::move(occ), edges);
}

}  // namespace aspcost
