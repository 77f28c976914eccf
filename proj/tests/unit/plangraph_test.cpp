#include <gtest/gtest.h>

#include <json.hpp>
#include <random>
#include <unordered_set>

#include "aspcost/oracle.hpp"
#include "aspcost/plangraph.hpp"
#include "aspcost/problem_io.hpp"
#include "test_support.hpp"

namespace aspcost {
namespace {

using testing::make_problem;

GroundProblem bridge6() {
  return add_preserving_actions(load_problem_json(testing::data_path("bridge/bridge6.json")));
}

FluentId fid(const GroundProblem& p, const char* name) { return p.find_fluent(name).value(); }

TEST(PlanningGraph, GoalInInitIsLevelZero) {
  const auto p = add_preserving_actions(make_problem({"g", "h"}, {{"a", {"g"}, {"h"}, {}, 1}}, {"g"}, {"g"}));
  const auto g = PlanningGraph::build(p);
  EXPECT_EQ(g.fluent_level(fid(p, "g")), 0u);
  EXPECT_EQ(first_goal_layer(g, p.goal()), 0u);
}

TEST(PlanningGraph, UnreachableGoal) {
  const auto p = add_preserving_actions(make_problem({"p", "g"}, {{"a", {"p"}, {"p"}, {}, 1}}, {"p"}, {"g"}));
  const auto g = PlanningGraph::build(p);
  EXPECT_EQ(g.fluent_level(fid(p, "g")), PlanningGraph::kUnreachable);
  EXPECT_FALSE(first_goal_layer(g, p.goal()).has_value());
}

TEST(PlanningGraph, BridgeCrossingFirstAppearsAtLevelOne) {
  const auto p = bridge6();
  const auto g = PlanningGraph::build(p);
  EXPECT_EQ(g.fluent_level(fid(p, "at(joe,side_a)")), 0u);
  EXPECT_EQ(g.fluent_level(fid(p, "at(joe,side_b)")), 1u);
  EXPECT_FALSE(g.valid_fluent(fid(p, "at(joe,side_b)"), 0));
  EXPECT_TRUE(g.valid_fluent(fid(p, "at(joe,side_b)"), 1));
}

TEST(PlanningGraph, BridgeSidesAreMutexAtLevelOne) {
  const auto p = bridge6();
  const auto g = PlanningGraph::build(p);
  EXPECT_TRUE(g.mutex(fid(p, "at(joe,side_a)"), fid(p, "at(joe,side_b)"), 1));
  EXPECT_TRUE(g.mutex(fid(p, "lantern_at(side_a)"), fid(p, "lantern_at(side_b)"), 1));
  // Persistent as a state invariant.
  const auto& persistent = g.persistent_mutex();
  const auto a = fid(p, "at(joe,side_a)");
  const auto b = fid(p, "at(joe,side_b)");
  EXPECT_NE(std::find(persistent.begin(), persistent.end(), std::make_pair(std::min(a, b), std::max(a, b))),
            persistent.end());
}

TEST(PlanningGraph, BridgeGoalLayer) {
  const auto p = bridge6();
  const auto g = PlanningGraph::build(p);
  const auto layer = first_goal_layer(g, p.goal());
  ASSERT_TRUE(layer.has_value());
  // Every pair of people can cross together, so pairwise mutexes cannot see
  // the capacity limit and the goal appears after one crossing.
  EXPECT_EQ(*layer, 1u);
  for (FluentId f : p.goal()) EXPECT_TRUE(g.valid_fluent(f, *layer));
}

TEST(PlanningGraph, ConflictingEffectsAreNotActionMutex) {
  // a adds q, b deletes q; neither touches the other's preconditions.
  const auto p = add_preserving_actions(
      make_problem({"p", "r", "q"}, {{"a", {"p"}, {"q"}, {}, 1}, {"b", {"r"}, {}, {"q"}, 1}}, {"p", "r"}, {"q"}));
  const auto g = PlanningGraph::build(p);
  const auto a = p.find_action("a").value();
  const auto b = p.find_action("b").value();
  for (auto [x, y] : g.action_mutex()) EXPECT_FALSE((x == a && y == b) || (x == b && y == a));
}

TEST(PlanningGraph, InterferenceIsActionMutex) {
  const auto p = add_preserving_actions(
      make_problem({"p", "q", "r"}, {{"a", {"p"}, {"q"}, {}, 1}, {"b", {"r"}, {}, {"p"}, 1}}, {"p", "r"}, {"q"}));
  const auto g = PlanningGraph::build(p);
  const auto a = p.find_action("a").value();
  const auto b = p.find_action("b").value();
  const auto& m = g.action_mutex();
  EXPECT_NE(std::find(m.begin(), m.end(), std::make_pair(std::min(a, b), std::max(a, b))), m.end());
}

TEST(PlanningGraph, ImplicitNoopsWithoutPreservingActions) {
  const auto raw = load_problem_json(testing::data_path("bridge/bridge6.json"));
  const auto with = PlanningGraph::build(add_preserving_actions(raw));
  const auto without = PlanningGraph::build(raw);
  EXPECT_EQ(with.leveled_off(), without.leveled_off());
  for (std::size_t f = 0; f < raw.fluent_count(); ++f) {
    EXPECT_EQ(with.fluent_level(static_cast<FluentId>(f)), without.fluent_level(static_cast<FluentId>(f)));
  }
}

TEST(PlanningGraph, JsonDumpHasLevelsAndPairs) {
  const auto p = bridge6();
  const auto g = PlanningGraph::build(p);
  const auto doc = nlohmann::json::parse(g.to_json(p));
  EXPECT_EQ(doc["leveled_off"].get<std::size_t>(), g.leveled_off());
  EXPECT_EQ(doc["fluents"].size(), p.fluent_count());
  EXPECT_EQ(doc["levels"].size(), g.leveled_off() + 1);
  EXPECT_EQ(doc["mutex"].size(), g.persistent_mutex().size());
  EXPECT_EQ(doc["mutex_act"].size(), g.action_mutex().size());
}

class RandomGraphs : public ::testing::TestWithParam<int> {};

TEST_P(RandomGraphs, MonotoneAdmissibleAndBounded) {
  std::mt19937_64 rng(7000 + GetParam());
  const auto raw = testing::random_problem(rng);
  const auto p = add_preserving_actions(raw);
  const auto g = PlanningGraph::build(p);
  EXPECT_LE(g.leveled_off(), p.fluent_count() * p.fluent_count() + 2);
  for (FluentId f : p.init()) EXPECT_EQ(g.fluent_level(f), 0u);
  for (std::size_t level = 0; level <= g.leveled_off(); ++level) {
    for (std::size_t f = 0; f < p.fluent_count(); ++f) {
      const auto fi = static_cast<FluentId>(f);
      if (g.valid_fluent(fi, level)) EXPECT_TRUE(g.valid_fluent(fi, level + 1));
      for (std::size_t h = f + 1; h < p.fluent_count(); ++h) {
        const auto hi = static_cast<FluentId>(h);
        if (!g.valid_fluent(fi, level) || !g.valid_fluent(hi, level)) continue;
        if (g.mutex(fi, hi, level + 1)) EXPECT_TRUE(g.mutex(fi, hi, level)) << f << "," << h << " @" << level;
      }
    }
  }
  // Persistent mutex pairs are state invariants.
  std::vector<State> frontier{raw.initial_state()};
  std::unordered_set<State, StateHash> seen(frontier.begin(), frontier.end());
  while (!frontier.empty()) {
    const State s = frontier.back();
    frontier.pop_back();
    for (auto [f, h] : g.persistent_mutex()) EXPECT_FALSE(s.contains(f) && s.contains(h));
    for (const auto& a : raw.actions()) {
      if (!applicable(s, a)) continue;
      State t = apply(s, a);
      if (seen.insert(t).second) frontier.push_back(t);
    }
  }
  const auto shortest = oracle::shortest_plan_length(raw);
  const auto layer = first_goal_layer(g, p.goal());
  if (shortest) {
    ASSERT_TRUE(layer.has_value());
    EXPECT_LE(*layer, *shortest);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomGraphs, ::testing::Range(0, 40));

}  // namespace
}  // namespace aspcost
