#include <gtest/gtest.h>

#include <random>

#include "aspcost/delete_free.hpp"
#include "aspcost/oracle.hpp"
#include "aspcost/problem_io.hpp"
#include "test_support.hpp"

namespace aspcost {
namespace {

using namespace std::chrono_literals;
using testing::make_problem;

// Relaxed reachability: do the chosen actions, ignoring deletes, reach the goal?
bool relaxed_reaches_goal(const GroundProblem& p, const std::vector<ActionId>& chosen) {
  State s = p.initial_state();
  for (bool changed = true; changed;) {
    changed = false;
    for (ActionId a : chosen) {
      const auto& act = p.action(a);
      if (!s.contains_all(act.pre)) continue;
      for (FluentId f : act.add) {
        if (!s.contains(f)) {
          s.insert(f);
          changed = true;
        }
      }
    }
  }
  return p.goal_satisfied(s);
}

class DeleteFree : public ::testing::Test {
 protected:
  DeleteFree() : driver_(testing::solver_config()) {}
  DeleteFreeSolve solve(const GroundProblem& p, DeleteFreeDirection d) { return solve_delete_free(p, d, driver_, 60s); }
  SolverDriver driver_;
};

TEST_F(DeleteFree, BridgeRelaxation) {
  const auto p = load_problem_json(testing::data_path("bridge/bridge6.json"));
  for (auto d : {DeleteFreeDirection::Forward, DeleteFreeDirection::Backward}) {
    const auto r = solve(p, d);
    ASSERT_TRUE(r.cost.has_value());
    EXPECT_EQ(*r.cost, 27);
    EXPECT_TRUE(relaxed_reaches_goal(p, r.actions));
  }
  EXPECT_EQ(oracle::delete_free_optimal(p), 27);
}

TEST_F(DeleteFree, GoalAlreadyHolds) {
  const auto p = make_problem({"p"}, {{"a", {"p"}, {}, {"p"}, 3}}, {"p"}, {"p"});
  for (auto d : {DeleteFreeDirection::Forward, DeleteFreeDirection::Backward}) {
    const auto r = solve(p, d);
    EXPECT_EQ(r.cost, 0);
    EXPECT_TRUE(r.actions.empty());
  }
}

TEST_F(DeleteFree, UnreachableGoalIsUnsat) {
  const auto p = make_problem({"p", "g"}, {{"a", {"g"}, {"g"}, {}, 1}}, {"p"}, {"g"});
  EXPECT_EQ(solve(p, DeleteFreeDirection::Forward).status, SolveStatus::Unsat);
  EXPECT_EQ(solve(p, DeleteFreeDirection::Backward).status, SolveStatus::Unsat);
}

TEST_F(DeleteFree, SelfSupportingCycleIsNotSupport) {
  // a and b feed each other; only the expensive c starts from the initial state.
  const auto p = make_problem({"s", "x", "y", "g"},
                              {{"a", {"x"}, {"y"}, {}, 0}, {"b", {"y"}, {"x", "g"}, {}, 0}, {"c", {"s"}, {"x"}, {}, 7}},
                              {"s"}, {"g"});
  EXPECT_EQ(solve(p, DeleteFreeDirection::Forward).cost, 7);
  EXPECT_EQ(solve(p, DeleteFreeDirection::Backward).cost, 7);
}

class RandomDeleteFree : public DeleteFree, public ::testing::WithParamInterface<int> {};

TEST_P(RandomDeleteFree, EncodingsAgreeWithOracle) {
  std::mt19937_64 rng(5100 + GetParam());
  const auto p = testing::random_problem(rng);
  const auto exact = oracle::delete_free_optimal(p);
  const auto full = oracle::optimal_cost_search(p);
  for (auto d : {DeleteFreeDirection::Forward, DeleteFreeDirection::Backward}) {
    const auto r = solve(p, d);
    EXPECT_EQ(r.cost, exact);
    if (r.cost) EXPECT_TRUE(relaxed_reaches_goal(p, r.actions));
  }
  if (full) {
    ASSERT_TRUE(exact.has_value());
    EXPECT_LE(*exact, full->cost);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomDeleteFree, ::testing::Range(0, 15));

}  // namespace
}  // namespace aspcost
