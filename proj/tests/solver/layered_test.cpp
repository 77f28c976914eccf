#include <gtest/gtest.h>

#include <random>

#include "aspcost/asp_codegen.hpp"
#include "aspcost/oracle.hpp"
#include "aspcost/pddl.hpp"
#include "aspcost/two_threaded.hpp"
#include "mutex_fixtures.hpp"
#include "test_support.hpp"

namespace aspcost {
namespace {

using namespace std::chrono_literals;
using testing::make_problem;

class Layered : public ::testing::Test {
 protected:
  Layered() : driver_(testing::solver_config()) {}

  LayeredSolve solve(const GroundProblem& p, std::size_t k, const EncodeOptions& o) {
    const auto g = PlanningGraph::build(p);
    return solve_layered(p, g, k, o, driver_, 60s);
  }

  // Solves the emitted program with extra rules appended.
  SolveStatus solve_with(const GroundProblem& p, std::size_t k, const EncodeOptions& o, const std::string& extra) {
    const auto g = PlanningGraph::build(p);
    SolveRequest r;
    r.program = emit_layered(p, g, k, o).text + extra;
    r.timeout = 60s;
    return driver_.solve(r).status;
  }

  SolverDriver driver_;
};

EncodeOptions style(MutexStyle s) {
  auto o = EncodeOptions::variant_one();
  o.mutex_style = s;
  return o;
}

using testing::mutex::DeleteCase;

void PrintTo(const DeleteCase& c, std::ostream* os) { *os << c.name; }

class MutexCases : public Layered, public ::testing::WithParamInterface<std::tuple<DeleteCase, MutexStyle>> {};

TEST_P(MutexCases, SimultaneousOccurrenceIsRejected) {
  const auto& [c, st] = GetParam();
  const auto p = testing::mutex::delete_case_problem(c);
  EXPECT_EQ(solve_with(p, 1, style(st), testing::mutex::kBothAtZero), SolveStatus::Unsat);
  EXPECT_EQ(solve(p, 1, style(st)).total_cost(), 1);
  // Control: without the deletes the same pair may share a layer.
  const auto free = testing::mutex::delete_case_problem(c, false);
  EXPECT_NE(solve_with(free, 1, style(st), testing::mutex::kBothAtZero), SolveStatus::Unsat);
}

INSTANTIATE_TEST_SUITE_P(
    DeleteCases, MutexCases,
    ::testing::Combine(::testing::ValuesIn(testing::mutex::kDeleteCases),
                       ::testing::Values(MutexStyle::Reduced, MutexStyle::Quadratic)),
    [](const auto& info) {
      return std::string(std::get<0>(info.param).name) +
             (std::get<1>(info.param) == MutexStyle::Reduced ? "_reduced" : "_quadratic");
    });

class StyleTest : public Layered, public ::testing::WithParamInterface<MutexStyle> {};

TEST_P(StyleTest, ConflictingEffectsOnlyMatterWhenTheFluentHolds) {
  const auto needed = testing::mutex::conflicting_effects_problem(true);
  const auto unneeded = testing::mutex::conflicting_effects_problem(false);
  EXPECT_EQ(solve_with(needed, 1, style(GetParam()), testing::mutex::kBothAtZero), SolveStatus::Unsat);
  EXPECT_NE(solve_with(unneeded, 1, style(GetParam()), testing::mutex::kBothAtZero), SolveStatus::Unsat);
}

TEST_P(StyleTest, MutexPreconditionsAreRejected) {
  const auto p = testing::mutex::mutex_precondition_problem();
  const auto g = PlanningGraph::build(p);
  ASSERT_TRUE(g.mutex(*p.find_fluent("f"), *p.find_fluent("g"), 1));
  EXPECT_EQ(solve_with(p, 2, style(GetParam()), testing::mutex::kForceBAtOne), SolveStatus::Unsat);
  EXPECT_EQ(solve(p, 2, style(GetParam())).total_cost(), 2);
}

INSTANTIATE_TEST_SUITE_P(Styles, StyleTest, ::testing::Values(MutexStyle::Reduced, MutexStyle::Quadratic),
                         [](const auto& info) { return info.param == MutexStyle::Reduced ? "reduced" : "quadratic"; });

TEST_F(Layered, GripperVariantOneOptimumAtMakespanSeven) {
  const auto p = add_preserving_actions(
      pddl::load_pddl(testing::data_path("gripper/domain.pddl"), testing::data_path("gripper/p01.pddl")));
  const auto r = solve(p, 7, EncodeOptions::variant_one());
  EXPECT_EQ(r.status, SolveStatus::OptimumFound);
  EXPECT_EQ(r.total_cost(), 11);
  EXPECT_TRUE(validate_plan(p, r.plan).valid);
}

TEST_F(Layered, GoalInInitialStateCostsNothing) {
  const auto p = add_preserving_actions(make_problem({"p"}, {{"a", {"p"}, {}, {"p"}, 4}}, {"p"}, {"p"}));
  const auto r = solve(p, 0, EncodeOptions::variant_one());
  EXPECT_TRUE(r.complete());
  EXPECT_TRUE(r.plan.steps.empty());
  EXPECT_EQ(r.total_cost(), 0);
}

TEST_F(Layered, CostBoundExcludesPlansAtTheBound) {
  const auto p = add_preserving_actions(make_problem(
      {"p", "q"}, {{"cheap", {"p"}, {"q"}, {}, 2}, {"dear", {"p"}, {"q"}, {}, 5}}, {"p"}, {"q"}));
  auto o = EncodeOptions::variant_one();
  o.cost_bound = 2;
  EXPECT_EQ(solve(p, 1, o).status, SolveStatus::Unsat);
  o.cost_bound = 3;
  EXPECT_EQ(solve(p, 1, o).total_cost(), 2);
  o.weak_constraints = false;
  o.cost_bound = 6;
  for (int i = 0; i < 3; ++i) EXPECT_LT(solve(p, 1, o).total_cost(), 6);
}

TEST_F(Layered, SuffixCoversTheRestOfTheGoal) {
  const auto p = add_preserving_actions(make_problem(
      {"p", "q", "r"}, {{"a", {"p"}, {"q"}, {}, 1}, {"b", {"q"}, {"r"}, {}, 4}}, {"p"}, {"r"}));
  const auto one = solve(p, 1, EncodeOptions::variant_two());
  EXPECT_EQ(one.status, SolveStatus::OptimumFound);
  EXPECT_TRUE(one.use_suffix);
  EXPECT_EQ(one.total_cost(), 5);
  // At makespan 2 the layered part reaches the goal on its own.
  const auto two = solve(p, 2, EncodeOptions::variant_two());
  EXPECT_FALSE(two.use_suffix);
  EXPECT_EQ(two.suffix_cost, 0);
  EXPECT_EQ(two.total_cost(), 5);
  EXPECT_TRUE(validate_plan(p, two.plan).valid);
}

TEST_F(Layered, VariantTwoRunsOutOfFreshStates) {
  // Only two states are reachable, so no progress-making run has three layers.
  const auto p = add_preserving_actions(make_problem(
      {"p", "q", "g"}, {{"a", {"p"}, {"q"}, {"p"}, 1}, {"b", {"q"}, {"p"}, {"q"}, 1}}, {"p"}, {"g"}));
  EXPECT_EQ(solve(p, 1, EncodeOptions::variant_two()).status, SolveStatus::Unsat);
  EXPECT_EQ(solve(p, 0, EncodeOptions::variant_two()).status, SolveStatus::Unsat);
}

TEST_F(Layered, AsapShortensTheHorizonOfIndependentSwitches) {
  const auto p = add_preserving_actions(make_problem(
      {"on(s1)", "off(s1)", "on(s2)", "off(s2)"},
      {{"flip_on(s1)", {"off(s1)"}, {"on(s1)"}, {"off(s1)"}, 1},
       {"flip_off(s1)", {"on(s1)"}, {"off(s1)"}, {"on(s1)"}, 1},
       {"flip_on(s2)", {"off(s2)"}, {"on(s2)"}, {"off(s2)"}, 1},
       {"flip_off(s2)", {"on(s2)"}, {"off(s2)"}, {"on(s2)"}, 1}},
      {"off(s1)", "off(s2)"}, {"on(s1)", "on(s2)"}));
  auto last_sat = [&](bool asap) {
    EncodeOptions o;
    o.any_goal = true;
    o.make_progress = true;
    o.asap_rule = asap;
    o.weak_constraints = false;
    std::size_t last = 0;
    for (std::size_t k = 0; k <= 6; ++k) {
      if (solve(p, k, o).status != SolveStatus::Unsat) last = k;
    }
    return last;
  };
  const auto with = last_sat(true);
  const auto without = last_sat(false);
  EXPECT_LE(with, 2u);
  EXPECT_GT(without, with);
}

TEST_F(Layered, AsapNeverFiresOnASingleImmediateAction) {
  const auto p = add_preserving_actions(make_problem({"p", "q"}, {{"a", {"p"}, {"q"}, {}, 1}}, {"p"}, {"q"}));
  auto o = EncodeOptions::variant_two();
  o.asap_rule = true;
  EXPECT_EQ(solve(p, 1, o).total_cost(), 1);
}

class RandomLayered : public Layered, public ::testing::WithParamInterface<int> {};

TEST_P(RandomLayered, AgreesWithOracleAndAcrossStyles) {
  std::mt19937_64 rng(9100 + GetParam());
  testing::RandomSpec spec;
  spec.max_fluents = 6;
  spec.max_actions = 8;
  const auto raw = testing::random_problem(rng, spec);
  const auto p = add_preserving_actions(raw);
  const auto best = oracle::optimal_cost_search(raw);
  const std::size_t horizon = best ? std::min<std::size_t>(best->plan.steps.size(), 3) : 3;
  for (std::size_t k = 0; k <= horizon; ++k) {
    const auto reduced = solve(p, k, style(MutexStyle::Reduced));
    const auto quadratic = solve(p, k, style(MutexStyle::Quadratic));
    ASSERT_EQ(reduced.status, quadratic.status) << "makespan " << k;
    if (reduced.has_model) {
      EXPECT_EQ(reduced.total_cost(), quadratic.total_cost());
      const auto report = validate_plan(raw, reduced.plan);
      EXPECT_TRUE(report.valid) << report.reason;
      EXPECT_EQ(report.cost, reduced.total_cost());
      ASSERT_TRUE(best.has_value());
      EXPECT_GE(reduced.total_cost(), best->cost);
    }
    auto o = EncodeOptions::variant_two();
    o.asap_rule = GetParam() % 2 == 1;
    const auto lower = solve(p, k, o);
    if (!lower.has_model) continue;
    std::vector<State> held;
    for (const auto& set : lower.held) held.emplace_back(raw.fluent_count(), set);
    EXPECT_TRUE(oracle::make_progress_check(held));
    const auto states = plan_states(raw, lower.plan);
    ASSERT_TRUE(validate_plan(raw, lower.plan, false).valid);
    if (best) EXPECT_LE(lower.total_cost(), best->cost) << "makespan " << k;
    if (!lower.use_suffix) EXPECT_TRUE(validate_plan(raw, lower.plan).valid);
    EXPECT_TRUE(states.back().contains_all(lower.held.back()));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomLayered, ::testing::Range(0, 10));

}  // namespace
}  // namespace aspcost
