#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "aspcost/asp_codegen.hpp"
#include "aspcost/errors.hpp"
#include "aspcost/problem_io.hpp"
#include "aspcost/stepless.hpp"
#include "aspcost/two_threaded.hpp"
#include "test_support.hpp"

namespace aspcost {
namespace {

using testing::make_problem;

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

GroundProblem toy() {
  return make_problem({"p", "q"}, {{"a", {"p"}, {"q"}, {"p"}, 3}}, {"p"}, {"q"});
}

TEST(EncodeOptions, Validation) {
  EncodeOptions o;
  o.asap_rule = true;
  EXPECT_THROW(o.validate(), InvalidOptions);
  o = EncodeOptions{};
  o.suffix = true;
  o.any_goal = true;
  EXPECT_THROW(o.validate(), InvalidOptions);
  o.make_progress = true;
  EXPECT_NO_THROW(o.validate());
  o.any_goal = false;
  EXPECT_THROW(o.validate(), InvalidOptions);
  o = EncodeOptions{};
  o.cost_bound = -1;
  EXPECT_THROW(o.validate(), InvalidOptions);
  EXPECT_NO_THROW(EncodeOptions::variant_one().validate());
  EXPECT_NO_THROW(EncodeOptions::variant_two().validate());
}

TEST(ProblemFacts, SortedAndComplete) {
  const auto p = add_preserving_actions(toy());
  const auto facts = problem_facts(p);
  EXPECT_TRUE(has(facts, "action(a).\n"));
  EXPECT_TRUE(has(facts, "cost(a,3).\n"));
  EXPECT_TRUE(has(facts, "pre(a,p).\n"));
  EXPECT_TRUE(has(facts, "add(a,q).\n"));
  EXPECT_TRUE(has(facts, "del(a,p).\n"));
  EXPECT_TRUE(has(facts, "init(p).\n"));
  EXPECT_TRUE(has(facts, "goal(q).\n"));
  EXPECT_TRUE(has(facts, "preserving(preserve(p)).\n"));
  EXPECT_FALSE(has(problem_facts(p, false), "preserve("));
  std::vector<std::string> lines;
  std::istringstream in(facts);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  EXPECT_EQ(problem_facts(p), facts);
  EXPECT_EQ(std::set<std::string>(lines.begin(), lines.end()).size(), lines.size());
}

TEST(EmitLayered, VariantOneStructure) {
  const auto p = add_preserving_actions(toy());
  const auto g = PlanningGraph::build(p);
  const auto prog = emit_layered(p, g, 2, EncodeOptions::variant_one());
  EXPECT_EQ(prog.makespan, 2u);
  EXPECT_TRUE(has(prog.text, "holds(F,K) :- goal(F); finalStep(K)."));
  EXPECT_TRUE(has(prog.text, "happens(A,K-1) : add(A,F), validAct(A,K-1) :- holds(F,K); K > 0."));
  EXPECT_TRUE(has(prog.text, "used_preserved(F,K)"));
  EXPECT_TRUE(has(prog.text, ":~ happens(A,K); cost(A,C). [C@0,A,K]"));
  EXPECT_TRUE(has(prog.text, "validFluent(q,1..2)."));
  EXPECT_TRUE(has(prog.text, "validAct(a,0..1)."));
  EXPECT_TRUE(has(prog.text, "finalStep(2)."));
  EXPECT_FALSE(has(prog.text, "{holds(F,K)}"));
  EXPECT_FALSE(has(prog.text, "useSuffix"));
  EXPECT_FALSE(has(prog.text, "#sum"));
}

TEST(EmitLayered, VariantTwoStructure) {
  const auto p = add_preserving_actions(toy());
  const auto g = PlanningGraph::build(p);
  auto opts = EncodeOptions::variant_two();
  opts.asap_rule = true;
  opts.cost_bound = 7;
  opts.mutex_style = MutexStyle::Quadratic;
  const auto text = emit_layered(p, g, 1, opts).text;
  EXPECT_TRUE(has(text, "{holds(F,K)} :- fluent(F); finalStep(K)."));
  EXPECT_TRUE(has(text, ":- not holds(F,K) : not holds(F,J), fluent(F); step(J); step(K); J < K."));
  EXPECT_TRUE(has(text, "used(F,K) :- happens(A,K); pre(A,F); not preserving(A)."));
  EXPECT_TRUE(has(text, ":- mutexAct(A,B); happens(A,K); happens(B,K)."));
  EXPECT_TRUE(has(text, ":~ useSuffix. [1@-1]"));
  EXPECT_TRUE(has(text, "[C@0,A,suffix]"));
  EXPECT_TRUE(has(text, "} >= 7."));
  EXPECT_FALSE(has(text, "holds(F,K) :- goal(F); finalStep(K)."));
}

TEST(EmitLayered, MakespanZeroHasNoActions) {
  const auto p = add_preserving_actions(toy());
  const auto g = PlanningGraph::build(p);
  const auto text = emit_layered(p, g, 0, EncodeOptions::variant_one()).text;
  EXPECT_FALSE(has(text, "validAct(a,"));
  EXPECT_TRUE(has(text, "validFluent(p,0..0)."));
}

TEST(EmitLayered, RejectsInconsistentOptions) {
  const auto p = add_preserving_actions(toy());
  const auto g = PlanningGraph::build(p);
  EncodeOptions o;
  o.asap_rule = true;
  EXPECT_THROW(emit_layered(p, g, 1, o), InvalidOptions);
}

TEST(EmitDeleteFree, BothDirections) {
  const auto p = toy();
  const auto fwd = emit_delete_free(p, DeleteFreeDirection::Forward);
  const auto bwd = emit_delete_free(p, DeleteFreeDirection::Backward);
  EXPECT_EQ(fwd.kind, "dfp-forward");
  EXPECT_TRUE(has(fwd.text, "{happens(A)} :- holds(F) : pre(A,F); action(A)."));
  EXPECT_TRUE(has(bwd.text, "{happens(A) : add(A,F)} >= 1 :- holds(F), not init(F)."));
  EXPECT_TRUE(has(bwd.text, ":- holds(F); not supportFluent(F)."));
  // Facts keep del/2 even though neither program reads it.
  EXPECT_TRUE(has(fwd.text, "del(a,p)."));
}

TEST(OccurrenceBag, InitialBagOfBridge) {
  const auto p = load_problem_json(testing::data_path("bridge/bridge6.json"));
  const auto bag = initial_bag(p);
  EXPECT_EQ(bag.fluent_count.size(), 14u);
  EXPECT_EQ(bag.action_count.size(), 42u);
  EXPECT_EQ(bag.init.size(), 7u);
  EXPECT_EQ(bag.fact_count(), 14u + 42u + 7u);
  const auto text = emit_stepless(p, bag).text;
  std::size_t is_facts = 0;
  for (std::size_t pos = 0; (pos = text.find("\nis(", pos)) != std::string::npos; ++pos) ++is_facts;
  EXPECT_EQ(is_facts, bag.fact_count());
  EXPECT_TRUE(has(text, "is(fluentOcc(lantern_at(side_a),0)).\n"));
  EXPECT_TRUE(has(text, "is(actOcc(cross_alone(joe,side_a,side_b),1)).\n"));
}

TEST(OccurrenceBag, EmptyProblemHasEmptyBag) {
  const auto p = make_problem({}, {}, {}, {});
  EXPECT_EQ(initial_bag(p).fact_count(), 0u);
}

TEST(EmitStepless, RejectsPreservingActions) {
  const auto p = add_preserving_actions(toy());
  EXPECT_THROW(emit_stepless(p, initial_bag(p)), PreservingActionsPresent);
}

TEST(EmitStepless, ContainsEveryBlock) {
  const auto p = toy();
  const auto text = emit_stepless(p, initial_bag(p)).text;
  EXPECT_TRUE(has(text, ":- vertex(V); not sup(V)."));
  EXPECT_TRUE(has(text, ":- not not_counterexample."));
  EXPECT_TRUE(has(text, ":~ useSuffix.[1@-1]"));
  EXPECT_TRUE(has(text, ":- useSuffix; not saturated(X) : suffix(start(X))."));
  EXPECT_TRUE(has(text, ":~ happens(actOcc(A,N)); cost(A,V).[V,A,N]"));
  EXPECT_TRUE(has(text, "#show saturated/1."));
  SteplessOptions o;
  o.saturation_tie_break = false;
  EXPECT_FALSE(has(emit_stepless(p, initial_bag(p), o).text, "[-1@-2,X]"));
  EXPECT_TRUE(has(text, "[-1@-2,X]"));
}

TEST(ExpandBag, AddsOneOccurrencePerSaturatedItem) {
  const auto p = load_problem_json(testing::data_path("bridge/bridge6.json"));
  const auto bag = initial_bag(p);
  SaturatedSet s;
  s.fluents = {p.find_fluent("at(joe,side_b)").value()};
  s.actions = {p.find_action("cross_alone(joe,side_b,side_a)").value()};
  const auto next = expand_bag(bag, s);
  EXPECT_EQ(next.fact_count(), bag.fact_count() + 2);
  EXPECT_EQ(bag_additions(p, bag, next),
            (std::vector<std::string>{"is(fluentOcc(at(joe,side_b),2)).", "is(actOcc(cross_alone(joe,side_b,side_a),2))."}));
  EXPECT_THROW(expand_bag(bag, SaturatedSet{}), EmptyExpansion);
}

TEST(DecodeStepless, EmptyModel) {
  const auto p = toy();
  const auto m = decode_stepless(p, {});
  EXPECT_TRUE(m.happens.empty());
  EXPECT_FALSE(m.use_suffix);
  EXPECT_EQ(m.cost, 0);
  EXPECT_TRUE(topo_sort_plan(p, m).steps.empty());
}

TEST(DecodeStepless, SingleActionModel) {
  const auto p = toy();
  const auto atoms = parse_atom_line(
      "happens(actOcc(a,1)) holds(fluentOcc(p,0)) holds(fluentOcc(q,1)) causes(actOcc(a,1),fluentOcc(q,1)) "
      "permits(fluentOcc(p,0),actOcc(a,1)) deletes(actOcc(a,1),fluentOcc(p,0)) "
      "permits(fluentOcc(q,1),subgoal(q)) saturated(action(a)) saturated(fluent(q))");
  const auto m = decode_stepless(p, atoms);
  EXPECT_EQ(m.cost, 3);
  EXPECT_EQ(m.happens.size(), 1u);
  const auto plan = topo_sort_plan(p, m);
  ASSERT_EQ(plan.steps.size(), 1u);
  EXPECT_EQ(p.action(plan.steps[0]).name, "a");
  const auto bag = initial_bag(p);
  const auto sat = extract_saturated(m, bag);
  EXPECT_EQ(sat.actions.size(), 1u);
  EXPECT_EQ(sat.fluents, FluentSet{p.find_fluent("q").value()});
}

TEST(DecodeStepless, RejectsMalformedAndInconsistentModels) {
  const auto p = toy();
  EXPECT_THROW(decode_stepless(p, parse_atom_line("happens(actOcc(zzz,1))")), MalformedModel);
  EXPECT_THROW(decode_stepless(p, parse_atom_line("weird(1)")), MalformedModel);
  EXPECT_THROW(decode_stepless(p, parse_atom_line("happens(actOcc(a,x))")), Error);
  // A held occurrence without a cause.
  EXPECT_THROW(decode_stepless(p, parse_atom_line("holds(fluentOcc(q,1))")), InvariantViolation);
}

TEST(ExtractSaturated, DetectsSolverDisagreement) {
  const auto p = toy();
  const auto m = decode_stepless(p, parse_atom_line("saturated(fluent(q))"));
  EXPECT_THROW(extract_saturated(m, initial_bag(p)), SaturationMismatch);
}

TEST(DecodeLayeredPlan, DropsPreservingAndOrdersByLayer) {
  const auto p = add_preserving_actions(make_problem(
      {"p", "q", "r"}, {{"a", {"p"}, {"q"}, {}, 1}, {"b", {"q"}, {"r"}, {}, 1}}, {"p"}, {"r"}));
  const auto plan = decode_layered_plan(p, parse_atom_line("happens(b,1) happens(preserve(p),0) happens(a,0)"), 2);
  EXPECT_EQ(plan_action_names(p, plan), (std::vector<std::string>{"a", "b"}));
  EXPECT_THROW(decode_layered_plan(p, parse_atom_line("happens(a,2)"), 2), MalformedModel);
  EXPECT_THROW(decode_layered_plan(p, parse_atom_line("happens(nope,0)"), 2), MalformedModel);
}

TEST(BoundLedger, CheaperShortPlanBeatsLongerVariantTwoPlan) {
  // Variant-II returns a suffix-free plan of cost 110 at makespan 2 while the
  // true optimum (cost 10) has makespan 1 and has not been seen yet.
  BoundLedger ledger;
  ledger.v1_started(1);
  ledger.v2_bound(0, Bound::of(2));
  ledger.v2_bound(1, Bound::of(2));
  ledger.v2_bound(2, Bound::of(110));
  ledger.v2_plan(2, 110, {});
  EXPECT_FALSE(ledger.decision().has_value());
  ledger.v1_plan(1, 10, {});
  EXPECT_FALSE(ledger.decision().has_value());
  ledger.v1_started(2);
  ASSERT_TRUE(ledger.decision().has_value());
  EXPECT_EQ(ledger.decision()->kind, OutcomeKind::OptimalPlan);
  EXPECT_EQ(ledger.best_upper()->cost, 10);
  EXPECT_EQ(ledger.proof_makespan(), 2u);
  EXPECT_NO_THROW(BoundLedger::replay(ledger.audit()));
}

TEST(BoundLedger, UnsatAheadOfVariantOneMeansNoSolution) {
  BoundLedger ledger;
  ledger.v1_started(0);
  ledger.v2_bound(0, Bound::of(1));
  ledger.v2_bound(3, Bound::infinity());
  EXPECT_FALSE(ledger.decision().has_value());
  ledger.v1_unsat(0);
  ledger.v1_started(1);
  ledger.v1_unsat(1);
  ledger.v1_started(2);
  EXPECT_FALSE(ledger.decision().has_value());
  ledger.v1_unsat(2);
  ledger.v1_started(3);
  ASSERT_TRUE(ledger.decision().has_value());
  EXPECT_EQ(ledger.decision()->kind, OutcomeKind::NoSolution);
  EXPECT_EQ(ledger.v2_unsat_at(), 3u);
  EXPECT_NO_THROW(BoundLedger::replay(ledger.audit()));
}

TEST(BoundLedger, BoundsArePrefixMaxima) {
  BoundLedger ledger;
  ledger.v2_bound(0, Bound::of(5));
  ledger.v2_bound(2, Bound::of(3));
  ledger.v2_bound(4, Bound::of(9));
  EXPECT_EQ(ledger.lower_bound(3)->value, 5);
  EXPECT_EQ(ledger.lower_bound(4)->value, 9);
  EXPECT_FALSE(ledger.lower_bound(0)->infinite);
}

TEST(BoundLedger, EarlierLayerBoundStopsTheRun) {
  BoundLedger ledger;
  ledger.v2_bound(0, Bound::of(4));
  ledger.v1_started(5);
  ledger.v1_plan(5, 4, {});
  ASSERT_TRUE(ledger.decision().has_value());
  EXPECT_EQ(ledger.proof_makespan(), 0u);
}

TEST(BoundLedger, ReplayRejectsUnjustifiedDecision) {
  std::vector<LedgerEvent> events{{LedgerEvent::Kind::V1Started, 1, std::nullopt, 0.0, {}},
                                  {LedgerEvent::Kind::V1Plan, 1, 10, 0.0, {}},
                                  {LedgerEvent::Kind::Decision, 1, 10, 0.0, "optimal"}};
  EXPECT_THROW(BoundLedger::replay(events), InvariantViolation);
}

}  // namespace
}  // namespace aspcost
