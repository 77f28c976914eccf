#include "aspcost/asp_codegen.hpp"

#include <algorithm>
#include <vector>

#include "aspcost/errors.hpp"

namespace aspcost {
namespace {

void append_sorted(std::string& out, std::vector<std::string> lines) {
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  for (auto& l : lines) {
    out += l;
    out += '\n';
  }
}

const char* kAspPlanRules = R"(% goal and support
holds(F,K) :- goal(F); finalStep(K).
happens(A,K-1) : add(A,F), validAct(A,K-1) :- holds(F,K); K > 0.
holds(F,K) :- pre(A,F); happens(A,K); validFluent(F,K).
:- holds(F,K); not validFluent(F,K).
)";

const char* kAnyGoalRules = R"(% any goal
{holds(F,K)} :- fluent(F); finalStep(K).
happens(A,K-1) : add(A,F), validAct(A,K-1) :- holds(F,K); K > 0.
holds(F,K) :- pre(A,F); happens(A,K); validFluent(F,K).
:- holds(F,K); not validFluent(F,K).
)";

const char* kQuadraticMutex = R"(% mutex
:- mutexAct(A,B); happens(A,K); happens(B,K).
:- mutex(F,G); holds(F,K); holds(G,K).
deleted(F,K) :- happens(A,K); del(A,F).
:- holds(F,K); deleted(F,K-1).
)";

const char* kReducedMutex = R"(% reduced mutex
used_preserved(F,K) :- happens(A,K); pre(A,F); not del(A,F).
deleted_unused(F,K) :- happens(A,K); del(A,F); not pre(A,F).
:- {used_preserved(F,K); deleted_unused(F,K); happens(A,K) : pre(A,F), del(A,F)} > 1; validFluent(F,K).
deleted(F,K) :- happens(A,K); del(A,F).
:- holds(F,K); deleted(F,K-1).
:- mutex(F,G); holds(F,K); holds(G,K).
)";

const char* kMakeProgress = R"(% make progress
:- not holds(F,K) : not holds(F,J), fluent(F); step(J); step(K); J < K.
)";

const char* kLayerCosts = R"(:~ happens(A,K); cost(A,C). [C@0,A,K]
)";

}  // namespace

void EncodeOptions::validate() const {
  if (asap_rule && !make_progress) throw InvalidOptions("the ASAP rule requires make-progress");
  if (suffix && !make_progress) throw InvalidOptions("the suffix layer requires make-progress");
  if (suffix && !any_goal) throw InvalidOptions("the suffix layer requires the any-goal choice");
  if (cost_bound && *cost_bound < 0) throw InvalidOptions("cost bound must be non-negative");
}

std::string EncodeOptions::describe() const {
  std::string s = mutex_style == MutexStyle::Reduced ? "reduced" : "quadratic";
  if (any_goal) s += ",any-goal";
  if (make_progress) s += ",progress";
  if (asap_rule) s += ",asap";
  if (suffix) s += ",suffix";
  if (cost_bound) s += ",bound=" + std::to_string(*cost_bound);
  if (!weak_constraints) s += ",no-weak";
  return s;
}

EncodeOptions EncodeOptions::variant_one() { return EncodeOptions{}; }

EncodeOptions EncodeOptions::variant_two() {
  EncodeOptions o;
  o.any_goal = true;
  o.make_progress = true;
  o.suffix = true;
  return o;
}

std::string problem_facts(const GroundProblem& problem, bool include_preserving) {
  std::vector<std::string> lines;
  for (std::size_t f = 0; f < problem.fluent_count(); ++f) {
    lines.push_back("fluent(" + problem.fluent_name(static_cast<FluentId>(f)) + ").");
  }
  for (FluentId f : problem.init()) lines.push_back("init(" + problem.fluent_name(f) + ").");
  for (FluentId f : problem.goal()) lines.push_back("goal(" + problem.fluent_name(f) + ").");
  for (const auto& a : problem.actions()) {
    if (a.preserving && !include_preserving) continue;
    lines.push_back("action(" + a.name + ").");
    lines.push_back("cost(" + a.name + "," + std::to_string(a.cost) + ").");
    if (a.preserving) lines.push_back("preserving(" + a.name + ").");
    for (FluentId f : a.pre) lines.push_back("pre(" + a.name + "," + problem.fluent_name(f) + ").");
    for (FluentId f : a.add) lines.push_back("add(" + a.name + "," + problem.fluent_name(f) + ").");
    for (FluentId f : a.del) lines.push_back("del(" + a.name + "," + problem.fluent_name(f) + ").");
  }
  std::string out;
  append_sorted(out, std::move(lines));
  return out;
}

std::string emit_suffix_layer(const GroundProblem& /*problem*/) {
  return R"(% suffix layer: delete-free completion from subgoal/1 to the goal
suffix(holds(F)) :- goal(F); not subgoal(F).
{suffix(happens(A)) : add(A,F), not preserving(A)} >= 1 :- suffix(holds(F)); not subgoal(F).
suffix(holds(F)) :- pre(A,F); suffix(happens(A)).
suffix(support(holds(F))) :- subgoal(F); suffix(holds(F)).
suffix(support(happens(A))) :- suffix(support(holds(F))) : pre(A,F); suffix(happens(A)).
suffix(support(holds(F))) :- suffix(support(happens(A))); add(A,F); suffix(holds(F)).
:- suffix(holds(F)); not suffix(support(holds(F))).
:~ suffix(happens(A)); cost(A,C). [C@0,A,suffix]
useSuffix :- suffix(happens(A)).
:~ useSuffix. [1@-1]
)";
}

std::string emit_asap_rule(const GroundProblem& /*problem*/) {
  return R"(% as soon as possible
deleted(F,K) :- happens(A,K); del(A,F).
used(F,K) :- happens(A,K); pre(A,F); not preserving(A).
:- happens(A,K); K > 0; not preserving(A); holds(F,K-1) : pre(A,F); not used(F,K-1) : del(A,F); not deleted(F,K-1) : add(A,F), holds(F,K).
)";
}

AspProgram emit_layered(const GroundProblem& problem, const PlanningGraph& graph, std::size_t makespan,
                        const EncodeOptions& opts) {
  opts.validate();
  AspProgram prog;
  prog.kind = "layered";
  prog.makespan = makespan;
  prog.flags = opts.describe();

  std::string& out = prog.text;
  out += problem_facts(problem);

  std::vector<std::string> lines;
  const std::string k_last = std::to_string(makespan);
  out += "step(0.." + k_last + ").\nfinalStep(" + k_last + ").\n";
  for (std::size_t f = 0; f < problem.fluent_count(); ++f) {
    const auto level = graph.fluent_level(static_cast<FluentId>(f));
    if (level == PlanningGraph::kUnreachable || level > makespan) continue;
    lines.push_back("validFluent(" + problem.fluent_name(static_cast<FluentId>(f)) + "," +
                    std::to_string(level) + ".." + k_last + ").");
  }
  for (std::size_t a = 0; a < problem.action_count(); ++a) {
    const auto level = graph.action_level(static_cast<ActionId>(a));
    if (level == PlanningGraph::kUnreachable || makespan == 0 || level > makespan - 1) continue;
    lines.push_back("validAct(" + problem.action(static_cast<ActionId>(a)).name + "," + std::to_string(level) +
                    ".." + std::to_string(makespan - 1) + ").");
  }
  for (auto [f, g] : graph.persistent_mutex()) {
    lines.push_back("mutex(" + problem.fluent_name(f) + "," + problem.fluent_name(g) + ").");
  }
  if (opts.mutex_style == MutexStyle::Quadratic) {
    for (auto [a, b] : graph.action_mutex()) {
      lines.push_back("mutexAct(" + problem.action(a).name + "," + problem.action(b).name + ").");
    }
  }
  append_sorted(out, std::move(lines));

  out += opts.any_goal ? kAnyGoalRules : kAspPlanRules;
  out += opts.mutex_style == MutexStyle::Quadratic ? kQuadraticMutex : kReducedMutex;
  if (opts.make_progress) out += kMakeProgress;
  if (opts.asap_rule) out += emit_asap_rule(problem);
  if (opts.suffix) {
    out += "subgoal(F) :- holds(F,K); finalStep(K).\n";
    out += emit_suffix_layer(problem);
  }
  if (opts.weak_constraints) out += kLayerCosts;
  if (opts.cost_bound) {
    out += ":- #sum{C,A,K : happens(A,K), cost(A,C)";
    if (opts.suffix) out += "; C,A,suffix : suffix(happens(A)), cost(A,C)";
    out += "} >= " + std::to_string(*opts.cost_bound) + ".\n";
  }
  out += "#show happens/2.\n#show holds/2.\n";
  if (opts.suffix) out += "#show suffix(happens(A)) : suffix(happens(A)).\n#show useSuffix/0.\n";
  return prog;
}

AspProgram emit_delete_free(const GroundProblem& problem, DeleteFreeDirection direction) {
  AspProgram prog;
  prog.text = problem_facts(problem, false);
  if (direction == DeleteFreeDirection::Forward) {
    prog.kind = "dfp-forward";
    prog.text += R"(holds(F) :- init(F).
{happens(A)} :- holds(F) : pre(A,F); action(A).
holds(F) :- add(A,F); happens(A).
:- goal(F); not holds(F).
:~ happens(A); cost(A,C).[C,A]
)";
  } else {
    prog.kind = "dfp-backward";
    prog.text += R"(holds(F) :- goal(F).
{happens(A) : add(A,F)} >= 1 :- holds(F), not init(F).
holds(F) :- pre(A,F); happens(A).
supportFluent(F) :- init(F); holds(F).
supportAct(A) :- supportFluent(F) : pre(A,F), holds(F); happens(A).
supportFluent(F) :- supportAct(A); happens(A); add(A,F); holds(F).
:- holds(F); not supportFluent(F).
:~ happens(A); cost(A,C).[C,A]
)";
  }
  prog.text += "#show happens/1.\n";
  return prog;
}

}  // namespace aspcost
