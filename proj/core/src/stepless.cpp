#include "aspcost/stepless.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <tuple>

#include "aspcost/errors.hpp"

namespace aspcost {
namespace {

// Occurrence structure, causality and the event graph. The last symmetry
// constraint requires a used occurrence to be deleted before the next
// occurrence of the same fluent may hold; otherwise an undeleted occurrence
// can serve the goal while a later deleter of the fluent goes unnoticed.
const char* kSteplessCore = R"(nextOcc(fluentOcc(F,0),fluentOcc(F,1)) :- fluent(F).
nextOcc(fluentOcc(F,M),fluentOcc(F,M+1)) :- is(fluentOcc(F,M)).
nextOcc(actOcc(A,N),actOcc(A,N+1)) :- is(actOcc(A,N)).

{causes(actOcc(A,N),fluentOcc(F,M)) : add(A,F), is(actOcc(A,N))}=1 :-
  holds(fluentOcc(F,M)); M > 0.
happens(AO) :- causes(AO,_).
:- {causes(AO,fluentOcc(F,M))} > 1; is(AO); fluent(F).

{permits(fluentOcc(F,M),actOcc(A,N)) : is(fluentOcc(F,M))}=1 :-
  happens(actOcc(A,N)); pre(A,F).
holds(FO) :- permits(FO,_).
{permits(fluentOcc(F,M),subgoal(F)) : is(fluentOcc(F,M))}=1 :-
  subgoal(F).
:- deleted(FO); permits(FO,subgoal(_)).

deletes(actOcc(A,N),fluentOcc(F,M)) :-
  permits(fluentOcc(F,M),actOcc(A,N)); del(A,F).
:- {deletes(_, FO)} > 1; is(FO).

{follows(actOcc(A,N),fluentOcc(F,M)) : holds(fluentOcc(F,M));
  follows(actOcc(A,N),fluentOcc(F,0))}=1 :-
  del(A,F); not pre(A,F); happens(actOcc(A,N)).

deleted(fluentOcc(F,0)) :- fluent(F); not init(F).
deleted(FO) :- deletes(_, FO).
deleted(FO) :- follows(_, FO).

:~ happens(actOcc(A,N)); cost(A,V).[V,A,N]

:- holds(fluentOcc(F,M+1)); not holds(fluentOcc(F,M));
   is(fluentOcc(F,M)); M > 0.
:- happens(BO); not happens(AO); nextOcc(AO,BO).
:- holds(FO); holds(GO); nextOcc(FO,GO); not deleted(FO).

event(start(FO)) :- holds(FO).
event(end(FO)) :- holds(FO).
event(end(fluentOcc(F,0))) :- fluent(F).
event(AO) :- happens(AO).
event(subgoal(F)) :- subgoal(F).

actionTriggers(AO,start(FO)) :- causes(AO,FO).
actionTriggers(AO,end(FO)) :- deletes(AO,FO).

vertex(V) :- event(V); not actionTriggers(A,V) : is(A).
inVertex(E,V) :- actionTriggers(V,E).
inVertex(V,V) :- vertex(V).

edge(start(FO),end(FO)) :- holds(FO).
edge(start(FO),AO) :- permits(FO,AO).
edge(AO,end(FO)) :- permits(FO,AO); not deletes(AO,FO).

edge(end(FO),AO) :- follows(AO,FO).
edge(AO,start(GO)) :- follows(AO,FO); nextOcc(FO,GO); holds(GO).
edge(end(FO),start(GO)) :- holds(GO); nextOcc(FO,GO).
edge(AO,BO) :- happens(AO); happens(BO); nextOcc(AO,BO).

sup(in(E)) :- sup(D) : edge(D,E); event(E).
sup(V) :- sup(in(E)) : inVertex(E,V); vertex(V).
sup(E) :- sup(V); inVertex(E,V).
:- vertex(V); not sup(V).
)";

// Strong minimality by saturation over two cuts.
const char* kSteplessMinimality = R"(cut(cut1; cut2).

onSideOf(V,s,C) | onSideOf(V,t,C) :- vertex(V); cut(C).
onSideOf(E,X,C) :- inVertex(E,V); onSideOf(V,X,C).
onSideOf(subgoal(F),t,cut2) :- subgoal(F).
not_counterexample :- edge(D,E); onSideOf(D,t,C); onSideOf(E,s,C).
holdsOver(FO,cut2) :-
  onSideOf(start(FO),s,cut2); onSideOf(end(FO),t,cut2).
not_holdsOver(FO,cut1) :-
  onSideOf(start(FO),X,cut1); onSideOf(end(FO),X,cut1).
not_betweenCuts(AO) :- onSideOf(AO,s,cut1).
not_betweenCuts(AO) :- onSideOf(AO,t,cut2).
not_counterexample :- not_betweenCuts(AO) : happens(AO).
not_counterexample :-
  holdsOver(fluentOcc(F,_),cut2);
  not_holdsOver(fluentOcc(F,M),cut1) : holds(fluentOcc(F,M)).

:- not not_counterexample.
onSideOf(V,s,C) :- vertex(V); cut(C); not_counterexample.
onSideOf(V,t,C) :- vertex(V); cut(C); not_counterexample.
)";

const char* kSteplessSuffix = R"(suffix(holds(F)) :- goal(F).
{subgoal(F); suffix(causes(A,F)) : add(A,F)} = 1 :- suffix(holds(F)).
suffix(happens(A)) :- suffix(causes(A,_)).
suffix(holds(F)) :- suffix(happens(A)); pre(A,F).

useSuffix :- suffix(happens(_)).

suffix(sup(holds(F))) :- subgoal(F).
suffix(sup(happens(A))) :-
  suffix(sup(holds(F))) : pre(A,F); suffix(happens(A)).
suffix(sup(holds(F))) :- suffix(sup(happens(A))); suffix(causes(A,F)).

:- suffix(happens(A)); not suffix(sup(happens(A))).
:- suffix(holds(F)); not suffix(sup(holds(F))).

:~ suffix(happens(A)); cost(A,V).[V,A,suffix]
:~ useSuffix.[1@-1]

saturated(fluent(F)) :-
  holds(fluentOcc(F,M)) : is(fluentOcc(F,M)),M>0; fluent(F).
saturated(action(A)) :-
  happens(actOcc(A,N)) : is(actOcc(A,N)); action(A).

suffix(start(action(A))) :- subgoal(F) : pre(A,F); suffix(happens(A)).
suffix(start(fluent(F))) :- suffix(start(action(A))); suffix(causes(A,F)).

:- useSuffix; not saturated(X) : suffix(start(X)).
)";

const char* kSteplessShow = R"(#show causes/2.  #show deletes/2.  #show happens/1.
#show holds/1.  #show permits/2. #show follows/2.
#show suffix(happens(A)) : suffix(happens(A)).
#show saturated/1.
#show suffix(start(X)) : suffix(start(X)).
)";

std::uint32_t as_index(const Term& t) {
  const auto v = t.as_number();
  if (v < 0 || v > UINT32_MAX) throw MalformedModel("occurrence index out of range: " + t.render());
  return static_cast<std::uint32_t>(v);
}

class Decoder {
 public:
  explicit Decoder(const GroundProblem& problem) : problem_(problem) {}

  FluentId fluent(const Term& t) const {
    auto id = problem_.find_fluent(t.render());
    if (!id) throw MalformedModel("unknown fluent " + t.render());
    return *id;
  }
  ActionId action(const Term& t) const {
    auto id = problem_.find_action(t.render());
    if (!id) throw MalformedModel("unknown action " + t.render());
    return *id;
  }
  FluentOcc fluent_occ(const Term& t) const {
    if (!t.is("fluentOcc", 2)) throw MalformedModel("expected fluentOcc/2, got " + t.render());
    return {fluent(t.arg(0)), as_index(t.arg(1))};
  }
  ActionOcc action_occ(const Term& t) const {
    if (!t.is("actOcc", 2)) throw MalformedModel("expected actOcc/2, got " + t.render());
    return {action(t.arg(0)), as_index(t.arg(1))};
  }

 private:
  const GroundProblem& problem_;
};

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Event graph with action-triggered events merged into their action.
struct EventGraph {
  std::vector<std::optional<ActionOcc>> vertex_action;  // per vertex
  std::vector<std::vector<std::size_t>> succ;
};

EventGraph build_event_graph(const GroundProblem& problem, const SteplessModel& m) {
  enum Kind { kAction, kStart, kEnd, kSubgoal };
  using Key = std::tuple<int, std::uint32_t, std::uint32_t>;
  std::map<Key, std::size_t> vertex_of;
  EventGraph g;
  auto add_vertex = [&](const Key& k, std::optional<ActionOcc> act) {
    auto [it, inserted] = vertex_of.emplace(k, g.vertex_action.size());
    if (inserted) {
      g.vertex_action.push_back(act);
      g.succ.emplace_back();
    }
    return it->second;
  };
  auto act_key = [](ActionOcc a) { return Key{kAction, a.action, a.index}; };
  auto start_key = [](FluentOcc f) { return Key{kStart, f.fluent, f.index}; };
  auto end_key = [](FluentOcc f) { return Key{kEnd, f.fluent, f.index}; };

  for (auto a : m.happens) add_vertex(act_key(a), a);
  // Merge triggered events into the triggering action's vertex.
  for (auto [a, f] : m.causes) vertex_of[start_key(f)] = vertex_of.at(act_key(a));
  for (auto [a, f] : m.deletes) vertex_of[end_key(f)] = vertex_of.at(act_key(a));
  for (auto f : m.holds) {
    add_vertex(start_key(f), std::nullopt);
    add_vertex(end_key(f), std::nullopt);
  }
  for (std::size_t f = 0; f < problem.fluent_count(); ++f) {
    add_vertex(end_key({static_cast<FluentId>(f), 0}), std::nullopt);
  }
  for (auto f : m.permits_subgoal) add_vertex(Key{kSubgoal, f.fluent, 0}, std::nullopt);

  std::set<FluentOcc> held(m.holds.begin(), m.holds.end());
  std::set<std::pair<ActionOcc, FluentOcc>> deletes(m.deletes.begin(), m.deletes.end());
  std::set<ActionOcc> happens(m.happens.begin(), m.happens.end());
  auto edge = [&](const Key& a, const Key& b) { g.succ[vertex_of.at(a)].push_back(vertex_of.at(b)); };
  auto next = [](FluentOcc f) { return FluentOcc{f.fluent, f.index + 1}; };

  for (auto f : m.holds) edge(start_key(f), end_key(f));
  for (auto [f, a] : m.permits) {
    edge(start_key(f), act_key(a));
    if (!deletes.count({a, f})) edge(act_key(a), end_key(f));
  }
  for (auto f : m.permits_subgoal) {
    edge(start_key(f), Key{kSubgoal, f.fluent, 0});
    edge(Key{kSubgoal, f.fluent, 0}, end_key(f));
  }
  for (auto [a, f] : m.follows) {
    edge(end_key(f), act_key(a));
    if (held.count(next(f))) edge(act_key(a), start_key(next(f)));
  }
  for (auto f : m.holds) {
    if (f.index > 0) edge(end_key({f.fluent, f.index - 1}), start_key(f));
  }
  for (auto a : m.happens) {
    ActionOcc b{a.action, a.index + 1};
    if (happens.count(b)) edge(act_key(a), act_key(b));
  }
  for (auto& s : g.succ) sort_unique(s);
  return g;
}

}  // namespace

std::size_t OccurrenceBag::fact_count() const {
  return std::accumulate(fluent_count.begin(), fluent_count.end(), std::size_t{0}) +
         std::accumulate(action_count.begin(), action_count.end(), std::size_t{0}) + init.size();
}

OccurrenceBag initial_bag(const GroundProblem& problem) {
  OccurrenceBag bag;
  bag.fluent_count.assign(problem.fluent_count(), 1);
  bag.action_count.assign(problem.action_count(), 1);
  bag.init = problem.init();
  return bag;
}

AspProgram emit_stepless(const GroundProblem& problem, const OccurrenceBag& bag, const SteplessOptions& options) {
  if (problem.has_preserving_actions()) {
    throw PreservingActionsPresent("the stepless encoding needs a problem without preserving actions");
  }
  if (bag.fluent_count.size() != problem.fluent_count() || bag.action_count.size() != problem.action_count()) {
    throw InvalidOptions("occurrence bag does not match the problem");
  }
  AspProgram prog;
  prog.kind = "stepless";
  prog.flags = options.saturation_tie_break ? "tie-break" : "";
  if (!options.strong_minimality) prog.flags += prog.flags.empty() ? "no-minimality" : ",no-minimality";
  std::string& out = prog.text;
  out += problem_facts(problem, false);

  std::vector<std::string> facts;
  for (FluentId f : bag.init) facts.push_back("is(fluentOcc(" + problem.fluent_name(f) + ",0)).");
  for (std::size_t f = 0; f < bag.fluent_count.size(); ++f) {
    if (bag.fluent_count[f] < 1) throw InvalidOptions("occurrence counts must be at least 1");
    for (std::uint32_t m = 1; m <= bag.fluent_count[f]; ++m) {
      facts.push_back("is(fluentOcc(" + problem.fluent_name(static_cast<FluentId>(f)) + "," +
                      std::to_string(m) + ")).");
    }
  }
  for (std::size_t a = 0; a < bag.action_count.size(); ++a) {
    if (bag.action_count[a] < 1) throw InvalidOptions("occurrence counts must be at least 1");
    for (std::uint32_t n = 1; n <= bag.action_count[a]; ++n) {
      facts.push_back("is(actOcc(" + problem.action(static_cast<ActionId>(a)).name + "," + std::to_string(n) +
                      ")).");
    }
  }
  std::sort(facts.begin(), facts.end());
  for (auto& f : facts) out += f + '\n';

  out += kSteplessCore;
  if (options.strong_minimality) out += kSteplessMinimality;
  out += kSteplessSuffix;
  if (options.saturation_tie_break) out += ":~ saturated(X). [-1@-2,X]\n";
  out += kSteplessShow;
  return prog;
}

SteplessModel decode_stepless(const GroundProblem& problem, const std::vector<Term>& atoms) {
  Decoder d(problem);
  SteplessModel m;
  for (const auto& atom : atoms) {
    if (atom.is("happens", 1)) {
      m.happens.push_back(d.action_occ(atom.arg(0)));
    } else if (atom.is("holds", 1)) {
      m.holds.push_back(d.fluent_occ(atom.arg(0)));
    } else if (atom.is("causes", 2)) {
      m.causes.emplace_back(d.action_occ(atom.arg(0)), d.fluent_occ(atom.arg(1)));
    } else if (atom.is("permits", 2)) {
      const auto& target = atom.arg(1);
      if (target.is("subgoal", 1)) {
        auto fo = d.fluent_occ(atom.arg(0));
        if (fo.fluent != d.fluent(target.arg(0))) throw MalformedModel("mismatched subgoal " + atom.render());
        m.permits_subgoal.push_back(fo);
      } else {
        m.permits.emplace_back(d.fluent_occ(atom.arg(0)), d.action_occ(target));
      }
    } else if (atom.is("deletes", 2)) {
      m.deletes.emplace_back(d.action_occ(atom.arg(0)), d.fluent_occ(atom.arg(1)));
    } else if (atom.is("follows", 2)) {
      m.follows.emplace_back(d.action_occ(atom.arg(0)), d.fluent_occ(atom.arg(1)));
    } else if (atom.is("suffix", 1) && atom.arg(0).is("happens", 1)) {
      m.suffix_happens.push_back(d.action(atom.arg(0).arg(0)));
    } else if (atom.is("suffix", 1) && atom.arg(0).is("start", 1)) {
      const auto& x = atom.arg(0).arg(0);
      if (x.is("fluent", 1)) {
        m.suffix_start_fluents.push_back(d.fluent(x.arg(0)));
      } else if (x.is("action", 1)) {
        m.suffix_start_actions.push_back(d.action(x.arg(0)));
      } else {
        throw MalformedModel("unexpected atom " + atom.render());
      }
    } else if (atom.is("saturated", 1)) {
      const auto& x = atom.arg(0);
      if (x.is("fluent", 1)) {
        m.saturated_fluents.push_back(d.fluent(x.arg(0)));
      } else if (x.is("action", 1)) {
        m.saturated_actions.push_back(d.action(x.arg(0)));
      } else {
        throw MalformedModel("unexpected atom " + atom.render());
      }
    } else {
      throw MalformedModel("unexpected atom " + atom.render());
    }
  }
  sort_unique(m.happens);
  sort_unique(m.holds);
  sort_unique(m.causes);
  sort_unique(m.permits);
  sort_unique(m.permits_subgoal);
  sort_unique(m.deletes);
  sort_unique(m.follows);
  sort_unique(m.suffix_happens);
  sort_unique(m.saturated_fluents);
  sort_unique(m.saturated_actions);
  sort_unique(m.suffix_start_fluents);
  sort_unique(m.suffix_start_actions);
  m.use_suffix = !m.suffix_happens.empty();

  // Structure: every held occurrence past 0 has one cause, at most one deleter.
  std::map<FluentOcc, int> cause_count;
  for (auto& [a, f] : m.causes) {
    if (!std::binary_search(m.happens.begin(), m.happens.end(), a)) {
      throw InvariantViolation("cause of a fluent occurrence does not happen");
    }
    if (!contains(problem.action(a.action).add, f.fluent)) {
      throw InvariantViolation("action occurrence causes a fluent it does not add");
    }
    ++cause_count[f];
  }
  for (auto f : m.holds) {
    if (f.index == 0) {
      if (!contains(problem.init(), f.fluent)) throw InvariantViolation("occurrence 0 of a non-initial fluent");
      continue;
    }
    if (cause_count[f] != 1) {
      throw InvariantViolation("fluent occurrence " + problem.fluent_name(f.fluent) + "," +
                               std::to_string(f.index) + " does not have exactly one cause");
    }
  }
  std::map<FluentOcc, int> deleters;
  for (auto& [a, f] : m.deletes) {
    if (++deleters[f] > 1) throw InvariantViolation("fluent occurrence deleted twice");
  }

  for (auto a : m.happens) m.cost += problem.action(a.action).cost;
  for (auto a : m.suffix_happens) m.cost += problem.action(a).cost;
  return m;
}

SaturatedSet extract_saturated(const SteplessModel& model, const OccurrenceBag& bag) {
  SaturatedSet s;
  std::vector<std::uint32_t> held(bag.fluent_count.size(), 0);
  std::vector<std::uint32_t> used(bag.action_count.size(), 0);
  for (auto f : model.holds) {
    if (f.index > 0 && f.fluent < held.size()) ++held[f.fluent];
  }
  for (auto a : model.happens) {
    if (a.action < used.size()) ++used[a.action];
  }
  for (std::size_t f = 0; f < held.size(); ++f) {
    if (held[f] > bag.fluent_count[f]) throw SaturationMismatch("model uses occurrences outside the bag");
    if (held[f] == bag.fluent_count[f]) s.fluents.push_back(static_cast<FluentId>(f));
  }
  for (std::size_t a = 0; a < used.size(); ++a) {
    if (used[a] > bag.action_count[a]) throw SaturationMismatch("model uses occurrences outside the bag");
    if (used[a] == bag.action_count[a]) s.actions.push_back(static_cast<ActionId>(a));
  }
  if (s.fluents != model.saturated_fluents || s.actions != model.saturated_actions) {
    throw SaturationMismatch("solver saturation atoms disagree with the occurrences used");
  }
  // The suffix may only be used when it starts from something saturated.
  if (model.use_suffix) {
    const bool any_fluent = std::any_of(model.suffix_start_fluents.begin(), model.suffix_start_fluents.end(),
                                        [&](FluentId f) { return contains(s.fluents, f); });
    const bool any_action = std::any_of(model.suffix_start_actions.begin(), model.suffix_start_actions.end(),
                                        [&](ActionId a) { return std::binary_search(s.actions.begin(), s.actions.end(), a); });
    if (!any_fluent && !any_action) throw SaturationMismatch("suffix starts from nothing saturated");
  }
  return s;
}

OccurrenceBag expand_bag(const OccurrenceBag& bag, const SaturatedSet& saturated) {
  if (saturated.empty()) throw EmptyExpansion("nothing saturated to expand");
  OccurrenceBag out = bag;
  for (FluentId f : saturated.fluents) ++out.fluent_count.at(f);
  for (ActionId a : saturated.actions) ++out.action_count.at(a);
  return out;
}

namespace {

std::vector<std::size_t> topo_order(const GroundProblem& problem, const EventGraph& g) {
  const std::size_t n = g.succ.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& s : g.succ) {
    for (auto v : s) ++indegree[v];
  }
  // Non-action vertices first, then actions by name and occurrence index.
  using Key = std::tuple<int, std::string, std::uint32_t, std::size_t>;
  auto key = [&](std::size_t v) {
    const auto& a = g.vertex_action[v];
    if (!a) return Key{0, std::string(), 0, v};
    return Key{1, problem.action(a->action).name, a->index, v};
  };
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(key(v));
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const auto v = std::get<3>(ready.top());
    ready.pop();
    order.push_back(v);
    for (auto w : g.succ[v]) {
      if (--indegree[w] == 0) ready.push(key(w));
    }
  }
  if (order.size() != n) throw CycleDetected("stepless event graph has a cycle");
  return order;
}

}  // namespace

SequentialPlan topo_sort_plan(const GroundProblem& problem, const SteplessModel& model) {
  const auto g = build_event_graph(problem, model);
  SequentialPlan plan;
  for (auto v : topo_order(problem, g)) {
    if (g.vertex_action[v]) plan.steps.push_back(g.vertex_action[v]->action);
  }
  return plan;
}

PartialOrderPlan stepless_partial_order(const GroundProblem& problem, const SteplessModel& model) {
  const auto g = build_event_graph(problem, model);
  const auto order = topo_order(problem, g);
  const std::size_t n = g.succ.size();
  std::vector<std::size_t> occ_of(n, SIZE_MAX);
  std::vector<Occurrence> occurrences;
  for (auto v : order) {
    if (!g.vertex_action[v]) continue;
    occ_of[v] = occurrences.size();
    occurrences.push_back({g.vertex_action[v]->action, g.vertex_action[v]->index});
  }
  // reach[v]: action occurrences reachable from v.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(occurrences.size(), false));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (auto w : g.succ[*it]) {
      if (occ_of[w] != SIZE_MAX) reach[*it][occ_of[w]] = true;
      for (std::size_t k = 0; k < occurrences.size(); ++k) {
        if (reach[w][k]) reach[*it][k] = true;
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t v = 0; v < n; ++v) {
    if (occ_of[v] == SIZE_MAX) continue;
    for (std::size_t k = 0; k < occurrences.size(); ++k) {
      if (reach[v][k]) edges.emplace_back(occ_of[v], k);
    }
  }
  return PartialOrderPlan(std::move(occurrences), edges);
}

std::vector<std::string> bag_additions(const GroundProblem& problem, const OccurrenceBag& before,
                                       const OccurrenceBag& after) {
  std::vector<std::string> out;
  for (std::size_t f = 0; f < after.fluent_count.size(); ++f) {
    for (auto m = before.fluent_count.at(f) + 1; m <= after.fluent_count[f]; ++m) {
      out.push_back("is(fluentOcc(" + problem.fluent_name(static_cast<FluentId>(f)) + "," + std::to_string(m) +
                    ")).");
    }
  }
  for (std::size_t a = 0; a < after.action_count.size(); ++a) {
    for (auto n = before.action_count.at(a) + 1; n <= after.action_count[a]; ++n) {
      out.push_back("is(actOcc(" + problem.action(static_cast<ActionId>(a)).name + "," + std::to_string(n) + ")).");
    }
  }
  return out;
}

}  // namespace aspcost
