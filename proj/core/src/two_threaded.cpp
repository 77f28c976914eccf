#include "aspcost/two_threaded.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <tuple>

#include "aspcost/errors.hpp"

namespace aspcost {

const char* to_string(OutcomeKind kind) noexcept {
  switch (kind) {
    case OutcomeKind::OptimalPlan: return "optimal";
    case OutcomeKind::NoSolution: return "no-solution";
    case OutcomeKind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* to_string(LedgerEvent::Kind kind) noexcept {
  switch (kind) {
    case LedgerEvent::Kind::V1Started: return "v1-started";
    case LedgerEvent::Kind::V1Plan: return "v1-plan";
    case LedgerEvent::Kind::V1Unsat: return "v1-unsat";
    case LedgerEvent::Kind::V2Bound: return "v2-bound";
    case LedgerEvent::Kind::V2Plan: return "v2-plan";
    case LedgerEvent::Kind::V2Unsat: return "v2-unsat";
    case LedgerEvent::Kind::Decision: return "decision";
  }
  return "unknown";
}

SequentialPlan decode_layered_plan(const GroundProblem& problem, const std::vector<Term>& model,
                                   std::size_t makespan) {
  std::vector<std::tuple<std::int64_t, std::string, ActionId>> steps;
  for (const auto& atom : model) {
    if (!atom.is("happens", 2)) continue;
    const auto name = atom.arg(0).render();
    const auto id = problem.find_action(name);
    if (!id) throw MalformedModel("unknown action " + name);
    std::int64_t k = 0;
    try {
      k = atom.arg(1).as_number();
    } catch (const Error&) {
      throw MalformedModel("non-numeric layer in " + atom.render());
    }
    if (k < 0 || static_cast<std::size_t>(k) >= makespan) {
      throw MalformedModel("layer out of range in " + atom.render());
    }
    if (problem.action(*id).preserving) continue;
    steps.emplace_back(k, name, *id);
  }
  std::sort(steps.begin(), steps.end());
  SequentialPlan plan;
  for (const auto& s : steps) plan.steps.push_back(std::get<2>(s));
  return plan;
}

LayeredSolve solve_layered(const GroundProblem& problem, const PlanningGraph& graph, std::size_t makespan,
                           const EncodeOptions& opts, const SolverDriver& driver,
                           std::chrono::duration<double> timeout, std::stop_token stop, const std::string& name) {
  SolveRequest req;
  req.program = emit_layered(problem, graph, makespan, opts).text;
  req.timeout = timeout;
  req.name = name + "." + std::to_string(makespan);
  const auto res = driver.solve(req, stop);

  LayeredSolve out;
  out.status = res.status;
  out.wall_time = res.wall_time;
  if (!res.best_model) return out;
  out.has_model = true;
  out.plan = decode_layered_plan(problem, *res.best_model, makespan);
  out.held.resize(makespan + 1);
  for (const auto& atom : *res.best_model) {
    if (atom.is("holds", 2)) {
      const auto f = problem.find_fluent(atom.arg(0).render());
      const auto k = atom.arg(1).kind() == Term::Kind::Number ? atom.arg(1).as_number() : -1;
      if (!f || k < 0 || static_cast<std::size_t>(k) > makespan) throw MalformedModel("bad atom " + atom.render());
      out.held[static_cast<std::size_t>(k)].push_back(*f);
    } else if (atom.is("happens", 2)) {
      out.layer_cost += problem.action(*problem.find_action(atom.arg(0).render())).cost;
    } else if (atom.is("suffix", 1) && atom.arg(0).is("happens", 1)) {
      const auto id = problem.find_action(atom.arg(0).arg(0).render());
      if (!id) throw MalformedModel("unknown suffix action " + atom.render());
      out.suffix_cost += problem.action(*id).cost;
      out.use_suffix = true;
    }
  }
  for (auto& set : out.held) set = make_fluent_set(std::move(set));
  return out;
}

BoundLedger::BoundLedger() : started_(std::chrono::steady_clock::now()) {}

void BoundLedger::record(LedgerEvent e) {
  e.at = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
  audit_.push_back(std::move(e));
}

void BoundLedger::v1_started(std::size_t makespan) {
  std::lock_guard lock(mutex_);
  if (decision_) return;
  v1_started_ = true;
  v1_current_ = makespan;
  record({LedgerEvent::Kind::V1Started, makespan, std::nullopt, 0.0, {}});
  evaluate();
}

void BoundLedger::v1_exhausted() {
  std::lock_guard lock(mutex_);
  if (decision_) return;
  v1_started_ = true;
  v1_current_ = SIZE_MAX;
  record({LedgerEvent::Kind::V1Started, SIZE_MAX, std::nullopt, 0.0, "goal unreachable in the planning graph"});
  evaluate();
}

void BoundLedger::v1_plan(std::size_t makespan, Cost cost, const SequentialPlan& plan) {
  std::lock_guard lock(mutex_);
  if (decision_) return;
  v1_results_[makespan] = cost;
  if (!best_upper_ || cost < best_upper_->cost) best_upper_ = Upper{cost, plan, makespan, "v1"};
  record({LedgerEvent::Kind::V1Plan, makespan, cost, 0.0, {}});
  evaluate();
}

void BoundLedger::v1_unsat(std::size_t makespan) {
  std::lock_guard lock(mutex_);
  if (decision_) return;
  v1_results_[makespan] = std::nullopt;
  record({LedgerEvent::Kind::V1Unsat, makespan, std::nullopt, 0.0, {}});
  evaluate();
}

void BoundLedger::v2_bound(std::size_t makespan, Bound bound) {
  std::lock_guard lock(mutex_);
  if (decision_) return;
  auto [it, inserted] = lower_.emplace(makespan, bound);
  if (!inserted && it->second < bound) it->second = bound;
  if (bound.infinite) {
    v2_unsat_at_ = std::min(v2_unsat_at_.value_or(makespan), makespan);
    record({LedgerEvent::Kind::V2Unsat, makespan, std::nullopt, 0.0, {}});
  } else {
    record({LedgerEvent::Kind::V2Bound, makespan, bound.value, 0.0, {}});
  }
  evaluate();
}

void BoundLedger::v2_plan(std::size_t makespan, Cost cost, const SequentialPlan& plan) {
  std::lock_guard lock(mutex_);
  if (decision_) return;
  if (!best_upper_ || cost < best_upper_->cost) best_upper_ = Upper{cost, plan, makespan, "v2"};
  record({LedgerEvent::Kind::V2Plan, makespan, cost, 0.0, {}});
  evaluate();
}

std::optional<Bound> BoundLedger::lower_bound_locked(std::size_t k) const {
  std::optional<Bound> best;
  for (const auto& [j, b] : lower_) {
    if (j > k) break;
    if (!best || *best < b) best = b;
  }
  return best;
}

void BoundLedger::evaluate() {
  if (decision_ || !v1_started_) return;
  if (v2_unsat_at_ && *v2_unsat_at_ <= v1_current_) {
    decision_ = best_upper_ ? Decision{OutcomeKind::OptimalPlan, "variant-II unsat at makespan " +
                                                                     std::to_string(*v2_unsat_at_)}
                            : Decision{OutcomeKind::NoSolution, "variant-II unsat at makespan " +
                                                                    std::to_string(*v2_unsat_at_)};
  } else if (best_upper_) {
    const auto lb = lower_bound_locked(v1_current_);
    if (lb && lb->covers(best_upper_->cost)) {
      decision_ = Decision{OutcomeKind::OptimalPlan, "bounds met"};
    }
  }
  if (decision_) {
    record({LedgerEvent::Kind::Decision, v1_current_, best_upper_ ? std::optional<Cost>(best_upper_->cost) : std::nullopt,
            0.0, to_string(decision_->kind)});
    cv_.notify_all();
  }
}

std::optional<BoundLedger::Upper> BoundLedger::best_upper() const {
  std::lock_guard lock(mutex_);
  return best_upper_;
}

std::optional<Bound> BoundLedger::lower_bound(std::size_t k) const {
  std::lock_guard lock(mutex_);
  return lower_bound_locked(k);
}

std::optional<Bound> BoundLedger::best_lower() const {
  std::lock_guard lock(mutex_);
  auto lb = lower_bound_locked(v1_current_);
  if (!best_upper_) return lb;
  const Bound upper = Bound::of(best_upper_->cost);
  return !lb || upper < *lb ? upper : *lb;
}

std::size_t BoundLedger::v1_current() const {
  std::lock_guard lock(mutex_);
  return v1_current_;
}

std::optional<std::size_t> BoundLedger::v2_unsat_at() const {
  std::lock_guard lock(mutex_);
  return v2_unsat_at_;
}

std::map<std::size_t, Bound> BoundLedger::recorded_bounds() const {
  std::lock_guard lock(mutex_);
  return lower_;
}

std::map<std::size_t, std::optional<Cost>> BoundLedger::v1_results() const {
  std::lock_guard lock(mutex_);
  return v1_results_;
}

std::vector<LedgerEvent> BoundLedger::audit() const {
  std::lock_guard lock(mutex_);
  return audit_;
}

std::optional<std::size_t> BoundLedger::proof_makespan() const {
  std::lock_guard lock(mutex_);
  if (!best_upper_) return std::nullopt;
  for (const auto& [j, b] : lower_) {
    if (b.covers(best_upper_->cost)) return j;
  }
  return std::nullopt;
}

std::optional<BoundLedger::Decision> BoundLedger::decision() const {
  std::lock_guard lock(mutex_);
  return decision_;
}

std::optional<BoundLedger::Decision> BoundLedger::wait(std::chrono::steady_clock::time_point deadline,
                                                       const std::function<bool()>& pred) {
  std::unique_lock lock(mutex_);
  cv_.wait_until(lock, deadline, [&] { return decision_.has_value() || pred(); });
  return decision_;
}

void BoundLedger::notify() {
  std::lock_guard lock(mutex_);
  cv_.notify_all();
}

void BoundLedger::replay(const std::vector<LedgerEvent>& events) {
  BoundLedger ledger;
  const LedgerEvent* recorded = nullptr;
  for (const auto& e : events) {
    if (e.kind != LedgerEvent::Kind::Decision && ledger.decision()) {
      throw InvariantViolation("audit log continues after a decision");
    }
    switch (e.kind) {
      case LedgerEvent::Kind::V1Started:
        if (e.makespan == SIZE_MAX) {
          ledger.v1_exhausted();
        } else {
          ledger.v1_started(e.makespan);
        }
        break;
      case LedgerEvent::Kind::V1Plan: ledger.v1_plan(e.makespan, e.cost.value(), {}); break;
      case LedgerEvent::Kind::V1Unsat: ledger.v1_unsat(e.makespan); break;
      case LedgerEvent::Kind::V2Bound: ledger.v2_bound(e.makespan, Bound::of(e.cost.value())); break;
      case LedgerEvent::Kind::V2Unsat: ledger.v2_bound(e.makespan, Bound::infinity()); break;
      case LedgerEvent::Kind::V2Plan: ledger.v2_plan(e.makespan, e.cost.value(), {}); break;
      case LedgerEvent::Kind::Decision: recorded = &e; break;
    }
    if (recorded) break;
  }
  const auto decided = ledger.decision();
  if (!recorded) {
    if (decided) throw InvariantViolation("replay reaches a decision the run did not record");
    return;
  }
  if (!decided || std::string(to_string(decided->kind)) != recorded->detail) {
    throw InvariantViolation("recorded decision does not follow from the stopping rules");
  }
}

TwoThreadedResult run_two_threaded(const GroundProblem& input, const SolverDriver& driver,
                                   const TwoThreadedConfig& config, std::stop_token stop) {
  const auto started = std::chrono::steady_clock::now();
  const auto deadline =
      started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(config.global_timeout);
  const GroundProblem problem = input.has_preserving_actions() ? input : add_preserving_actions(input);
  const PlanningGraph graph = PlanningGraph::build(problem);
  const auto goal_layer = first_goal_layer(graph, problem.goal());

  BoundLedger ledger;
  std::mutex state_mutex;
  std::exception_ptr error;
  bool v1_done = false;
  double v1_time = 0.0;
  double v2_time = 0.0;

  auto remaining = [&] {
    return std::chrono::duration<double>(deadline - std::chrono::steady_clock::now());
  };
  auto emit_event = [&](std::size_t from) {
    if (!config.on_event) return from;
    const auto events = ledger.audit();
    for (std::size_t i = from; i < events.size(); ++i) config.on_event(events[i]);
    return events.size();
  };
  auto fail = [&](std::exception_ptr e) {
    {
      std::lock_guard lock(state_mutex);
      if (!error) error = e;
    }
    ledger.notify();
  };

  auto v1 = [&](std::stop_token st) {
    try {
      if (!goal_layer && !config.start_makespan) {
        ledger.v1_exhausted();
        return;
      }
      EncodeOptions opts = EncodeOptions::variant_one();
      opts.mutex_style = config.mutex_style;
      for (std::size_t m = config.start_makespan.value_or(goal_layer.value_or(0)); m <= config.max_makespan; ++m) {
        if (st.stop_requested() || remaining().count() <= 0) break;
        ledger.v1_started(m);
        const auto res = solve_layered(problem, graph, m, opts, driver, remaining(), st, "v1");
        {
          std::lock_guard lock(state_mutex);
          v1_time += res.wall_time;
        }
        if (res.has_model) {
          const auto report = validate_plan(problem, res.plan);
          if (!report.valid) throw InvariantViolation("variant-I plan does not validate: " + report.reason);
          ledger.v1_plan(m, report.cost, res.plan);
        } else if (res.status == SolveStatus::Unsat) {
          ledger.v1_unsat(m);
        }
        if (!res.complete() && res.status != SolveStatus::Unsat) break;
      }
    } catch (...) {
      fail(std::current_exception());
    }
    {
      std::lock_guard lock(state_mutex);
      v1_done = true;
    }
    ledger.notify();
  };

  auto v2 = [&](std::stop_token st) {
    try {
      EncodeOptions opts = EncodeOptions::variant_two();
      opts.mutex_style = config.mutex_style;
      opts.asap_rule = config.asap;
      for (std::size_t k = 0; k <= config.max_makespan; ++k) {
        if (st.stop_requested() || remaining().count() <= 0) break;
        opts.cost_bound.reset();
        if (config.cost_bound) {
          if (auto upper = ledger.best_upper()) opts.cost_bound = upper->cost;
        }
        const auto res = solve_layered(problem, graph, k, opts, driver, remaining(), st, "v2");
        {
          std::lock_guard lock(state_mutex);
          v2_time += res.wall_time;
        }
        if (res.status == SolveStatus::Unsat) {
          // Under a bound B, unsat means every relaxed plan here costs >= B.
          ledger.v2_bound(k, opts.cost_bound ? Bound::of(*opts.cost_bound) : Bound::infinity());
          break;
        }
        if (!res.complete()) break;
        ledger.v2_bound(k, Bound::of(res.total_cost()));
        if (!res.use_suffix) {
          const auto report = validate_plan(problem, res.plan);
          if (!report.valid) throw InvariantViolation("variant-II plan does not validate: " + report.reason);
          ledger.v2_plan(k, report.cost, res.plan);
          break;
        }
      }
    } catch (...) {
      fail(std::current_exception());
    }
    ledger.notify();
  };

  std::size_t seen_events = 0;
  {
    std::jthread t1(v1);
    std::jthread t2(v2);
    for (;;) {
      const auto step_deadline = std::min(deadline, std::chrono::steady_clock::now() + std::chrono::milliseconds(100));
      ledger.wait(step_deadline, [&] {
        std::lock_guard lock(state_mutex);
        return error != nullptr || v1_done;
      });
      seen_events = emit_event(seen_events);
      bool finished;
      {
        std::lock_guard lock(state_mutex);
        finished = error != nullptr || v1_done;
      }
      if (ledger.decision() || finished || stop.stop_requested() || std::chrono::steady_clock::now() >= deadline) {
        break;
      }
    }
    t1.request_stop();
    t2.request_stop();
  }
  emit_event(seen_events);
  if (error) std::rethrow_exception(error);

  TwoThreadedResult result;
  result.v1_time = v1_time;
  result.v2_time = v2_time;
  result.lower_bounds = ledger.recorded_bounds();
  result.v1_costs = ledger.v1_results();
  result.audit = ledger.audit();
  result.outcome.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const auto upper = ledger.best_upper();
  if (const auto d = ledger.decision()) {
    BoundLedger::replay(result.audit);
    result.outcome.kind = d->kind;
    result.outcome.reason = d->reason;
    if (d->kind == OutcomeKind::OptimalPlan) {
      result.outcome.plan = upper->plan;
      result.outcome.cost = upper->cost;
      result.outcome.best_upper = upper->cost;
      result.outcome.best_lower = upper->cost;
      result.plan_makespan = upper->makespan;
      result.v2_proof_makespan = ledger.proof_makespan();
    }
    return result;
  }
  result.outcome.kind = OutcomeKind::Inconclusive;
  result.outcome.reason = stop.stop_requested() ? "cancelled" : "timeout";
  if (upper) {
    result.outcome.best_upper = upper->cost;
    result.plan_makespan = upper->makespan;
  }
  if (auto lb = ledger.best_lower(); lb && !lb->infinite) result.outcome.best_lower = lb->value;
  return result;
}

}  // namespace aspcost
