#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "aspcost/asp_codegen.hpp"
#include "aspcost/outcome.hpp"
#include "aspcost/plangraph.hpp"
#include "aspcost/solver.hpp"
#include "aspcost/strips.hpp"

namespace aspcost {

/// Orders happens/2 atoms by layer, drops preserving actions and breaks ties
/// inside a layer by action name. Throws MalformedModel.
SequentialPlan decode_layered_plan(const GroundProblem& problem, const std::vector<Term>& model,
                                   std::size_t makespan);

struct LayeredSolve {
  SolveStatus status = SolveStatus::Unsat;
  bool has_model = false;
  SequentialPlan plan;       // layered part, preserving actions dropped
  Cost layer_cost = 0;
  Cost suffix_cost = 0;
  bool use_suffix = false;
  std::vector<FluentSet> held;  // holds/2 atoms per layer 0..makespan
  double wall_time = 0.0;

  Cost total_cost() const noexcept { return layer_cost + suffix_cost; }
  bool complete() const noexcept { return status == SolveStatus::OptimumFound || status == SolveStatus::Sat; }
};

/// Emits, solves and decodes one layered program. The problem must carry
/// preserving actions.
LayeredSolve solve_layered(const GroundProblem& problem, const PlanningGraph& graph, std::size_t makespan,
                           const EncodeOptions& opts, const SolverDriver& driver,
                           std::chrono::duration<double> timeout, std::stop_token stop = {},
                           const std::string& name = "layered");

/// A lower bound that may be infinite.
struct Bound {
  bool infinite = false;
  Cost value = 0;

  static Bound infinity() { return {true, 0}; }
  static Bound of(Cost c) { return {false, c}; }
  bool covers(Cost c) const noexcept { return infinite || c <= value; }
  friend bool operator<(const Bound& a, const Bound& b) noexcept {
    if (a.infinite) return false;
    return b.infinite || a.value < b.value;
  }
};

struct LedgerEvent {
  enum class Kind { V1Started, V1Plan, V1Unsat, V2Bound, V2Plan, V2Unsat, Decision };
  Kind kind;
  std::size_t makespan = 0;
  std::optional<Cost> cost;  // unset for infinite bounds and unsat
  double at = 0.0;           // seconds since start
  std::string detail;
};

const char* to_string(LedgerEvent::Kind kind) noexcept;

/// Shared bounds of the two pipelines. Every mutation is appended to an audit
/// log under one lock; the stopping predicates are evaluated after each one.
class BoundLedger {
 public:
  struct Upper {
    Cost cost;
    SequentialPlan plan;
    std::size_t makespan;
    std::string source;
  };
  struct Decision {
    OutcomeKind kind;
    std::string reason;
  };

  BoundLedger();

  void v1_started(std::size_t makespan);
  void v1_exhausted();  // every makespan is unsat (goal unreachable in the graph)
  void v1_plan(std::size_t makespan, Cost cost, const SequentialPlan& plan);
  void v1_unsat(std::size_t makespan);
  void v2_bound(std::size_t makespan, Bound bound);
  void v2_plan(std::size_t makespan, Cost cost, const SequentialPlan& plan);

  std::optional<Upper> best_upper() const;
  /// Best bound valid for every plan of makespan >= k.
  std::optional<Bound> lower_bound(std::size_t k) const;
  std::optional<Bound> best_lower() const;
  std::size_t v1_current() const;
  std::optional<std::size_t> v2_unsat_at() const;
  std::map<std::size_t, Bound> recorded_bounds() const;
  std::map<std::size_t, std::optional<Cost>> v1_results() const;
  std::vector<LedgerEvent> audit() const;
  /// Smallest makespan j whose bound covers the best upper cost.
  std::optional<std::size_t> proof_makespan() const;

  std::optional<Decision> decision() const;
  /// Blocks until a decision is made, pred() becomes true or the deadline passes.
  std::optional<Decision> wait(std::chrono::steady_clock::time_point deadline, const std::function<bool()>& pred);
  void notify();

  /// Replays the audit log from scratch and checks that the recorded decision
  /// follows from one of the stopping rules. Throws InvariantViolation.
  static void replay(const std::vector<LedgerEvent>& events);

 private:
  void record(LedgerEvent e);
  void evaluate();
  std::optional<Bound> lower_bound_locked(std::size_t k) const;

  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::chrono::steady_clock::time_point started_;
  std::optional<Upper> best_upper_;
  std::map<std::size_t, Bound> lower_;
  std::map<std::size_t, std::optional<Cost>> v1_results_;
  std::size_t v1_current_ = 0;
  bool v1_started_ = false;
  std::optional<std::size_t> v2_unsat_at_;
  std::vector<LedgerEvent> audit_;
  std::optional<Decision> decision_;
};

struct TwoThreadedConfig {
  std::optional<std::size_t> start_makespan;
  std::chrono::duration<double> global_timeout{300.0};
  /// Adds the as-soon-as-possible rule to the Variant-II program.
  bool asap = false;
  /// Injects the current best upper cost into Variant-II as a hard bound.
  bool cost_bound = true;
  MutexStyle mutex_style = MutexStyle::Reduced;
  std::size_t max_makespan = 4096;
  std::function<void(const LedgerEvent&)> on_event;
};

struct TwoThreadedResult {
  Outcome outcome;
  std::optional<std::size_t> plan_makespan;
  std::optional<std::size_t> v2_proof_makespan;
  double v1_time = 0.0;  // summed solver wall time per pipeline
  double v2_time = 0.0;
  std::map<std::size_t, Bound> lower_bounds;
  std::map<std::size_t, std::optional<Cost>> v1_costs;
  std::vector<LedgerEvent> audit;
};

/// Runs Variant-I and Variant-II concurrently until the bounds meet, the
/// goal is proven unreachable or the timeout expires. Solver errors propagate.
TwoThreadedResult run_two_threaded(const GroundProblem& problem, const SolverDriver& driver,
                                   const TwoThreadedConfig& config, std::stop_token stop = {});

}  // namespace aspcost
