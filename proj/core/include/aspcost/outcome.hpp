#pragma once

#include <optional>
#include <string>

#include "aspcost/strips.hpp"

namespace aspcost {

enum class OutcomeKind { OptimalPlan, NoSolution, Inconclusive };

const char* to_string(OutcomeKind kind) noexcept;

/// Final verdict of a planner run. For OptimalPlan, plan validates with cost;
/// for Inconclusive the best bounds known at the time are reported.
struct Outcome {
  OutcomeKind kind = OutcomeKind::Inconclusive;
  SequentialPlan plan;
  Cost cost = 0;
  std::optional<Cost> best_upper;
  std::optional<Cost> best_lower;
  std::string reason;
  double wall_time = 0.0;
};

}  // namespace aspcost
