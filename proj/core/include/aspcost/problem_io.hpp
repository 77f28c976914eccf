#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "aspcost/strips.hpp"

namespace aspcost {

/// Reads the native JSON problem format:
///
///   {"fluents": [...], "actions": [{"name", "pre", "add", "del", "cost"}],
///    "init": [...], "goal": [...]}
///
/// Names are canonicalized to solver term spelling. Actions may carry
/// "pre_neg" and the problem "goal_neg"; those are compiled away into not_F
/// fluents. When "fluents" is absent the fluent list is collected from every
/// mention, sorted by name. "cost" defaults to 1.
GroundProblem parse_problem_json(std::string_view text);
GroundProblem load_problem_json(const std::filesystem::path& path);

std::string problem_to_json(const GroundProblem& problem, int indent = 2);

/// Accepts either a JSON array of action names or an object with a "plan"
/// array (so solver outcomes can be fed back to the validator).
SequentialPlan parse_plan_json(const GroundProblem& problem, std::string_view text);
SequentialPlan load_plan_json(const GroundProblem& problem, const std::filesystem::path& path);

std::string plan_to_json(const GroundProblem& problem, const SequentialPlan& plan);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace aspcost
