#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <vector>

#include <json.hpp>

#include "aspcost/outcome.hpp"
#include "aspcost/solver.hpp"
#include "aspcost/strips.hpp"

namespace aspcost::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitNoSolution = 1,
  kExitInconclusive = 2,
  kExitUsage = 3,
  kExitSolverError = 4,
};

/// Bad input from the command line or an unreadable instance.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  std::string name;
  GroundProblem problem;
};

/// Loads a native JSON problem or a PDDL problem. For PDDL without an explicit
/// domain, domain.pddl next to the problem file is used.
Instance load_instance(const std::filesystem::path& problem, const std::filesystem::path& domain = {});

struct SolverFlags {
  std::string command;  // empty: ASP_SOLVER, then auto-detection
  bool keep_files = false;
  std::string work_dir;
};

SolverConfig make_solver_config(const SolverFlags& flags);

/// "optimal", "no_solution" or "inconclusive".
std::string status_name(OutcomeKind kind);
int exit_code_for(OutcomeKind kind);

nlohmann::json plan_json(const GroundProblem& problem, const SequentialPlan& plan);

/// Writes text to path, or stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

/// Stop token that fires on SIGINT or SIGTERM. Call once, before any thread
/// is started.
std::stop_token install_interrupt_handler();

}  // namespace aspcost::cli
