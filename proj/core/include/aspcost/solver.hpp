#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "aspcost/term.hpp"

namespace aspcost {

enum class SolveStatus { Sat, OptimumFound, Unsat, Timeout, Cancelled };

const char* to_string(SolveStatus status) noexcept;

struct SolveRequest {
  std::string program;
  std::vector<std::string> extra_args;
  std::chrono::duration<double> timeout{60.0};
  /// 0 leaves the solver default (one model, or the optimum when optimizing).
  int models_requested = 0;
  /// File stem used when programs are kept on disk, e.g. "bridge6.layered.7".
  std::string name = "program";
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  std::optional<std::vector<Term>> best_model;
  /// Optimization values of the best model, highest priority first.
  std::optional<std::vector<std::int64_t>> cost;
  double wall_time = 0.0;
  std::size_t models_seen = 0;
  std::filesystem::path program_file;

  bool has_model() const noexcept { return best_model.has_value(); }
  /// First optimization value, or 0 when the program had no weak constraints.
  std::int64_t primary_cost() const;
};

struct SolverConfig {
  /// Command template. "{file}" is replaced by the program path; without it
  /// the path is appended. Arguments are split on whitespace.
  std::string command = "clingo";
  std::vector<std::string> default_args = {"--opt-mode=opt"};
  std::filesystem::path work_dir;  // empty: a fresh temporary directory
  bool keep_files = false;
  /// Grace period between polite and forced termination.
  std::chrono::milliseconds kill_grace{1000};
};

/// Runs an external ASP-Core-2 solver per request. Solves are independent and
/// may run concurrently from different threads.
class SolverDriver {
 public:
  explicit SolverDriver(SolverConfig config);
  ~SolverDriver();
  SolverDriver(const SolverDriver&) = delete;
  SolverDriver& operator=(const SolverDriver&) = delete;

  /// Blocks until the solver finishes, the timeout expires or stop is
  /// requested. The subprocess has been reaped when this returns.
  SolveResult solve(const SolveRequest& request, std::stop_token stop = {}) const;

  const SolverConfig& config() const noexcept { return config_; }
  const std::filesystem::path& work_dir() const noexcept { return work_dir_; }

 private:
  SolverConfig config_;
  std::filesystem::path work_dir_;
  bool owns_work_dir_ = false;
};

/// A solve running on its own thread; cancel() may be called from any thread
/// and any number of times.
class SolveHandle {
 public:
  SolveHandle(const SolverDriver& driver, SolveRequest request);
  ~SolveHandle();
  SolveHandle(const SolveHandle&) = delete;
  SolveHandle& operator=(const SolveHandle&) = delete;

  void cancel() noexcept;
  /// Waits for the result; rethrows solver errors.
  SolveResult wait();

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Incremental parser for the solver's text output, exposed for testing.
class SolverOutputParser {
 public:
  void feed_line(const std::string& line);
  bool saw_answer() const noexcept { return best_model_.has_value(); }
  std::optional<SolveStatus> final_status() const noexcept { return status_; }
  const std::optional<std::vector<Term>>& best_model() const noexcept { return best_model_; }
  const std::optional<std::vector<std::int64_t>>& cost() const noexcept { return cost_; }
  std::size_t models_seen() const noexcept { return models_seen_; }
  bool interrupted() const noexcept { return interrupted_; }

 private:
  bool expect_atoms_ = false;
  bool in_summary_ = false;
  bool interrupted_ = false;
  std::size_t models_seen_ = 0;
  std::optional<std::vector<Term>> best_model_;
  std::optional<std::vector<std::int64_t>> cost_;
  std::optional<std::vector<std::int64_t>> last_cost_;
  std::optional<SolveStatus> status_;
};

}  // namespace aspcost
