#include "common.hpp"

#include <signal.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "aspcost/pddl.hpp"
#include "aspcost/problem_io.hpp"

namespace aspcost::cli {

Instance load_instance(const std::filesystem::path& problem, const std::filesystem::path& domain) {
  if (!std::filesystem::is_regular_file(problem)) throw UsageError("no such problem file: " + problem.string());
  Instance out;
  out.name = problem.stem().string();
  if (problem.extension() == ".pddl") {
    auto dom = domain.empty() ? problem.parent_path() / "domain.pddl" : domain;
    if (!std::filesystem::is_regular_file(dom)) {
      throw UsageError("PDDL problem needs a domain: pass --domain or place domain.pddl next to it");
    }
    out.problem = pddl::load_pddl(dom, problem);
  } else {
    out.problem = load_problem_json(problem);
  }
  return out;
}

namespace {

bool on_path(const std::string& exe) {
  const char* path = std::getenv("PATH");
  if (!path) return false;
  std::string_view rest(path);
  while (!rest.empty()) {
    const auto colon = rest.find(':');
    const auto dir = rest.substr(0, colon);
    if (!dir.empty() && ::access((std::filesystem::path(dir) / exe).c_str(), X_OK) == 0) return true;
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  return false;
}

}  // namespace

SolverConfig make_solver_config(const SolverFlags& flags) {
  SolverConfig config;
  if (!flags.command.empty()) {
    config.command = flags.command;
  } else if (const char* env = std::getenv("ASP_SOLVER"); env && *env) {
    config.command = env;
  } else {
    // Python wheels ship clingo as a module without a console script.
    config.command = on_path("clingo") ? "clingo" : "python3 -m clingo";
  }
  config.keep_files = flags.keep_files;
  config.work_dir = flags.work_dir;
  if (!config.work_dir.empty()) std::filesystem::create_directories(config.work_dir);
  return config;
}

std::string status_name(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::OptimalPlan: return "optimal";
    case OutcomeKind::NoSolution: return "no_solution";
    case OutcomeKind::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int exit_code_for(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::OptimalPlan: return kExitOk;
    case OutcomeKind::NoSolution: return kExitNoSolution;
    case OutcomeKind::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

nlohmann::json plan_json(const GroundProblem& problem, const SequentialPlan& plan) {
  return plan_action_names(problem, plan);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw UsageError("cannot write " + path);
}

std::stop_token install_interrupt_handler() {
  static std::stop_source source;
  sigset_t set;
  ::sigemptyset(&set);
  ::sigaddset(&set, SIGINT);
  ::sigaddset(&set, SIGTERM);
  ::pthread_sigmask(SIG_BLOCK, &set, nullptr);
  std::thread([set] {
    int sig = 0;
    for (int seen = 0;; ++seen) {
      if (::sigwait(&set, &sig) != 0) continue;
      if (seen > 0) ::_exit(128 + sig);
      std::cerr << "interrupted, stopping solvers (again to abort)\n";
      source.request_stop();
    }
  }).detach();
  return source.get_token();
}

}  // namespace aspcost::cli
