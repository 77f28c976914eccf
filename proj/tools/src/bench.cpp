#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <mutex>
#include <thread>

#include "aspcost/errors.hpp"
#include "aspcost/oracle.hpp"
#include "aspcost/stepless_planner.hpp"
#include "aspcost/two_threaded.hpp"
#include "common.hpp"

namespace aspcost::cli {
namespace {

using Seconds = std::chrono::duration<double>;

bool is_instance_file(const std::filesystem::path& p) {
  if (!std::filesystem::is_regular_file(p)) return false;
  const auto ext = p.extension();
  if (ext == ".json") return true;
  return ext == ".pddl" && p.stem().string().rfind("domain", 0) != 0;
}

void run_two_threaded_mode(const GroundProblem& problem, const SolverDriver& driver, const BenchFlags& flags,
                           std::stop_token stop, BenchRow& row) {
  TwoThreadedConfig config;
  config.global_timeout = Seconds(flags.timeout);
  config.asap = flags.asap;
  const auto r = run_two_threaded(problem, driver, config, stop);
  row.status_two_threaded = status_name(r.outcome.kind);
  if (r.outcome.kind == OutcomeKind::NoSolution) row.no_solution = true;
  if (r.outcome.kind != OutcomeKind::OptimalPlan) return;
  row.c_star = r.outcome.cost;
  row.n = r.plan_makespan;
  row.n_star = r.v2_proof_makespan;
  for (const auto& e : r.audit) {
    if (e.kind == LedgerEvent::Kind::V1Plan && r.plan_makespan && e.makespan == *r.plan_makespan) row.t_pi = e.at;
  }
  // Plans proved by a suffix-free Variant-II model have no Variant-I time.
  if (!row.t_pi) row.t_pi = 0.0;
  row.t_star = r.v2_time;
  row.t_two_threaded = *row.t_pi + r.v2_time;
}

void run_stepless_mode(const GroundProblem& problem, const SolverDriver& driver, const BenchFlags& flags,
                       std::stop_token stop, BenchRow& row) {
  SteplessConfig config;
  config.timeout = Seconds(flags.timeout);
  const auto r = run_stepless(problem, driver, config, stop);
  row.status_stepless = status_name(r.outcome.kind);
  if (r.outcome.kind == OutcomeKind::NoSolution) {
    if (row.c_star) row.notes.push_back("stepless reports no solution");
    row.no_solution = row.no_solution || !row.c_star;
    return;
  }
  if (r.outcome.kind != OutcomeKind::OptimalPlan) return;
  if (row.c_star && *row.c_star != r.outcome.cost) {
    row.notes.push_back("stepless cost " + std::to_string(r.outcome.cost) + " differs");
  }
  if (row.no_solution) row.notes.push_back("stepless found a plan");
  if (!row.c_star) row.c_star = r.outcome.cost;
  row.n_s = r.iterations.size();
  double total = 0.0;
  for (const auto& it : r.iterations) total += it.wall_time;
  row.t_stepless = total;
  row.l_s = r.iterations.back().wall_time;
}

BenchRow bench_one(const std::filesystem::path& file, const std::filesystem::path& root, const SolverDriver& driver,
                   const BenchFlags& flags, std::stop_token stop) {
  BenchRow row;
  row.instance = std::filesystem::relative(file, root).replace_extension().string();
  row.status_two_threaded = flags.two_threaded ? "error" : "";
  row.status_stepless = flags.stepless ? "error" : "";
  Instance inst;
  try {
    inst = load_instance(file);
  } catch (const std::exception& e) {
    row.notes.push_back(std::string("load failed: ") + e.what());
    return row;
  }
  if (flags.two_threaded) {
    try {
      run_two_threaded_mode(inst.problem, driver, flags, stop, row);
    } catch (const std::exception& e) {
      row.notes.push_back(std::string("two-threaded: ") + e.what());
    }
  }
  if (flags.stepless) {
    try {
      run_stepless_mode(inst.problem, driver, flags, stop, row);
    } catch (const std::exception& e) {
      row.notes.push_back(std::string("stepless: ") + e.what());
    }
  }
  if (flags.oracle) {
    try {
      const auto best = oracle::optimal_cost_search(inst.problem);
      if (best) row.oracle_cost = best->cost;
      const bool disagree = best ? (row.c_star && *row.c_star != best->cost) || row.no_solution : row.c_star.has_value();
      if (disagree) row.notes.push_back("oracle disagrees");
    } catch (const StateSpaceTooLarge&) {
      row.notes.push_back("oracle: state space too large");
    }
  }
  return row;
}

}  // namespace

std::vector<std::filesystem::path> discover_instances(const std::filesystem::path& dir, bool recursive) {
  if (!std::filesystem::is_directory(dir)) throw UsageError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> out;
  if (recursive) {
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
      if (is_instance_file(e.path())) out.push_back(e.path());
    }
  } else {
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
      if (is_instance_file(e.path())) out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BenchRow> run_bench(const std::filesystem::path& dir, const SolverDriver& driver, const BenchFlags& flags,
                                std::stop_token stop) {
  const auto files = discover_instances(dir, flags.recursive);
  std::vector<BenchRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < files.size();) {
      if (stop.stop_requested()) return;
      rows[i] = bench_one(files[i], dir, driver, flags, stop);
      if (flags.verbose) {
        std::lock_guard lock(log_mutex);
        std::cerr << "done " << rows[i].instance << "\n";
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(flags.jobs, 1, std::max<std::size_t>(files.size(), 1));
  std::vector<std::jthread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  pool.clear();
  std::erase_if(rows, [](const BenchRow& r) { return r.instance.empty(); });
  return rows;
}

}  // namespace aspcost::cli
