#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "aspcost/solver.hpp"
#include "aspcost/strips.hpp"

namespace aspcost::cli {

struct BenchFlags {
  bool two_threaded = true;
  bool stepless = true;
  double timeout = 300.0;  // per instance and mode
  std::size_t jobs = 1;
  bool asap = false;
  bool recursive = false;
  bool oracle = false;
  bool verbose = false;
};

/// One instance with the report columns. Unset values print as dashes.
struct BenchRow {
  std::string instance;
  std::optional<Cost> c_star;
  bool no_solution = false;
  std::optional<std::size_t> n;       // makespan of the Variant-I optimal plan
  std::optional<std::size_t> n_star;  // makespan of the Variant-II proof
  std::optional<double> t_pi;         // until Variant-I found that plan
  std::optional<double> t_star;       // Variant-II solver time
  std::optional<double> t_two_threaded;
  std::optional<std::size_t> n_s;  // stepless iterations
  std::optional<double> t_stepless;
  std::optional<double> l_s;  // last stepless iteration
  std::string status_two_threaded;
  std::string status_stepless;
  std::optional<Cost> oracle_cost;
  std::vector<std::string> notes;
};

/// Problem files in dir: *.json, and *.pddl other than domain files. Sorted.
std::vector<std::filesystem::path> discover_instances(const std::filesystem::path& dir, bool recursive);

std::vector<BenchRow> run_bench(const std::filesystem::path& dir, const SolverDriver& driver,
                                const BenchFlags& flags, std::stop_token stop = {});

}  // namespace aspcost::cli
