#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aspcost/asp_codegen.hpp"
#include "aspcost/errors.hpp"
#include "aspcost/oracle.hpp"
#include "aspcost/plangraph.hpp"
#include "aspcost/problem_io.hpp"
#include "aspcost/stepless.hpp"
#include "bench.hpp"
#include "common.hpp"
#include "report.hpp"
#include "solve_command.hpp"

namespace aspcost::cli {
namespace {

using nlohmann::json;

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2);
  // Flat key/value rendering for the scalar fields; nested values as JSON.
  std::ostringstream out;
  if (format == "md") out << "| field | value |\n|---|---|\n";
  if (format == "csv") out << "field,value\n";
  for (const auto& [key, value] : doc.items()) {
    const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    if (format == "md") {
      out << "| " << key << " | " << text << " |\n";
    } else {
      out << key << ",\"";
      for (char c : text) out << (c == '"' ? std::string("\"\"") : std::string(1, c));
      out << "\"\n";
    }
  }
  return out.str();
}

struct EmitFlags {
  std::string encoding = "v1";
  std::size_t makespan = 0;
  bool asap = false;
  bool quadratic = false;
  std::optional<Cost> cost_bound;
  bool no_weak = false;
  std::string out;
  std::string out_dir;
};

int run_emit(const Instance& inst, const EmitFlags& f) {
  std::string text;
  std::string kind = f.encoding;
  bool layered = false;
  if (f.encoding == "v1" || f.encoding == "v2") {
    layered = true;
    const auto problem = inst.problem.has_preserving_actions() ? inst.problem : add_preserving_actions(inst.problem);
    const auto graph = PlanningGraph::build(problem);
    auto opts = f.encoding == "v1" ? EncodeOptions::variant_one() : EncodeOptions::variant_two();
    opts.mutex_style = f.quadratic ? MutexStyle::Quadratic : MutexStyle::Reduced;
    opts.asap_rule = f.asap;
    opts.cost_bound = f.cost_bound;
    opts.weak_constraints = !f.no_weak;
    text = emit_layered(problem, graph, f.makespan, opts).text;
  } else if (f.encoding == "stepless") {
    const auto problem = remove_preserving_actions(inst.problem);
    text = emit_stepless(problem, initial_bag(problem)).text;
  } else if (f.encoding == "dfp-forward" || f.encoding == "dfp-backward") {
    const auto dir = f.encoding == "dfp-forward" ? DeleteFreeDirection::Forward : DeleteFreeDirection::Backward;
    text = emit_delete_free(inst.problem, dir).text;
  } else if (f.encoding == "graph") {
    const auto problem = inst.problem.has_preserving_actions() ? inst.problem : add_preserving_actions(inst.problem);
    text = PlanningGraph::build(problem).to_json(problem);
  } else {
    throw UsageError("unknown encoding '" + f.encoding + "'");
  }
  if (!f.out_dir.empty()) {
    std::filesystem::create_directories(f.out_dir);
    std::string file = inst.name + "." + kind;
    if (layered) file += "." + std::to_string(f.makespan);
    file += f.encoding == "graph" ? ".json" : ".lp";
    const auto path = std::filesystem::path(f.out_dir) / file;
    write_output(path.string(), text);
    std::cerr << "wrote " << path.string() << "\n";
  } else {
    write_output(f.out, text);
  }
  return kExitOk;
}

int run_validate(const Instance& inst, const std::string& plan_file, const std::string& format) {
  const auto plan = load_plan_json(inst.problem, plan_file);
  const auto report = validate_plan(inst.problem, plan);
  json doc{{"instance", inst.name}, {"valid", report.valid}, {"cost", report.cost}, {"steps", plan.steps.size()}};
  if (!report.valid) {
    doc["failed_step"] = report.failed_step ? json(*report.failed_step) : json(nullptr);
    doc["reason"] = report.reason;
  }
  write_output("", render(doc, format));
  return report.valid ? kExitOk : kExitNoSolution;
}

json cut_names(const GroundProblem& problem, const PartialOrderPlan& pop, const oracle::Cut& cut) {
  json names = json::array();
  for (std::size_t i : cut) {
    const auto& occ = pop.occurrences().at(i);
    names.push_back(problem.action(occ.action).name + "#" + std::to_string(occ.index));
  }
  return names;
}

int run_oracle(const std::string& which, const Instance& inst, const std::string& plan_file, bool prefix,
               std::size_t max_nodes, const std::string& format) {
  json doc{{"instance", inst.name}};
  int code = kExitOk;
  if (which == "solve") {
    const auto best = oracle::optimal_cost_search(inst.problem, {max_nodes});
    doc["status"] = best ? "optimal" : "no_solution";
    if (best) {
      doc["cost"] = best->cost;
      doc["plan"] = plan_json(inst.problem, best->plan);
    }
    code = best ? kExitOk : kExitNoSolution;
  } else if (which == "dfp") {
    oracle::DeleteFreeOptions opts;
    opts.max_nodes = max_nodes;
    const auto cost = oracle::delete_free_optimal(inst.problem, opts);
    doc["status"] = cost ? "optimal" : "no_solution";
    if (cost) doc["cost"] = *cost;
    code = cost ? kExitOk : kExitNoSolution;
  } else {
    if (plan_file.empty()) throw UsageError("check-minimal needs --plan");
    const auto plan = load_plan_json(inst.problem, plan_file);
    const auto pop = canonical_partial_order(inst.problem, plan, !prefix);
    const auto result = oracle::is_strongly_minimal(inst.problem, pop);
    doc["strongly_minimal"] = result.strongly_minimal;
    doc["cost"] = plan_cost(inst.problem, plan);
    if (result.witness) {
      doc["witness"] = {{"x", cut_names(inst.problem, pop, result.witness->first)},
                        {"y", cut_names(inst.problem, pop, result.witness->second)}};
    }
    code = result.strongly_minimal ? kExitOk : kExitNoSolution;
  }
  write_output("", render(doc, format));
  return code;
}

int main_impl(int argc, char** argv) {
  CLI::App app{"Cost-optimal STRIPS planning with answer set programming"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "aspcost 0.1.0");

  SolverFlags solver_flags;
  std::string output = "json";
  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--solver-cmd", solver_flags.command,
                    "Solver command; {file} is replaced by the program path (default: $ASP_SOLVER, then clingo)");
    cmd->add_flag("--keep-files", solver_flags.keep_files, "Keep generated programs on disk");
    cmd->add_option("--work-dir", solver_flags.work_dir, "Directory for generated programs");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "csv", "md"}));
  };

  std::string problem_path;
  std::string domain_path;
  auto add_problem = [&](CLI::App* cmd) {
    cmd->add_option("problem", problem_path, "Problem file (.json or .pddl)")->required();
    cmd->add_option("--domain", domain_path, "PDDL domain file");
  };

  // solve
  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Find a cost-optimal plan");
  add_problem(solve);
  add_solver_flags(solve);
  add_output(solve);
  solve->add_option("--mode", solve_flags.mode, "Planner")
      ->check(CLI::IsMember({"layered", "two-threaded", "stepless", "delete-free"}));
  solve->add_option("--timeout", solve_flags.timeout, "Overall time limit in seconds");
  solve->add_option("--start-makespan", solve_flags.start_makespan, "First Variant-I makespan (two-threaded)");
  solve->add_flag("--asap", solve_flags.asap, "Add the as-soon-as-possible rule to Variant-II");
  solve->add_flag("--no-cost-bound", solve_flags.no_cost_bound, "Do not bound Variant-II by the best plan cost");
  solve->add_flag("--quadratic", solve_flags.quadratic, "Use explicit action mutex pairs");
  solve->add_option("--makespan", solve_flags.makespan, "Makespan (layered; default first goal layer)");
  solve->add_option("--variant", solve_flags.variant, "Layered program variant (1 or 2)");
  solve->add_option("--direction", solve_flags.direction, "Delete-free encoding")
      ->check(CLI::IsMember({"forward", "backward"}));
  solve->add_option("--max-iterations", solve_flags.max_iterations, "Stepless iteration limit");
  solve->add_flag("-v,--verbose", solve_flags.verbose, "Report progress on stderr");
  std::string plan_out;
  solve->add_option("--plan-out", plan_out, "Also write the plan as a JSON array");

  // emit
  EmitFlags emit_flags;
  auto* emit = app.add_subcommand("emit", "Print an encoding");
  add_problem(emit);
  emit->add_option("--encoding", emit_flags.encoding, "Program to emit")
      ->check(CLI::IsMember({"v1", "v2", "stepless", "dfp-forward", "dfp-backward", "graph"}));
  emit->add_option("--makespan", emit_flags.makespan, "Makespan for layered programs");
  emit->add_flag("--asap", emit_flags.asap, "Add the as-soon-as-possible rule (v2)");
  emit->add_flag("--quadratic", emit_flags.quadratic, "Use explicit action mutex pairs");
  emit->add_option("--cost-bound", emit_flags.cost_bound, "Reject plans costing this much or more");
  emit->add_flag("--no-weak", emit_flags.no_weak, "Omit the cost weak constraints");
  emit->add_option("-o,--out", emit_flags.out, "Output file (default stdout)");
  emit->add_option("--out-dir", emit_flags.out_dir, "Write <instance>.<encoding>.<makespan>.lp here");

  // validate
  std::string plan_path;
  auto* validate = app.add_subcommand("validate", "Check a sequential plan");
  add_problem(validate);
  validate->add_option("plan", plan_path, "Plan file (JSON array of action names)")->required();
  add_output(validate);

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference answers");
  oracle_cmd->require_subcommand(1);
  std::size_t max_nodes = 1'000'000;
  std::string oracle_plan;
  std::string oracle_which;
  bool oracle_prefix = false;
  for (const char* name : {"solve", "dfp", "check-minimal"}) {
    auto* sub = oracle_cmd->add_subcommand(name, name == std::string("solve")  ? "Uniform-cost search"
                                                 : name == std::string("dfp") ? "Exact delete-free optimum"
                                                                              : "Strong minimality of a plan");
    sub->add_option("--problem,problem", problem_path, "Problem file")->required();
    sub->add_option("--domain", domain_path, "PDDL domain file");
    sub->add_option("--max-nodes", max_nodes, "Search node cap");
    if (name == std::string("check-minimal")) {
      sub->add_option("--plan,plan", oracle_plan, "Plan file")->required();
      sub->add_flag("--prefix", oracle_prefix, "The plan need only be executable, not reach the goal");
    }
    add_output(sub);
    sub->callback([&oracle_which, name] { oracle_which = name; });
  }

  // bench
  BenchFlags bench_flags;
  std::string bench_dir;
  std::string bench_out;
  std::vector<std::string> bench_modes{"two-threaded", "stepless"};
  auto* bench = app.add_subcommand("bench", "Run every instance in a directory");
  bench->add_option("dir", bench_dir, "Instance directory")->required();
  add_solver_flags(bench);
  bench->add_option("--mode", bench_modes, "Planners to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"two-threaded", "stepless"}));
  bench->add_option("--timeout", bench_flags.timeout, "Per instance and planner, seconds");
  bench->add_option("--jobs", bench_flags.jobs, "Instances solved in parallel");
  bench->add_flag("--asap", bench_flags.asap, "Two-threaded with the as-soon-as-possible rule");
  bench->add_flag("-r,--recursive", bench_flags.recursive, "Descend into subdirectories");
  bench->add_flag("--oracle", bench_flags.oracle, "Cross-check costs with the brute-force oracle");
  bench->add_flag("-v,--verbose", bench_flags.verbose, "Report progress on stderr");
  std::string bench_format = "md";
  bench->add_option("--output", bench_format, "Report format")->check(CLI::IsMember({"json", "csv", "md"}));
  bench->add_option("-o,--out", bench_out, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (*solve) {
    const auto stop = install_interrupt_handler();
    const auto inst = load_instance(problem_path, domain_path);
    SolverDriver driver(make_solver_config(solver_flags));
    const auto report = run_solve(inst, driver, solve_flags, stop);
    if (!plan_out.empty() && report.doc.contains("plan") && report.doc["plan"].is_array()) {
      write_output(plan_out, report.doc["plan"].dump(2));
    }
    write_output("", render(report.doc, output));
    return report.exit_code;
  }
  if (*emit) return run_emit(load_instance(problem_path, domain_path), emit_flags);
  if (*validate) return run_validate(load_instance(problem_path, domain_path), plan_path, output);
  if (*oracle_cmd) {
    return run_oracle(oracle_which, load_instance(problem_path, domain_path), oracle_plan, oracle_prefix, max_nodes,
                      output);
  }
  if (*bench) {
    const auto stop = install_interrupt_handler();
    bench_flags.two_threaded = std::find(bench_modes.begin(), bench_modes.end(), "two-threaded") != bench_modes.end();
    bench_flags.stepless = std::find(bench_modes.begin(), bench_modes.end(), "stepless") != bench_modes.end();
    SolverDriver driver(make_solver_config(solver_flags));
    const auto rows = run_bench(bench_dir, driver, bench_flags, stop);
    const auto text = bench_format == "csv" ? report_csv(rows) : bench_format == "json" ? report_json(rows)
                                                                                        : report_markdown(rows);
    write_output(bench_out, text);
    return kExitOk;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace aspcost::cli

int main(int argc, char** argv) {
  using namespace aspcost;
  try {
    return cli::main_impl(argc, argv);
  } catch (const cli::UsageError& e) {
    std::cerr << "aspcost: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const SolverError& e) {
    std::cerr << "aspcost: solver error: " << e.what() << "\n";
    return cli::kExitSolverError;
  } catch (const ParseError& e) {
    std::cerr << "aspcost: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const InvalidProblem& e) {
    std::cerr << "aspcost: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const InvalidOptions& e) {
    std::cerr << "aspcost: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const UnsupportedRequirement& e) {
    std::cerr << "aspcost: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "aspcost: error: " << e.what() << "\n";
    return cli::kExitSolverError;
  }
}
