#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include "aspcost/asp_codegen.hpp"
#include "aspcost/oracle.hpp"
#include "aspcost/pddl.hpp"
#include "aspcost/plangraph.hpp"
#include "aspcost/problem_io.hpp"
#include "aspcost/solver.hpp"
#include "aspcost/stepless.hpp"

namespace {

using namespace aspcost;

const std::filesystem::path kData{ASPCOST_BENCH_DATA_DIR};

const GroundProblem& bridge6() {
  static const GroundProblem problem = load_problem_json(kData / "bridge/bridge6.json");
  return problem;
}

const GroundProblem& gripper() {
  static const GroundProblem problem =
      pddl::load_pddl(kData / "gripper/domain.pddl", kData / "gripper/p01.pddl");
  return problem;
}

void BM_GroundGripper(benchmark::State& state) {
  const auto domain_text = read_text_file(kData / "gripper/domain.pddl");
  const auto problem_text = read_text_file(kData / "gripper/p01.pddl");
  for (auto _ : state) {
    auto problem = pddl::ground(pddl::parse_domain(domain_text), pddl::parse_problem(problem_text));
    benchmark::DoNotOptimize(problem);
  }
}
BENCHMARK(BM_GroundGripper);

void BM_PlanningGraphBridge(benchmark::State& state) {
  for (auto _ : state) {
    auto graph = PlanningGraph::build(bridge6());
    benchmark::DoNotOptimize(graph);
  }
}
BENCHMARK(BM_PlanningGraphBridge);

void BM_PlanningGraphGripper(benchmark::State& state) {
  for (auto _ : state) {
    auto graph = PlanningGraph::build(gripper());
    benchmark::DoNotOptimize(graph);
  }
}
BENCHMARK(BM_PlanningGraphGripper);

void BM_EmitVariantTwo(benchmark::State& state) {
  const auto graph = PlanningGraph::build(gripper());
  const auto makespan = static_cast<std::size_t>(state.range(0));
  std::size_t bytes = 0;
  for (auto _ : state) {
    auto program = emit_layered(gripper(), graph, makespan, EncodeOptions::variant_two());
    bytes = program.text.size();
    benchmark::DoNotOptimize(program);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
}
BENCHMARK(BM_EmitVariantTwo)->Arg(2)->Arg(7);

void BM_EmitStepless(benchmark::State& state) {
  const auto bag = initial_bag(bridge6());
  for (auto _ : state) {
    auto program = emit_stepless(bridge6(), bag);
    benchmark::DoNotOptimize(program);
  }
}
BENCHMARK(BM_EmitStepless);

void BM_OracleBridge(benchmark::State& state) {
  for (auto _ : state) {
    auto solution = oracle::optimal_cost_search(bridge6());
    benchmark::DoNotOptimize(solution);
  }
}
BENCHMARK(BM_OracleBridge)->Unit(benchmark::kMillisecond);

void BM_DeleteFreeOracleBridge(benchmark::State& state) {
  for (auto _ : state) {
    auto cost = oracle::delete_free_optimal(bridge6());
    benchmark::DoNotOptimize(cost);
  }
}
BENCHMARK(BM_DeleteFreeOracleBridge)->Unit(benchmark::kMillisecond);

void BM_ParseSolverTranscript(benchmark::State& state) {
  std::string atoms;
  for (int i = 0; i < 200; ++i) {
    atoms += "happens(move(r" + std::to_string(i % 7) + ",b" + std::to_string(i) + ")," +
             std::to_string(i % 9) + ") ";
  }
  const int answers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SolverOutputParser parser;
    parser.feed_line("clingo version 5.6.2");
    for (int i = 0; i < answers; ++i) {
      parser.feed_line("Answer: " + std::to_string(i + 1));
      parser.feed_line(atoms);
      parser.feed_line("Optimization: " + std::to_string(1000 - i));
    }
    parser.feed_line("OPTIMUM FOUND");
    benchmark::DoNotOptimize(parser.best_model());
  }
}
BENCHMARK(BM_ParseSolverTranscript)->Arg(1)->Arg(20);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
