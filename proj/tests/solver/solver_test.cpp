#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cerrno>
#include <chrono>
#include <fstream>
#include <thread>

#include "aspcost/errors.hpp"
#include "aspcost/solver.hpp"
#include "test_support.hpp"

namespace aspcost {
namespace {

using namespace std::chrono_literals;

SolveRequest request(std::string program) {
  SolveRequest r;
  r.program = std::move(program);
  r.timeout = 60s;
  return r;
}

void expect_no_children() {
  errno = 0;
  EXPECT_EQ(::waitpid(-1, nullptr, WNOHANG), -1);
  EXPECT_EQ(errno, ECHILD);
}

// A stand-in solver that prints one model and then hangs, so cancellation can
// be exercised deterministically.
class FakeSolver : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / ("aspcost-fake-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    script_ = dir_ / "fake_solver.sh";
    std::ofstream out(script_);
    out << "#!/bin/sh\n"
           "if [ \"$FAKE_SILENT\" != 1 ]; then\n"
           "  echo 'Solving...'\n"
           "  echo 'Answer: 1'\n"
           "  echo 'happens(a,0) holds(p,1)'\n"
           "  echo 'Optimization: 7'\n"
           "fi\n"
           "sleep 30\n"
           "echo 'OPTIMUM FOUND'\n";
    out.close();
    std::filesystem::permissions(script_, std::filesystem::perms::owner_all);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  SolverDriver driver(const std::string& prefix = "") const {
    SolverConfig config;
    config.command = prefix + script_.string() + " {file}";
    config.kill_grace = 200ms;
    return SolverDriver(config);
  }

  std::filesystem::path dir_;
  std::filesystem::path script_;
};

TEST(SolverDriver, SatisfiableProgram) {
  SolverDriver driver(testing::solver_config());
  const auto r = driver.solve(request("a. b :- a. #show b/0."));
  EXPECT_EQ(r.status, SolveStatus::Sat);
  ASSERT_TRUE(r.has_model());
  ASSERT_EQ(r.best_model->size(), 1u);
  EXPECT_EQ(r.best_model->front().render(), "b");
  EXPECT_EQ(r.primary_cost(), 0);
  expect_no_children();
}

TEST(SolverDriver, UnsatisfiableProgram) {
  SolverDriver driver(testing::solver_config());
  const auto r = driver.solve(request("a. :- a."));
  EXPECT_EQ(r.status, SolveStatus::Unsat);
  EXPECT_FALSE(r.has_model());
  expect_no_children();
}

TEST(SolverDriver, OptimizationReportsOptimum) {
  SolverDriver driver(testing::solver_config());
  const auto r = driver.solve(request("{x(1..3)}. :- not x(1), not x(2). :~ x(N). [N@0,N] #show x/1."));
  EXPECT_EQ(r.status, SolveStatus::OptimumFound);
  ASSERT_TRUE(r.cost.has_value());
  EXPECT_EQ(r.primary_cost(), 1);
  EXPECT_EQ(r.best_model->front().render(), "x(1)");
}

TEST(SolverDriver, MultiLevelCostsHighestPriorityFirst) {
  SolverDriver driver(testing::solver_config());
  const auto r = driver.solve(request("{a;b}. :- not a, not b. :~ a. [5@0] :~ b. [3@0] :~ b. [1@1]"));
  ASSERT_TRUE(r.cost.has_value());
  EXPECT_EQ(*r.cost, (std::vector<std::int64_t>{0, 5}));
}

TEST(SolverDriver, SyntaxErrorIsSolverError) {
  SolverDriver driver(testing::solver_config());
  EXPECT_THROW(driver.solve(request("a :- b(.")), SolverError);
  expect_no_children();
}

TEST(SolverDriver, MissingExecutableIsSolverError) {
  SolverConfig config;
  config.command = "/nonexistent/solver-binary";
  SolverDriver driver(config);
  EXPECT_THROW(driver.solve(request("a.")), SolverError);
  expect_no_children();
}

TEST(SolverDriver, KeepsProgramFilesOnRequest) {
  auto config = testing::solver_config();
  config.keep_files = true;
  std::filesystem::path dir;
  {
    SolverDriver driver(config);
    dir = driver.work_dir();
    auto req = request("a.");
    req.name = "kept";
    const auto r = driver.solve(req);
    EXPECT_TRUE(std::filesystem::exists(r.program_file));
    EXPECT_EQ(r.program_file.parent_path(), dir);
  }
  EXPECT_TRUE(std::filesystem::exists(dir));
  std::filesystem::remove_all(dir);
}

TEST(SolverDriver, RemovesTemporaryDirectory) {
  std::filesystem::path dir;
  {
    SolverDriver driver(testing::solver_config());
    dir = driver.work_dir();
    driver.solve(request("a."));
  }
  EXPECT_FALSE(std::filesystem::exists(dir));
}

TEST(SolverDriver, ConcurrentSolves) {
  SolverDriver driver(testing::solver_config());
  std::vector<std::jthread> threads;
  std::vector<SolveStatus> statuses(4);
  for (std::size_t i = 0; i < statuses.size(); ++i) {
    threads.emplace_back([&, i] {
      statuses[i] = driver.solve(request(i % 2 ? "a. :- a." : "a.")).status;
    });
  }
  threads.clear();
  for (std::size_t i = 0; i < statuses.size(); ++i) {
    EXPECT_EQ(statuses[i], i % 2 ? SolveStatus::Unsat : SolveStatus::Sat);
  }
  expect_no_children();
}

TEST_F(FakeSolver, TimeoutKeepsIntermediateModel) {
  auto d = driver();
  auto req = request("a.");
  req.timeout = 1s;
  const auto start = std::chrono::steady_clock::now();
  const auto r = d.solve(req);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 10s);
  EXPECT_EQ(r.status, SolveStatus::Timeout);
  ASSERT_TRUE(r.has_model());
  EXPECT_EQ(r.primary_cost(), 7);
  EXPECT_EQ(r.best_model->size(), 2u);
  expect_no_children();
}

TEST_F(FakeSolver, CancelAfterFirstAnswer) {
  auto d = driver();
  SolveHandle handle(d, request("a."));
  std::this_thread::sleep_for(500ms);
  const auto start = std::chrono::steady_clock::now();
  handle.cancel();
  handle.cancel();
  const auto r = handle.wait();
  EXPECT_LT(std::chrono::steady_clock::now() - start, 10s);
  EXPECT_EQ(r.status, SolveStatus::Cancelled);
  EXPECT_TRUE(r.has_model());
  expect_no_children();
}

TEST_F(FakeSolver, CancelBeforeAnyModel) {
  auto d = driver("env FAKE_SILENT=1 ");
  SolveHandle handle(d, request("a."));
  std::this_thread::sleep_for(200ms);
  handle.cancel();
  const auto r = handle.wait();
  EXPECT_EQ(r.status, SolveStatus::Cancelled);
  EXPECT_FALSE(r.has_model());
  expect_no_children();
}

TEST_F(FakeSolver, CancelBeforeStart) {
  auto d = driver();
  std::stop_source source;
  source.request_stop();
  const auto r = d.solve(request("a."), source.get_token());
  EXPECT_EQ(r.status, SolveStatus::Cancelled);
  expect_no_children();
}

TEST_F(FakeSolver, HandleDestructorCancels) {
  auto d = driver();
  const auto start = std::chrono::steady_clock::now();
  { SolveHandle handle(d, request("a.")); }
  EXPECT_LT(std::chrono::steady_clock::now() - start, 10s);
  expect_no_children();
}

TEST(SolverOutputParser, ParsesTranscript) {
  SolverOutputParser parser;
  for (const char* line : {"clingo version 5.7.1", "Reading from prog.lp", "Solving...", "Answer: 1", "a b",
                           "Optimization: 9 2", "Answer: 2", "a", "Optimization: 4 2", "OPTIMUM FOUND", "",
                           "Models       : 2", "  Optimum    : yes"}) {
    parser.feed_line(line);
  }
  EXPECT_EQ(parser.final_status(), SolveStatus::OptimumFound);
  EXPECT_EQ(parser.models_seen(), 2u);
  ASSERT_TRUE(parser.best_model().has_value());
  EXPECT_EQ(parser.best_model()->size(), 1u);
  EXPECT_EQ(*parser.cost(), (std::vector<std::int64_t>{4, 2}));
}

TEST(SolverOutputParser, EmptyAnswerLine) {
  SolverOutputParser parser;
  for (const char* line : {"Answer: 1", "", "SATISFIABLE"}) parser.feed_line(line);
  EXPECT_TRUE(parser.saw_answer());
  EXPECT_TRUE(parser.best_model()->empty());
  EXPECT_EQ(parser.final_status(), SolveStatus::Sat);
}

TEST(SolverOutputParser, RejectsNonImprovingCosts) {
  SolverOutputParser parser;
  for (const char* line : {"Answer: 1", "a", "Optimization: 3"}) parser.feed_line(line);
  parser.feed_line("Answer: 2");
  parser.feed_line("b");
  EXPECT_THROW(parser.feed_line("Optimization: 5"), InvariantViolation);
}

TEST(SolverOutputParser, InterruptedAndUnknown) {
  SolverOutputParser parser;
  for (const char* line : {"*** Info : (clingo): INTERRUPTED by signal!", "UNKNOWN"}) parser.feed_line(line);
  EXPECT_TRUE(parser.interrupted());
  EXPECT_FALSE(parser.saw_answer());
}

}  // namespace
}  // namespace aspcost
