#include "aspcost/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "aspcost/errors.hpp"

namespace aspcost {
namespace {

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::atomic<unsigned> g_program_counter{0};

class Pipe {
 public:
  Pipe() {
    if (::pipe2(fds_, O_CLOEXEC) != 0) throw SolverError(std::string("pipe: ") + std::strerror(errno), "");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  int read_end() const { return fds_[0]; }
  int write_end() const { return fds_[1]; }
  void close_read() {
    if (fds_[0] >= 0) ::close(fds_[0]);
    fds_[0] = -1;
  }
  void close_write() {
    if (fds_[1] >= 0) ::close(fds_[1]);
    fds_[1] = -1;
  }

 private:
  int fds_[2] = {-1, -1};
};

}  // namespace

const char* to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::OptimumFound: return "optimum";
    case SolveStatus::Unsat: return "unsat";
    case SolveStatus::Timeout: return "timeout";
    case SolveStatus::Cancelled: return "cancelled";
  }
  return "unknown";
}

std::int64_t SolveResult::primary_cost() const { return cost && !cost->empty() ? cost->front() : 0; }

void SolverOutputParser::feed_line(const std::string& raw) {
  if (expect_atoms_) {
    expect_atoms_ = false;
    try {
      best_model_ = parse_atom_line(raw);
    } catch (const ParseError& e) {
      throw MalformedModel(std::string("unparseable model line: ") + e.what());
    }
    cost_.reset();
    ++models_seen_;
    return;
  }
  const std::string line = trim(raw);
  if (in_summary_ || line.empty()) return;
  if (line.rfind("Answer:", 0) == 0) {
    expect_atoms_ = true;
  } else if (line.rfind("Optimization:", 0) == 0) {
    std::istringstream in(line.substr(13));
    std::vector<std::int64_t> values;
    for (std::int64_t v; in >> v;) values.push_back(v);
    if (last_cost_ && values >= *last_cost_) {
      throw InvariantViolation("solver reported a non-improving optimization value");
    }
    last_cost_ = values;
    cost_ = std::move(values);
  } else if (line == "OPTIMUM FOUND") {
    status_ = SolveStatus::OptimumFound;
  } else if (line == "UNSATISFIABLE") {
    status_ = SolveStatus::Unsat;
  } else if (line == "SATISFIABLE") {
    if (!status_) status_ = SolveStatus::Sat;
  } else if (line == "UNKNOWN") {
    status_.reset();
  } else if (line == "INTERRUPTED" || line.find("INTERRUPTED by signal") != std::string::npos) {
    interrupted_ = true;
  } else if (line.rfind("Models", 0) == 0) {
    in_summary_ = true;
  }
}

SolverDriver::SolverDriver(SolverConfig config) : config_(std::move(config)) {
  if (split_words(config_.command).empty()) throw InvalidOptions("empty solver command");
  if (config_.work_dir.empty()) {
    std::string tmpl = (std::filesystem::temp_directory_path() / "aspcost-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) {
      throw SolverError(std::string("cannot create work directory: ") + std::strerror(errno), "");
    }
    work_dir_ = tmpl;
    owns_work_dir_ = !config_.keep_files;
  } else {
    work_dir_ = config_.work_dir;
    std::filesystem::create_directories(work_dir_);
  }
}

SolverDriver::~SolverDriver() {
  if (owns_work_dir_) {
    std::error_code ec;
    std::filesystem::remove_all(work_dir_, ec);
  }
}

SolveResult SolverDriver::solve(const SolveRequest& request, std::stop_token stop) const {
  if (request.timeout.count() <= 0) throw InvalidOptions("solver timeout must be positive");
  const auto started = std::chrono::steady_clock::now();

  SolveResult result;
  result.program_file =
      work_dir_ / (request.name + "." + std::to_string(g_program_counter.fetch_add(1)) + ".lp");
  {
    std::ofstream out(result.program_file);
    out << request.program;
    if (!out) throw SolverError("cannot write " + result.program_file.string(), "");
  }

  std::vector<std::string> argv;
  bool substituted = false;
  for (auto& w : split_words(config_.command)) {
    if (auto pos = w.find("{file}"); pos != std::string::npos) {
      w.replace(pos, 6, result.program_file.string());
      substituted = true;
    }
    argv.push_back(std::move(w));
  }
  for (const auto& a : config_.default_args) argv.push_back(a);
  for (const auto& a : request.extra_args) argv.push_back(a);
  if (request.models_requested > 0) argv.push_back("--models=" + std::to_string(request.models_requested));
  if (!substituted) argv.push_back(result.program_file.string());

  std::vector<char*> cargv;
  for (auto& a : argv) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  Pipe out_pipe;
  Pipe err_pipe;
  const pid_t pid = ::fork();
  if (pid < 0) throw SolverError(std::string("fork: ") + std::strerror(errno), "");
  if (pid == 0) {
    ::setpgid(0, 0);
    // The parent may block signals for a watcher thread; the solver must not
    // inherit that, or the interrupt stage of the shutdown would be ignored.
    sigset_t none;
    ::sigemptyset(&none);
    ::sigprocmask(SIG_SETMASK, &none, nullptr);
    ::signal(SIGINT, SIG_DFL);
    ::signal(SIGTERM, SIG_DFL);
    ::dup2(out_pipe.write_end(), STDOUT_FILENO);
    ::dup2(err_pipe.write_end(), STDERR_FILENO);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::execvp(cargv[0], cargv.data());
    const char msg[] = "exec failed\n";
    [[maybe_unused]] auto n = ::write(STDERR_FILENO, msg, sizeof msg - 1);
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  out_pipe.close_write();
  err_pipe.close_write();

  SolverOutputParser parser;
  std::string out_buf;
  std::string err_text;
  bool out_open = true;
  bool err_open = true;
  bool timed_out = false;
  bool cancelled = false;
  int signal_stage = 0;  // 0 running, 1 interrupted, 2 terminated, 3 killed
  auto signal_time = std::chrono::steady_clock::now();
  const auto deadline = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(request.timeout);
  std::exception_ptr parse_error;

  auto escalate = [&] {
    const auto now = std::chrono::steady_clock::now();
    if (signal_stage == 0) {
      ::kill(-pid, SIGINT);
      signal_stage = 1;
      signal_time = now;
    } else if (now - signal_time >= config_.kill_grace) {
      ::kill(-pid, signal_stage == 1 ? SIGTERM : SIGKILL);
      signal_stage = std::min(signal_stage + 1, 3);
      signal_time = now;
    }
  };

  char buf[65536];
  while (out_open || err_open) {
    if (signal_stage == 0) {
      if (stop.stop_requested()) {
        cancelled = true;
        escalate();
      } else if (std::chrono::steady_clock::now() >= deadline) {
        timed_out = true;
        escalate();
      }
    } else {
      escalate();
    }
    pollfd fds[2];
    nfds_t n = 0;
    if (out_open) fds[n++] = {out_pipe.read_end(), POLLIN, 0};
    if (err_open) fds[n++] = {err_pipe.read_end(), POLLIN, 0};
    int rc = ::poll(fds, n, 50);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (nfds_t i = 0; i < n; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      ssize_t got = ::read(fds[i].fd, buf, sizeof buf);
      const bool is_out = fds[i].fd == out_pipe.read_end();
      if (got <= 0) {
        (is_out ? out_open : err_open) = false;
        continue;
      }
      if (!is_out) {
        err_text.append(buf, static_cast<std::size_t>(got));
        continue;
      }
      out_buf.append(buf, static_cast<std::size_t>(got));
      std::size_t pos;
      while ((pos = out_buf.find('\n')) != std::string::npos) {
        std::string line = out_buf.substr(0, pos);
        out_buf.erase(0, pos + 1);
        if (parse_error) continue;
        try {
          parser.feed_line(line);
        } catch (...) {
          parse_error = std::current_exception();
        }
      }
    }
  }
  if (!out_buf.empty() && !parse_error) {
    try {
      parser.feed_line(out_buf);
    } catch (...) {
      parse_error = std::current_exception();
    }
  }

  int wstatus = 0;
  while (::waitpid(pid, &wstatus, 0) < 0 && errno == EINTR) {
  }
  // Kill stragglers left in the process group.
  ::kill(-pid, SIGKILL);

  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (!config_.keep_files) {
    std::error_code ec;
    std::filesystem::remove(result.program_file, ec);
  }
  if (parse_error) std::rethrow_exception(parse_error);

  result.best_model = parser.best_model();
  result.cost = parser.cost();
  result.models_seen = parser.models_seen();
  if (timed_out || cancelled) {
    result.status = timed_out ? SolveStatus::Timeout : SolveStatus::Cancelled;
    // A solver that finished before noticing the signal still gives a verdict.
    if (parser.final_status() && !parser.interrupted()) result.status = *parser.final_status();
    return result;
  }
  const int exit_code = WIFEXITED(wstatus) ? WEXITSTATUS(wstatus) : 128 + WTERMSIG(wstatus);
  // Common ASP exit convention: bits 10 (sat), 20 (unsat), 30 (optimum), plus
  // 1 for interrupted and 64/65 for errors.
  const bool convention_ok = exit_code == 0 || exit_code == 10 || exit_code == 20 || exit_code == 30;
  if (!parser.final_status() || !convention_ok) {
    std::ostringstream msg;
    msg << "solver '" << config_.command << "' exited with code " << exit_code;
    if (!parser.final_status()) msg << " without a verdict";
    throw SolverError(msg.str(), err_text);
  }
  result.status = *parser.final_status();
  if (result.status == SolveStatus::Unsat) {
    result.best_model.reset();
    result.cost.reset();
  }
  return result;
}

struct SolveHandle::State {
  std::stop_source stop;
  std::mutex mutex;
  std::optional<SolveResult> result;
  std::exception_ptr error;
  std::thread worker;
};

SolveHandle::SolveHandle(const SolverDriver& driver, SolveRequest request) : state_(std::make_shared<State>()) {
  auto token = state_->stop.get_token();
  state_->worker = std::thread([state = state_, &driver, req = std::move(request), token] {
    try {
      auto r = driver.solve(req, token);
      std::lock_guard lock(state->mutex);
      state->result = std::move(r);
    } catch (...) {
      std::lock_guard lock(state->mutex);
      state->error = std::current_exception();
    }
  });
}

SolveHandle::~SolveHandle() {
  if (state_->worker.joinable()) {
    state_->stop.request_stop();
    state_->worker.join();
  }
}

void SolveHandle::cancel() noexcept { state_->stop.request_stop(); }

SolveResult SolveHandle::wait() {
  if (state_->worker.joinable()) state_->worker.join();
  std::lock_guard lock(state_->mutex);
  if (state_->error) std::rethrow_exception(state_->error);
  if (!state_->result) throw SolverError("solve produced no result", "");
  return *state_->result;
}

}  // namespace aspcost
