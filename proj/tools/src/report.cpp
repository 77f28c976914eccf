#include "report.hpp"

#include <cstdio>

#include <json.hpp>

namespace aspcost::cli {
namespace {

std::string seconds(const std::optional<double>& t) {
  if (!t) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *t);
  return buf;
}

template <typename T>
std::string number(const std::optional<T>& v) {
  return v ? std::to_string(*v) : "-";
}

std::string cost_cell(const BenchRow& r) {
  if (r.c_star) return std::to_string(*r.c_star);
  return r.no_solution ? "none" : "-";
}

std::string join_notes(const BenchRow& r) {
  std::string out;
  for (const auto& n : r.notes) {
    if (!out.empty()) out += "; ";
    out += n;
  }
  return out;
}

std::vector<std::string> cells(const BenchRow& r) {
  return {r.instance,        cost_cell(r),         number(r.n),          number(r.n_star),
          seconds(r.t_pi),   seconds(r.t_star),    seconds(r.t_two_threaded), number(r.n_s),
          seconds(r.t_stepless), seconds(r.l_s),   r.status_two_threaded, r.status_stepless,
          number(r.oracle_cost), join_notes(r)};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv(const std::vector<BenchRow>& rows) {
  std::string out =
      "instance,c_star,n,n_star,t_pi,t_star,t_two_threaded,n_s,t_stepless,l_s,status_two_threaded,"
      "status_stepless,oracle_cost,notes\n";
  for (const auto& r : rows) {
    const auto c = cells(r);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ',';
      out += csv_field(c[i] == "-" ? "" : c[i]);
    }
    out += '\n';
  }
  return out;
}

std::string report_markdown(const std::vector<BenchRow>& rows) {
  std::string out =
      "| Problem | C* | n | n* | t_pi | t* | t_2-threaded | n_s | t_stepless | l_s | 2-threaded | stepless | oracle "
      "| notes |\n"
      "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out += '|';
    for (const auto& c : cells(r)) {
      out += ' ';
      out += c.empty() ? "-" : c;
      out += " |";
    }
    out += '\n';
  }
  return out;
}

std::string report_json(const std::vector<BenchRow>& rows) {
  auto opt = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    doc.push_back({{"instance", r.instance},
                   {"c_star", opt(r.c_star)},
                   {"no_solution", r.no_solution},
                   {"n", opt(r.n)},
                   {"n_star", opt(r.n_star)},
                   {"t_pi", opt(r.t_pi)},
                   {"t_star", opt(r.t_star)},
                   {"t_two_threaded", opt(r.t_two_threaded)},
                   {"n_s", opt(r.n_s)},
                   {"t_stepless", opt(r.t_stepless)},
                   {"l_s", opt(r.l_s)},
                   {"status_two_threaded", r.status_two_threaded},
                   {"status_stepless", r.status_stepless},
                   {"oracle_cost", opt(r.oracle_cost)},
                   {"notes", r.notes}});
  }
  return doc.dump(2);
}

}  // namespace aspcost::cli
