#include "aspcost/problem_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aspcost/errors.hpp"
#include "aspcost/term.hpp"

namespace aspcost {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> name_list(const json& node, const char* field) {
  std::vector<std::string> out;
  if (node.is_null()) return out;
  if (!node.is_array()) throw ParseError(std::string("\"") + field + "\" must be an array");
  for (const auto& item : node) {
    if (!item.is_string()) {
      throw ParseError(std::string("\"") + field + "\" must contain strings");
    }
    out.push_back(canonical_term_name(item.get<std::string>()));
  }
  return out;
}

const json& field_or_null(const json& obj, const char* key) {
  static const json null_value;
  auto it = obj.find(key);
  return it == obj.end() ? null_value : *it;
}

}  // namespace

GroundProblem parse_problem_json(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("problem JSON must be an object");

  struct RawAction {
    std::string name;
    std::vector<std::string> pre, pre_neg, add, del;
    Cost cost = 1;
  };
  std::vector<RawAction> raw_actions;
  const json& actions = field_or_null(doc, "actions");
  if (!actions.is_null() && !actions.is_array()) throw ParseError("\"actions\" must be an array");
  if (actions.is_array()) {
    for (const auto& a : actions) {
      if (!a.is_object()) throw ParseError("each action must be an object");
      RawAction ra;
      const json& name = field_or_null(a, "name");
      if (!name.is_string()) throw ParseError("action without a \"name\"");
      ra.name = canonical_term_name(name.get<std::string>());
      ra.pre = name_list(field_or_null(a, "pre"), "pre");
      ra.pre_neg = name_list(field_or_null(a, "pre_neg"), "pre_neg");
      ra.add = name_list(field_or_null(a, "add"), "add");
      ra.del = name_list(field_or_null(a, "del"), "del");
      const json& cost = field_or_null(a, "cost");
      if (!cost.is_null()) {
        if (!cost.is_number_integer()) throw ParseError("action cost must be an integer");
        ra.cost = cost.get<Cost>();
        if (ra.cost < 0) throw InvalidProblem("action " + ra.name + " has negative cost");
      }
      raw_actions.push_back(std::move(ra));
    }
  }

  const auto init = name_list(field_or_null(doc, "init"), "init");
  const auto goal = name_list(field_or_null(doc, "goal"), "goal");
  const auto goal_neg = name_list(field_or_null(doc, "goal_neg"), "goal_neg");

  std::vector<std::string> fluents;
  if (doc.contains("fluents")) {
    fluents = name_list(doc["fluents"], "fluents");
  } else {
    std::set<std::string> seen;
    auto collect = [&seen](const std::vector<std::string>& names) {
      seen.insert(names.begin(), names.end());
    };
    collect(init);
    collect(goal);
    collect(goal_neg);
    for (const auto& a : raw_actions) {
      collect(a.pre);
      collect(a.pre_neg);
      collect(a.add);
      collect(a.del);
    }
    fluents.assign(seen.begin(), seen.end());
  }

  std::map<std::string, FluentId> index;
  for (std::size_t i = 0; i < fluents.size(); ++i) {
    if (!index.emplace(fluents[i], static_cast<FluentId>(i)).second) {
      throw InvalidProblem("duplicate fluent " + fluents[i]);
    }
  }
  auto ids = [&index](const std::vector<std::string>& names) {
    std::vector<FluentId> out;
    for (const auto& n : names) {
      auto it = index.find(n);
      if (it == index.end()) throw InvalidProblem("undeclared fluent " + n);
      out.push_back(it->second);
    }
    return make_fluent_set(std::move(out));
  };

  LiteralProblem lp;
  lp.fluents = fluents;
  lp.init = ids(init);
  lp.goal = ids(goal);
  lp.goal_negative = ids(goal_neg);
  for (const auto& ra : raw_actions) {
    LiteralAction la;
    la.name = ra.name;
    la.pre = ids(ra.pre);
    la.pre_negative = ids(ra.pre_neg);
    la.add = ids(ra.add);
    la.del = ids(ra.del);
    la.cost = ra.cost;
    lp.actions.push_back(std::move(la));
  }
  return compile_negative_preconditions(lp);
}

GroundProblem load_problem_json(const std::filesystem::path& path) {
  return parse_problem_json(read_text_file(path));
}

std::string problem_to_json(const GroundProblem& problem, int indent) {
  auto names = [&problem](const FluentSet& s) {
    json arr = json::array();
    for (FluentId f : s) arr.push_back(problem.fluent_name(f));
    return arr;
  };
  json doc;
  doc["fluents"] = problem.fluents();
  json actions = json::array();
  for (const auto& a : problem.actions()) {
    if (a.preserving) continue;
    actions.push_back({{"name", a.name},
                       {"pre", names(a.pre)},
                       {"add", names(a.add)},
                       {"del", names(a.del)},
                       {"cost", a.cost}});
  }
  doc["actions"] = std::move(actions);
  doc["init"] = names(problem.init());
  doc["goal"] = names(problem.goal());
  return doc.dump(indent);
}

SequentialPlan parse_plan_json(const GroundProblem& problem, std::string_view text) {
  json doc = parse_json(text);
  if (doc.is_object()) {
    if (!doc.contains("plan")) throw ParseError("plan JSON object needs a \"plan\" array");
    doc = doc["plan"];
  }
  if (!doc.is_array()) throw ParseError("plan must be a JSON array of action names");
  SequentialPlan plan;
  for (const auto& item : doc) {
    if (!item.is_string()) throw ParseError("plan entries must be strings");
    const auto name = canonical_term_name(item.get<std::string>());
    auto id = problem.find_action(name);
    if (!id) throw InvalidPlan("unknown action " + name);
    plan.steps.push_back(*id);
  }
  return plan;
}

SequentialPlan load_plan_json(const GroundProblem& problem, const std::filesystem::path& path) {
  return parse_plan_json(problem, read_text_file(path));
}

std::string plan_to_json(const GroundProblem& problem, const SequentialPlan& plan) {
  return json(plan_action_names(problem, plan)).dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace aspcost
