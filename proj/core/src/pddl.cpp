#include "aspcost/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "aspcost/errors.hpp"
#include "aspcost/problem_io.hpp"
#include "aspcost/term.hpp"

namespace aspcost::pddl {
namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 0;
  std::size_t column = 0;

  bool is_atom(std::string_view s) const { return !is_list && atom == s; }
  bool head_is(std::string_view s) const {
    return is_list && !items.empty() && items.front().is_atom(s);
  }
};

[[noreturn]] void fail(const std::string& what, const SExpr& at) {
  throw ParseError(what, at.line, at.column);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_document() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty PDDL input");
    SExpr doc = read();
    skip_space();
    if (pos_ < text_.size()) throw ParseError("trailing input after definition", line_, column_);
    return doc;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_, column_);
    SExpr node;
    node.line = line_;
    node.column = column_;
    if (text_[pos_] == '(') {
      node.is_list = true;
      advance();
      for (;;) {
        skip_space();
        if (pos_ >= text_.size()) {
          throw ParseError("unbalanced '('", node.line, node.column);
        }
        if (text_[pos_] == ')') {
          advance();
          return node;
        }
        node.items.push_back(read());
      }
    }
    if (text_[pos_] == ')') throw ParseError("unexpected ')'", line_, column_);
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
      node.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      advance();
    }
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

const std::set<std::string> kSupportedRequirements = {":strips", ":typing", ":action-costs"};

void check_requirements(const SExpr& section, std::vector<std::string>& out) {
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const auto& r = section.items[i];
    if (r.is_list) fail("malformed requirement", r);
    if (!kSupportedRequirements.count(r.atom)) throw UnsupportedRequirement(r.atom);
    out.push_back(r.atom);
  }
}

const SExpr& expect_list(const SExpr& e, const char* what) {
  if (!e.is_list) fail(std::string("expected ") + what, e);
  return e;
}

const std::string& expect_symbol(const SExpr& e, const char* what) {
  if (e.is_list || e.atom.empty()) fail(std::string("expected ") + what, e);
  return e.atom;
}

std::vector<TypedName> parse_typed_list(const std::vector<SExpr>& items, std::size_t begin) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const auto& it = items[i];
    if (it.is_atom("-")) {
      if (i + 1 >= items.size()) fail("missing type after '-'", it);
      const auto& type = items[i + 1];
      if (type.head_is("either")) fail("'either' types are not supported", type);
      const auto& t = expect_symbol(type, "type name");
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = t;
      pending = 0;
      ++i;
      continue;
    }
    out.push_back(TypedName{expect_symbol(it, "name"), "object"});
    ++pending;
  }
  return out;
}

PredicateDecl parse_predicate_decl(const SExpr& e) {
  expect_list(e, "predicate declaration");
  if (e.items.empty()) fail("empty predicate declaration", e);
  PredicateDecl decl;
  decl.name = expect_symbol(e.items[0], "predicate name");
  decl.parameters = parse_typed_list(e.items, 1);
  return decl;
}

struct Scope {
  const std::map<std::string, std::size_t>* predicate_arity = nullptr;
  const std::set<std::string>* variables = nullptr;
};

Atom parse_atom(const SExpr& e, const Scope& scope, const char* what) {
  expect_list(e, what);
  if (e.items.empty()) fail(std::string("empty ") + what, e);
  Atom atom;
  atom.predicate = expect_symbol(e.items[0], "predicate name");
  if (atom.predicate == "=") throw UnsupportedRequirement(":equality");
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const auto& arg = expect_symbol(e.items[i], "argument");
    if (arg.front() == '?' && scope.variables && !scope.variables->count(arg)) {
      fail("unbound variable " + arg, e.items[i]);
    }
    atom.args.push_back(arg);
  }
  if (scope.predicate_arity) {
    auto it = scope.predicate_arity->find(atom.predicate);
    if (it == scope.predicate_arity->end()) fail("undeclared predicate " + atom.predicate, e);
    if (it->second != atom.args.size()) fail("wrong arity for " + atom.predicate, e);
  }
  return atom;
}

void unsupported_connective(const SExpr& e) {
  const auto& head = e.items.front().atom;
  if (head == "not") throw UnsupportedRequirement(":negative-preconditions");
  if (head == "or" || head == "imply") throw UnsupportedRequirement(":disjunctive-preconditions");
  if (head == "exists") throw UnsupportedRequirement(":existential-preconditions");
  if (head == "forall") throw UnsupportedRequirement(":universal-preconditions");
  if (head == "=") throw UnsupportedRequirement(":equality");
}

void parse_goal_description(const SExpr& e, const Scope& scope, std::vector<Atom>& out) {
  expect_list(e, "condition");
  if (e.items.empty()) return;
  if (e.head_is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) parse_goal_description(e.items[i], scope, out);
    return;
  }
  if (!e.items.front().is_list) unsupported_connective(e);
  out.push_back(parse_atom(e, scope, "condition"));
}

void parse_effect(const SExpr& e, const Scope& scope, ActionSchema& action) {
  expect_list(e, "effect");
  if (e.items.empty()) return;
  if (e.head_is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) parse_effect(e.items[i], scope, action);
    return;
  }
  if (e.head_is("not")) {
    if (e.items.size() != 2) fail("malformed delete effect", e);
    action.del.push_back(parse_atom(e.items[1], scope, "delete effect"));
    return;
  }
  if (e.head_is("when") || e.head_is("forall")) throw UnsupportedRequirement(":conditional-effects");
  if (e.head_is("decrease") || e.head_is("assign") || e.head_is("scale-up") ||
      e.head_is("scale-down")) {
    throw UnsupportedRequirement(":numeric-fluents");
  }
  if (e.head_is("increase")) {
    if (e.items.size() != 3) fail("malformed increase effect", e);
    const auto& target = e.items[1];
    if (!target.is_list || target.items.size() != 1 || !target.items[0].is_atom("total-cost")) {
      throw UnsupportedRequirement(":numeric-fluents");
    }
    if (action.cost.kind != CostExpr::Kind::None) fail("more than one cost increase", e);
    const auto& amount = e.items[2];
    if (amount.is_list) {
      if (amount.items.empty()) fail("empty cost expression", amount);
      action.cost.kind = CostExpr::Kind::Function;
      action.cost.function.predicate = expect_symbol(amount.items[0], "function name");
      for (std::size_t i = 1; i < amount.items.size(); ++i) {
        const auto& arg = expect_symbol(amount.items[i], "argument");
        if (arg.front() == '?' && !scope.variables->count(arg)) {
          fail("unbound variable " + arg, amount.items[i]);
        }
        action.cost.function.args.push_back(arg);
      }
    } else {
      try {
        action.cost.kind = CostExpr::Kind::Constant;
        std::size_t used = 0;
        action.cost.constant = std::stoll(amount.atom, &used);
        if (used != amount.atom.size()) throw std::invalid_argument("trailing");
      } catch (const std::logic_error&) {
        fail("action costs must be integers", amount);
      }
    }
    return;
  }
  if (!e.items.front().is_list) unsupported_connective(e);
  action.add.push_back(parse_atom(e, scope, "effect"));
}

ActionSchema parse_action(const SExpr& e, const std::map<std::string, std::size_t>& arity) {
  if (e.items.size() < 2) fail("action without a name", e);
  ActionSchema action;
  action.name = expect_symbol(e.items[1], "action name");
  std::set<std::string> variables;
  const SExpr* precondition = nullptr;
  const SExpr* effect = nullptr;
  for (std::size_t i = 2; i < e.items.size(); i += 2) {
    const auto& key = e.items[i];
    if (i + 1 >= e.items.size()) fail("missing value for " + key.atom, key);
    const auto& value = e.items[i + 1];
    if (key.is_atom(":parameters")) {
      action.parameters = parse_typed_list(expect_list(value, "parameter list").items, 0);
      for (const auto& p : action.parameters) {
        if (p.name.front() != '?') fail("parameter names must start with '?'", value);
        variables.insert(p.name);
      }
    } else if (key.is_atom(":precondition")) {
      precondition = &value;
    } else if (key.is_atom(":effect")) {
      effect = &value;
    } else {
      fail("unknown action field " + key.atom, key);
    }
  }
  Scope scope{&arity, &variables};
  if (precondition) parse_goal_description(*precondition, scope, action.precondition);
  if (effect) parse_effect(*effect, scope, action);
  return action;
}

}  // namespace

DomainAst parse_domain(std::string_view text) {
  const SExpr doc = Reader(text).read_document();
  if (!doc.head_is("define") || doc.items.size() < 2 || !doc.items[1].head_is("domain") ||
      doc.items[1].items.size() != 2) {
    fail("expected (define (domain NAME) ...)", doc);
  }
  DomainAst domain;
  domain.name = expect_symbol(doc.items[1].items[1], "domain name");

  std::vector<const SExpr*> action_sections;
  for (std::size_t i = 2; i < doc.items.size(); ++i) {
    const auto& section = expect_list(doc.items[i], "domain section");
    if (section.items.empty()) fail("empty section", section);
    const auto& key = section.items[0].atom;
    if (key == ":requirements") {
      check_requirements(section, domain.requirements);
    } else if (key == ":types") {
      for (const auto& t : parse_typed_list(section.items, 1)) {
        domain.types.emplace_back(t.name, t.type);
      }
    } else if (key == ":constants") {
      domain.constants = parse_typed_list(section.items, 1);
    } else if (key == ":predicates") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        domain.predicates.push_back(parse_predicate_decl(section.items[k]));
      }
    } else if (key == ":functions") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const auto& item = section.items[k];
        if (item.is_atom("-")) {
          ++k;
          continue;
        }
        domain.functions.push_back(parse_predicate_decl(item));
      }
    } else if (key == ":action") {
      action_sections.push_back(&section);
    } else if (key == ":derived") {
      throw UnsupportedRequirement(":derived-predicates");
    } else if (key == ":durative-action") {
      throw UnsupportedRequirement(":durative-actions");
    } else {
      fail("unknown domain section " + key, section);
    }
  }

  std::map<std::string, std::size_t> arity;
  for (const auto& p : domain.predicates) {
    if (!arity.emplace(p.name, p.parameters.size()).second) {
      throw ParseError("predicate " + p.name + " declared twice");
    }
  }
  for (const auto* section : action_sections) {
    domain.actions.push_back(parse_action(*section, arity));
  }
  return domain;
}

ProblemAst parse_problem(std::string_view text) {
  const SExpr doc = Reader(text).read_document();
  if (!doc.head_is("define") || doc.items.size() < 2 || !doc.items[1].head_is("problem") ||
      doc.items[1].items.size() != 2) {
    fail("expected (define (problem NAME) ...)", doc);
  }
  ProblemAst problem;
  problem.name = expect_symbol(doc.items[1].items[1], "problem name");
  bool saw_goal = false;
  const Scope no_scope{};
  for (std::size_t i = 2; i < doc.items.size(); ++i) {
    const auto& section = expect_list(doc.items[i], "problem section");
    if (section.items.empty()) fail("empty section", section);
    const auto& key = section.items[0].atom;
    if (key == ":domain") {
      if (section.items.size() != 2) fail("malformed :domain", section);
      problem.domain = expect_symbol(section.items[1], "domain name");
    } else if (key == ":requirements") {
      std::vector<std::string> ignored;
      check_requirements(section, ignored);
    } else if (key == ":objects") {
      problem.objects = parse_typed_list(section.items, 1);
    } else if (key == ":init") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const auto& fact = section.items[k];
        if (fact.head_is("=")) {
          if (fact.items.size() != 3) fail("malformed numeric fact", fact);
          NumericFact nf;
          nf.function = parse_atom(fact.items[1], no_scope, "function term");
          const auto& value = expect_symbol(fact.items[2], "number");
          try {
            std::size_t used = 0;
            nf.value = std::stoll(value, &used);
            if (used != value.size()) throw std::invalid_argument("trailing");
          } catch (const std::logic_error&) {
            fail("numeric values must be integers", fact.items[2]);
          }
          if (nf.function.predicate != "total-cost") problem.numeric_init.push_back(nf);
          continue;
        }
        problem.init.push_back(parse_atom(fact, no_scope, "initial fact"));
      }
    } else if (key == ":goal") {
      if (section.items.size() != 2) fail("malformed :goal", section);
      parse_goal_description(section.items[1], no_scope, problem.goal);
      if (problem.goal.empty()) fail("empty goal", section);
      saw_goal = true;
    } else if (key == ":metric") {
      if (section.items.size() != 3 || !section.items[1].is_atom("minimize") ||
          !section.items[2].is_list || section.items[2].items.size() != 1 ||
          !section.items[2].items[0].is_atom("total-cost")) {
        fail("only (:metric minimize (total-cost)) is supported", section);
      }
      problem.minimize_total_cost = true;
    } else {
      fail("unknown problem section " + key, section);
    }
  }
  if (!saw_goal) fail("problem has no goal", doc);
  return problem;
}

namespace {

/// Maps PDDL symbols to solver spelling and refuses collisions such as
/// "a-b" and "a_b".
class NameTable {
 public:
  const std::string& canonical(const std::string& symbol) {
    auto it = cache_.find(symbol);
    if (it != cache_.end()) return it->second;
    std::string c = canonical_term_name(symbol);
    auto [owner, inserted] = owners_.emplace(c, symbol);
    if (!inserted && owner->second != symbol) {
      throw InvalidProblem("names " + owner->second + " and " + symbol + " collide as " + c);
    }
    return cache_.emplace(symbol, std::move(c)).first->second;
  }

 private:
  std::unordered_map<std::string, std::string> cache_;
  std::unordered_map<std::string, std::string> owners_;
};

std::string render(NameTable& names, const std::string& head,
                   const std::vector<const std::string*>& args) {
  std::string out = names.canonical(head);
  if (args.empty()) return out;
  out.push_back('(');
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out.push_back(',');
    out += names.canonical(*args[i]);
  }
  out.push_back(')');
  return out;
}

struct RawGroundAction {
  std::string name;
  std::vector<std::string> pre, add, del;
  Cost cost = 0;
};

}  // namespace

GroundProblem ground(const DomainAst& domain, const ProblemAst& problem,
                     const GroundOptions& options) {
  NameTable names;

  std::map<std::string, std::string> parent{{"object", ""}};
  for (const auto& [type, super] : domain.types) parent[type] = super;
  for (const auto& [type, super] : domain.types) {
    if (!parent.count(super)) throw InvalidProblem("unknown supertype " + super);
  }
  std::map<std::string, std::vector<std::string>> objects_of_type;
  std::set<std::string> all_objects;
  auto add_object = [&](const TypedName& obj) {
    if (!parent.count(obj.type)) throw InvalidProblem("object " + obj.name + " has unknown type " + obj.type);
    if (!all_objects.insert(obj.name).second) return;
    std::set<std::string> visited;
    for (std::string t = obj.type; !t.empty() && visited.insert(t).second; t = parent[t]) {
      objects_of_type[t].push_back(obj.name);
    }
    if (!visited.count("object")) objects_of_type["object"].push_back(obj.name);
  };
  for (const auto& c : domain.constants) add_object(c);
  for (const auto& o : problem.objects) add_object(o);
  for (auto& [t, objs] : objects_of_type) std::sort(objs.begin(), objs.end());

  std::map<std::string, std::size_t> arity;
  for (const auto& p : domain.predicates) arity[p.name] = p.parameters.size();
  std::set<std::string> dynamic_predicates;
  for (const auto& a : domain.actions) {
    for (const auto& atom : a.add) dynamic_predicates.insert(atom.predicate);
    for (const auto& atom : a.del) dynamic_predicates.insert(atom.predicate);
  }

  auto check_fact = [&](const Atom& atom, const char* where) {
    auto it = arity.find(atom.predicate);
    if (it == arity.end()) throw InvalidProblem(std::string(where) + " uses undeclared predicate " + atom.predicate);
    if (it->second != atom.args.size()) throw InvalidProblem(std::string(where) + " uses " + atom.predicate + " with wrong arity");
    for (const auto& arg : atom.args) {
      if (!all_objects.count(arg)) throw InvalidProblem(std::string(where) + " mentions unknown object " + arg);
    }
  };

  auto render_ground = [&](const Atom& atom) {
    std::vector<const std::string*> args;
    for (const auto& a : atom.args) args.push_back(&a);
    return render(names, atom.predicate, args);
  };

  std::unordered_set<std::string> static_true;
  std::vector<std::string> dynamic_init;
  for (const auto& fact : problem.init) {
    check_fact(fact, "init");
    auto rendered = render_ground(fact);
    if (dynamic_predicates.count(fact.predicate)) {
      dynamic_init.push_back(std::move(rendered));
    } else {
      static_true.insert(std::move(rendered));
    }
  }
  std::unordered_map<std::string, std::int64_t> numeric;
  for (const auto& nf : problem.numeric_init) {
    std::vector<const std::string*> args;
    for (const auto& a : nf.function.args) args.push_back(&a);
    numeric[render(names, nf.function.predicate, args)] = nf.value;
  }

  std::vector<RawGroundAction> raw;
  const std::size_t binding_cap = options.max_actions * 64 + 1024;
  std::size_t bindings_seen = 0;

  for (const auto& schema : domain.actions) {
    std::map<std::string, std::size_t> var_index;
    std::vector<const std::vector<std::string>*> domains;
    static const std::vector<std::string> kNone;
    for (const auto& p : schema.parameters) {
      var_index[p.name] = domains.size();
      if (!parent.count(p.type)) throw InvalidProblem("parameter " + p.name + " has unknown type " + p.type);
      auto it = objects_of_type.find(p.type);
      domains.push_back(it == objects_of_type.end() ? &kNone : &it->second);
    }
    auto resolve_arg = [&](const std::string& arg, const std::vector<const std::string*>& binding)
        -> const std::string* {
      if (arg.front() == '?') return binding[var_index.at(arg)];
      if (!all_objects.count(arg)) throw InvalidProblem("action " + schema.name + " mentions unknown constant " + arg);
      return &arg;
    };
    // Static preconditions are checked as soon as their last variable is bound.
    std::vector<std::vector<const Atom*>> static_at_depth(schema.parameters.size() + 1);
    std::vector<const Atom*> dynamic_pre;
    for (const auto& atom : schema.precondition) {
      if (dynamic_predicates.count(atom.predicate)) {
        dynamic_pre.push_back(&atom);
        continue;
      }
      std::size_t depth = 0;
      for (const auto& arg : atom.args) {
        if (arg.front() == '?') depth = std::max(depth, var_index.at(arg) + 1);
      }
      static_at_depth[depth].push_back(&atom);
    }

    std::vector<const std::string*> binding(schema.parameters.size(), nullptr);
    auto statics_hold = [&](std::size_t depth) {
      for (const Atom* atom : static_at_depth[depth]) {
        std::vector<const std::string*> args;
        for (const auto& arg : atom->args) args.push_back(resolve_arg(arg, binding));
        if (!static_true.count(render(names, atom->predicate, args))) return false;
      }
      return true;
    };
    auto instantiate = [&](const Atom& atom) {
      std::vector<const std::string*> args;
      for (const auto& arg : atom.args) args.push_back(resolve_arg(arg, binding));
      return render(names, atom.predicate, args);
    };
    auto emit = [&]() {
      RawGroundAction g;
      std::vector<const std::string*> args(binding.begin(), binding.end());
      g.name = render(names, schema.name, args);
      for (const Atom* atom : dynamic_pre) g.pre.push_back(instantiate(*atom));
      for (const auto& atom : schema.add) g.add.push_back(instantiate(atom));
      for (const auto& atom : schema.del) g.del.push_back(instantiate(atom));
      if (!problem.minimize_total_cost) {
        g.cost = 1;
      } else if (schema.cost.kind == CostExpr::Kind::Constant) {
        g.cost = schema.cost.constant;
      } else if (schema.cost.kind == CostExpr::Kind::Function) {
        const auto key = instantiate(schema.cost.function);
        auto it = numeric.find(key);
        if (it == numeric.end()) throw InvalidProblem("no value for cost function " + key);
        g.cost = it->second;
      }
      if (g.cost < 0) throw InvalidProblem("action " + g.name + " has negative cost");
      raw.push_back(std::move(g));
      if (raw.size() > options.max_actions) {
        throw GroundingExplosion("grounding exceeds " + std::to_string(options.max_actions) + " actions");
      }
    };

    std::function<void(std::size_t)> bind = [&](std::size_t depth) {
      if (++bindings_seen > binding_cap) {
        throw GroundingExplosion("grounding enumerates too many bindings");
      }
      if (!statics_hold(depth)) return;
      if (depth == binding.size()) {
        emit();
        return;
      }
      for (const auto& obj : *domains[depth]) {
        binding[depth] = &obj;
        bind(depth + 1);
      }
    };
    bind(0);
  }

  // Relaxed reachability from the initial state.
  std::unordered_set<std::string> reachable(dynamic_init.begin(), dynamic_init.end());
  std::vector<bool> enabled(raw.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (enabled[i]) continue;
      const auto& g = raw[i];
      if (!std::all_of(g.pre.begin(), g.pre.end(),
                       [&](const std::string& f) { return reachable.count(f) > 0; })) {
        continue;
      }
      enabled[i] = true;
      changed = true;
      for (const auto& f : g.add) reachable.insert(f);
    }
  }

  std::set<std::string> fluent_names(reachable.begin(), reachable.end());
  std::vector<std::string> goal_names;
  for (const auto& atom : problem.goal) {
    check_fact(atom, "goal");
    auto rendered = render_ground(atom);
    if (!dynamic_predicates.count(atom.predicate) && static_true.count(rendered)) continue;
    fluent_names.insert(rendered);
    goal_names.push_back(std::move(rendered));
  }

  std::vector<std::string> fluents(fluent_names.begin(), fluent_names.end());
  std::unordered_map<std::string, FluentId> fid;
  for (std::size_t i = 0; i < fluents.size(); ++i) fid[fluents[i]] = static_cast<FluentId>(i);
  auto ids = [&fid](const std::vector<std::string>& v) {
    std::vector<FluentId> out;
    for (const auto& f : v) {
      auto it = fid.find(f);
      if (it != fid.end()) out.push_back(it->second);
    }
    return make_fluent_set(std::move(out));
  };

  std::vector<GroundAction> actions;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!enabled[i]) continue;
    GroundAction a;
    a.name = std::move(raw[i].name);
    a.pre = ids(raw[i].pre);
    a.add = ids(raw[i].add);
    a.del = ids(raw[i].del);
    a.cost = raw[i].cost;
    actions.push_back(std::move(a));
  }
  std::sort(actions.begin(), actions.end(),
            [](const GroundAction& x, const GroundAction& y) { return x.name < y.name; });
  return GroundProblem(std::move(fluents), std::move(actions), ids(dynamic_init), ids(goal_names));
}

GroundProblem load_pddl(const std::filesystem::path& domain_file,
                        const std::filesystem::path& problem_file, const GroundOptions& options) {
  return ground(parse_domain(read_text_file(domain_file)),
                parse_problem(read_text_file(problem_file)), options);
}

}  // namespace aspcost::pddl
