#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aspcost/strips.hpp"

namespace aspcost::pddl {

struct TypedName {
  std::string name;
  std::string type = "object";
};

/// Predicate or function application; arguments are variables ("?x") or
/// object names. All symbols are lowercased at parse time.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;
};

struct CostExpr {
  enum class Kind { None, Constant, Function };
  Kind kind = Kind::None;
  std::int64_t constant = 0;
  Atom function;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> parameters;
  std::vector<Atom> precondition;
  std::vector<Atom> add;
  std::vector<Atom> del;
  CostExpr cost;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> parameters;
};

struct DomainAst {
  std::string name;
  std::vector<std::string> requirements;
  /// (type, parent) in declaration order; "object" is the implicit root.
  std::vector<std::pair<std::string, std::string>> types;
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<PredicateDecl> functions;
  std::vector<ActionSchema> actions;
};

struct NumericFact {
  Atom function;
  std::int64_t value = 0;
};

struct ProblemAst {
  std::string name;
  std::string domain;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  std::vector<NumericFact> numeric_init;
  std::vector<Atom> goal;
  bool minimize_total_cost = false;
};

/// Throws ParseError (with line and column) or UnsupportedRequirement.
DomainAst parse_domain(std::string_view text);
ProblemAst parse_problem(std::string_view text);

struct GroundOptions {
  std::size_t max_actions = 1'000'000;
};

/// Instantiates every type-consistent binding of each schema. Predicates that
/// no action changes are treated as static: they are evaluated against the
/// initial state during grounding and do not become fluents. Ground actions
/// whose preconditions are unreachable in the delete relaxation are dropped.
/// Fluents and actions are sorted by their rendered names.
///
/// Without a total-cost metric every action costs 1; with one, actions that do
/// not increase total-cost cost 0.
GroundProblem ground(const DomainAst& domain, const ProblemAst& problem,
                     const GroundOptions& options = {});

GroundProblem load_pddl(const std::filesystem::path& domain_file,
                        const std::filesystem::path& problem_file,
                        const GroundOptions& options = {});

}  // namespace aspcost::pddl
