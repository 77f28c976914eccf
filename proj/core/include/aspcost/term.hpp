#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aspcost {

/// A ground ASP term: a number, a quoted string, or a function symbol with
/// arguments (constants are functions of arity zero, tuples have an empty
/// name). Rendering uses the solver's canonical spelling, so render(parse(s))
/// is the identity on solver output.
class Term {
 public:
  enum class Kind { Function, Number, String };

  Term() = default;
  static Term function(std::string name, std::vector<Term> args = {});
  static Term number(std::int64_t value);
  static Term string(std::string value);

  /// Parses exactly one term; trailing input is an error.
  static Term parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Term>& args() const noexcept { return args_; }
  std::size_t arity() const noexcept { return args_.size(); }
  std::int64_t as_number() const;
  const Term& arg(std::size_t i) const { return args_.at(i); }

  bool is(std::string_view name, std::size_t arity) const noexcept {
    return kind_ == Kind::Function && name_ == name && args_.size() == arity;
  }

  std::string render() const;
  void render_to(std::string& out) const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Kind kind_ = Kind::Function;
  std::string name_;
  std::int64_t number_ = 0;
  std::vector<Term> args_;
};

/// Splits a solver model line ("a b(c,d) e") into atoms.
std::vector<Term> parse_atom_line(std::string_view line);

/// Canonicalizes a user-supplied name ("At(Joe, side_a)") into solver term
/// spelling ("at(joe,side_a)"): lowercases symbols, maps '-' to '_' and drops
/// whitespace. Throws ParseError when the result is not a valid term.
std::string canonical_term_name(std::string_view text);

}  // namespace aspcost
