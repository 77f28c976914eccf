#include "aspcost/term.hpp"

#include <cctype>
#include <charconv>

#include "aspcost/errors.hpp"

namespace aspcost {

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of term");
    const char c = text_[pos_];
    if (c == '"') return parse_string();
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '-' && pos_ + 1 < text_.size() &&
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        fail("dangling '-'");
      }
      return parse_number();
    }
    if (c == '(') {
      ++pos_;
      auto args = parse_args(')');
      return Term::function("", std::move(args));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        return Term::function(std::move(name), parse_args(')'));
      }
      return Term::function(std::move(name));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("invalid term '" + std::string(text_) + "': " + msg, 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::vector<Term> parse_args(char close) {
    std::vector<Term> args;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == close) {
      ++pos_;
      return args;
    }
    for (;;) {
      args.push_back(parse_term());
      skip_space();
      if (pos_ >= text_.size()) fail("unterminated argument list");
      if (text_[pos_] == ',') {
        ++pos_;
        skip_space();
        // one-element tuple "(a,)"
        if (pos_ < text_.size() && text_[pos_] == close) {
          ++pos_;
          return args;
        }
        continue;
      }
      if (text_[pos_] == close) {
        ++pos_;
        return args;
      }
      fail("expected ',' or ')'");
    }
  }

  Term parse_number() {
    std::size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{}) fail("bad number");
    return Term::number(value);
  }

  Term parse_string() {
    ++pos_;
    std::string value;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        ++pos_;
        const char e = text_[pos_];
        value.push_back(e == 'n' ? '\n' : e);
      } else {
        value.push_back(text_[pos_]);
      }
      ++pos_;
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return Term::string(std::move(value));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term Term::function(std::string name, std::vector<Term> args) {
  Term t;
  t.kind_ = Kind::Function;
  t.name_ = std::move(name);
  t.args_ = std::move(args);
  return t;
}

Term Term::number(std::int64_t value) {
  Term t;
  t.kind_ = Kind::Number;
  t.number_ = value;
  return t;
}

Term Term::string(std::string value) {
  Term t;
  t.kind_ = Kind::String;
  t.name_ = std::move(value);
  return t;
}

Term Term::parse(std::string_view text) {
  TermParser parser(text);
  Term t = parser.parse_term();
  if (!parser.at_end()) parser.fail("trailing input");
  return t;
}

std::int64_t Term::as_number() const {
  if (kind_ != Kind::Number) throw MalformedModel("term " + render() + " is not a number");
  return number_;
}

void Term::render_to(std::string& out) const {
  switch (kind_) {
    case Kind::Number:
      out += std::to_string(number_);
      return;
    case Kind::String:
      out.push_back('"');
      for (char c : name_) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
          out += "\\n";
          continue;
        }
        out.push_back(c);
      }
      out.push_back('"');
      return;
    case Kind::Function:
      out += name_;
      if (args_.empty() && !name_.empty()) return;
      out.push_back('(');
      for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i > 0) out.push_back(',');
        args_[i].render_to(out);
      }
      if (name_.empty() && args_.size() == 1) out.push_back(',');
      out.push_back(')');
      return;
  }
}

std::string Term::render() const {
  std::string out;
  render_to(out);
  return out;
}

std::vector<Term> parse_atom_line(std::string_view line) {
  std::vector<Term> atoms;
  TermParser parser(line);
  while (!parser.at_end()) atoms.push_back(parser.parse_term());
  return atoms;
}

std::string canonical_term_name(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  bool in_string = false;
  bool pending_space = false;
  auto is_word_char = [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
  };
  for (char c : text) {
    if (c == '"') in_string = !in_string;
    if (in_string) {
      cleaned.push_back(c);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space && !cleaned.empty() && is_word_char(cleaned.back()) && is_word_char(c)) {
      throw ParseError("name '" + std::string(text) + "' contains a space inside a symbol");
    }
    pending_space = false;
    if (c == '-' && !cleaned.empty() &&
        (std::isalnum(static_cast<unsigned char>(cleaned.back())) || cleaned.back() == '_')) {
      cleaned.push_back('_');
      continue;
    }
    cleaned.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  Term t = Term::parse(cleaned);
  if (t.kind() != Term::Kind::Function || t.name().empty()) {
    throw ParseError("name '" + std::string(text) + "' is not a symbolic term");
  }
  return t.render();
}

}  // namespace aspcost
