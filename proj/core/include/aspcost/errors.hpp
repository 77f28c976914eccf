#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aspcost {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InapplicableAction : public Error {
 public:
  using Error::Error;
};

class AlreadyAugmented : public Error {
 public:
  using Error::Error;
};

class InvalidPlan : public Error {
 public:
  using Error::Error;
};

class InvalidProblem : public Error {
 public:
  using Error::Error;
};

/// Syntax error in PDDL, JSON or ASP term text. Line and column are 1-based;
/// zero means the position is unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? what
                        : what + " at line " + std::to_string(line) + ", column " +
                              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnsupportedRequirement : public Error {
 public:
  explicit UnsupportedRequirement(const std::string& requirement)
      : Error("unsupported PDDL requirement " + requirement), requirement_(requirement) {}

  const std::string& requirement() const noexcept { return requirement_; }

 private:
  std::string requirement_;
};

class GroundingExplosion : public Error {
 public:
  using Error::Error;
};

class InvalidOptions : public Error {
 public:
  using Error::Error;
};

class PreservingActionsPresent : public Error {
 public:
  using Error::Error;
};

class MalformedModel : public Error {
 public:
  using Error::Error;
};

/// A decoded model breaks a structural property the encoding guarantees.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class SaturationMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyExpansion : public Error {
 public:
  using Error::Error;
};

class CycleDetected : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::string stderr_text = {})
      : Error(what), stderr_text_(std::move(stderr_text)) {}

  const std::string& stderr_text() const noexcept { return stderr_text_; }

 private:
  std::string stderr_text_;
};

class StateSpaceTooLarge : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class TooManyCuts : public Error {
 public:
  using Error::Error;
};

}  // namespace aspcost
