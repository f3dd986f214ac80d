#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cascadelab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list or params document; `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Exhaustive enumeration would exceed the configured outcome budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t free_decisions, std::size_t limit)
      : Error("exact enumeration needs " + std::to_string(free_decisions) +
              " free decisions, limit is " + std::to_string(limit)) {}
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

}  // namespace cascadelab
