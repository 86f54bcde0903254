#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stacksp {

// Error categories double as process exit codes for the command-line tool.
enum class ErrorKind : int {
    invalid_input = 2,
    infeasible = 3,
    budget_exceeded = 4,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] int exit_code() const noexcept { return static_cast<int>(kind_); }

  private:
    ErrorKind kind_;
};

class InputError : public Error {
  public:
    explicit InputError(const std::string& what) : Error(ErrorKind::invalid_input, what) {}
};

// Malformed text input; carries the 1-based line number of the offending line.
class ParseError : public InputError {
  public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class InfeasibleError : public Error {
  public:
    explicit InfeasibleError(const std::string& what) : Error(ErrorKind::infeasible, what) {}
};

class BudgetError : public Error {
  public:
    explicit BudgetError(const std::string& what) : Error(ErrorKind::budget_exceeded, what) {}
};

} // namespace stacksp
