#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgain {

/// Failure categories. The CLI maps each one onto a process exit code.
enum class ErrorKind {
  parse,
  empty_graph,
  domain,
  dimension,
  divergence_risk,
  overflow_risk,
  pole,
  undefined_correlation,
  non_convergence,
  unreliable_reference,
  resource_cap,
  io,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed input line. line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pgain
