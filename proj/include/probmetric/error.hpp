#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace probmetric {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownProcess : public Error {
 public:
  explicit UnknownProcess(const std::string& name) : Error("unknown process '" + name + "'") {}
};

class UnknownAction : public Error {
 public:
  explicit UnknownAction(const std::string& name) : Error("unknown action '" + name + "'") {}
};

/// Raised by operations that need every involved process to have finite depth.
class NotFiniteProcess : public Error {
 public:
  explicit NotFiniteProcess(const std::string& name)
      : Error("process '" + name + "' has infinite depth (reaches a cycle)") {}
};

class CoefficientSumError : public Error {
 public:
  using Error::Error;
};

/// Malformed distribution, formula or transition system.
class SemanticError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace probmetric
