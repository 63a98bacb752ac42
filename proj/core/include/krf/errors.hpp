#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace krf {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

struct AdmissibilityError : Error {
  AdmissibilityError(std::size_t node, const std::string& what)
      : Error("node " + std::to_string(node) + ": " + what), node(node) {}
  std::size_t node;
};

struct InvariantViolation : Error {
  InvariantViolation(std::size_t node, std::string kind)
      : Error("invariant '" + kind + "' violated at node " + std::to_string(node)),
        node(node), kind(std::move(kind)) {}
  std::size_t node;
  std::string kind;
};

struct ConditioningError : Error {
  using Error::Error;
};

struct InsufficientData : Error {
  using Error::Error;
};

struct DegenerateError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  ConfigError(std::string field, const std::string& msg, int line = 0)
      : Error(msg), field(std::move(field)), line(line) {}
  std::string field;
  int line;
};

}  // namespace krf
