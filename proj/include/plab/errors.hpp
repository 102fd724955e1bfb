#pragma once

#include <stdexcept>
#include <string>

namespace plab {

// Caller passed something outside an operation's contract (bad flag, wrong
// field, malformed input). The CLI maps this to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Mathematically undefined request, e.g. the inverse of zero or the join of a
// point with itself.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A construction cannot be carried out for the given parameters (no good set
// in characteristic 3, non-commuting polarity and collineation, ...).
class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plab
