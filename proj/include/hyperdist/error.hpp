#pragma once

#include <stdexcept>
#include <string>

namespace hyperdist {

// Raised when an operation's precondition on its arguments does not hold
// (out-of-range ids, malformed edges, parameters outside a check's range).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace hyperdist
