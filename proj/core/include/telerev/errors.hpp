#pragma once

#include <stdexcept>
#include <string>

namespace telerev {

/// Shape mismatch: non-square input, wrong local dimension, bad index.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Value outside the domain of an operation (parameter range, trace, hermiticity).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace telerev
