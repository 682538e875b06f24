#pragma once

#include <stdexcept>

namespace capbound {

// Input that violates a documented precondition. The CLI maps these to exit 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotCpError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotTpError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// The SDP backend failed to reach a usable status. The CLI maps these to exit 3.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace capbound
