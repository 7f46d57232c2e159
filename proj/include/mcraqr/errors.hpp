#pragma once

#include <stdexcept>
#include <string>

namespace mcraqr {

// Base class for all model/numeric errors (CLI exit code 1).
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Base class for usage/schema errors (CLI exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularSystem : ModelError {
  using ModelError::ModelError;
};

struct DenominatorUnderflow : ModelError {
  using ModelError::ModelError;
};

struct StepTooLarge : ModelError {
  using ModelError::ModelError;
};

struct LinearizationOutOfRange : ModelError {
  using ModelError::ModelError;
};

struct IfCollision : ModelError {
  using ModelError::ModelError;
};

struct PlanInfeasible : ModelError {
  explicit PlanInfeasible(const std::string& msg, int carrier = -1)
      : ModelError(msg), stuck_carrier(carrier) {}
  int stuck_carrier;
};

struct SubspaceDegenerate : ModelError {
  using ModelError::ModelError;
};

struct DegenerateGeometry : ModelError {
  using ModelError::ModelError;
};

struct SchemaError : UsageError {
  using UsageError::UsageError;
};

struct UnitError : UsageError {
  using UsageError::UsageError;
};

struct IoError : ModelError {
  using ModelError::ModelError;
};

} // namespace mcraqr
