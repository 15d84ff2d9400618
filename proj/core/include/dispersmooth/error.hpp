#pragma once

#include <stdexcept>
#include <string>

namespace dispersmooth {

/// Invalid user-supplied parameters or configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters outside the admissible region of a smoothing theorem.
/// The message names the violated inequality.
class AdmissibilityError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Hypotheses of a quadrature lemma are not satisfied.
class HypothesisError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// A computation was refused because it would exceed the resource guard.
class ResourceError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// A discretization is too coarse to resolve the requested geometry.
class ResolutionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Field sizes or grids do not match.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A norm exceeded the blow-up threshold or became non-finite (exit code 3).
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File-system failure; the message carries the offending path (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or incompatible checkpoint file.
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace dispersmooth
