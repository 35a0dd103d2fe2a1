#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fusalg {

enum class ErrorKind {
  InvalidLabel,
  InvalidSpec,
  ParseError,
  SizeCapExceeded,
  NonProbability,
  NonSymmetricMeasure,
  NoConvergence,
  NotNormalized,
  InconsistentRelations,
  NotUnitary,
  NoAlphaMap,
  UnreachableLabel,
  NotConverged,
  AlgebraMismatch,
  InvalidState,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library. The kind is
/// stable and is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fusalg
