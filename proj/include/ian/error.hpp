#pragma once

#include <stdexcept>
#include <string>

namespace ian {

enum class ErrorKind {
  ArityMismatch,
  NonUnitReciprocal,
  TranslationOutsideDomain,
  NonvanishingSubstitution,
  NotSimpleRoot,
  InconsistentDefinition,
  ZeroPolynomial,
  NotIsolating,
  DegenerateDiscriminant,
  MajorantUnavailable,
  PointOutsideRadii,
  NotRegular,
  NotInvertible,
  SingularJacobian,
  NonpositiveArgument,
  Unsupported,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

// Every precondition failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ian
