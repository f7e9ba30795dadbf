#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qlab {

enum class ErrorKind {
  SyntaxError,
  NonAdmissible,
  NonComposable,
  NonConfluent,
  BoundExceeded,
  UnknownVertex,
  BadParameter,
  NotSpecialBiserial,
  InvalidWord,
  ZeroParameter,
  AlgebraMismatch,
  FieldTooSmall,
  NonSplitResidue,
  NotSelfInjective,
  ProjectiveInput,
  SocleNotLine,
  NotQuasiSerial,
  NotFound,
  CapExceeded,
  UniverseIncomplete,
  DepthExceeded,
  ConditionFailed,
  HypothesisUnmet,
  IoError,
  Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qlab
