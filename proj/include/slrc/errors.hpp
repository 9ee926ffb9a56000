#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace slrc {

enum class ErrorKind {
  NotPrime,
  Reducible,
  DivideByZero,
  LengthMismatch,
  RankDeficient,
  InconsistentEvaluations,
  NonBaseCoefficient,
  FieldTooSmall,
  ShapeMismatch,
  NotMds,
  MissingSurvivor,
  UnsupportedShape,
  InsufficientSurvivors,
  ModeUnsupported,
  TooLarge,
  DegenerateSecrecy,
  ScheduleMismatch,
  InvalidVariantParams,
  RepairImpossible,
  CollectFailed,
  InvalidArgument,
  Format,
  Io,
};

const char* to_string(ErrorKind kind);

// Every module error. `value` carries the one numeric payload some kinds
// need (rank found for RankDeficient, q for NotMds).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::int64_t value = -1);

  ErrorKind kind() const noexcept { return kind_; }
  std::int64_t value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  std::int64_t value_;
};

}  // namespace slrc
