#include "slrc/errors.hpp"

namespace slrc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::DivideByZero: return "DivideByZero";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::InconsistentEvaluations: return "InconsistentEvaluations";
    case ErrorKind::NonBaseCoefficient: return "NonBaseCoefficient";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotMds: return "NotMds";
    case ErrorKind::MissingSurvivor: return "MissingSurvivor";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::InsufficientSurvivors: return "InsufficientSurvivors";
    case ErrorKind::ModeUnsupported: return "ModeUnsupported";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DegenerateSecrecy: return "DegenerateSecrecy";
    case ErrorKind::ScheduleMismatch: return "ScheduleMismatch";
    case ErrorKind::InvalidVariantParams: return "InvalidVariantParams";
    case ErrorKind::RepairImpossible: return "RepairImpossible";
    case ErrorKind::CollectFailed: return "CollectFailed";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Format: return "Format";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what, std::int64_t value)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), value_(value) {}

}  // namespace slrc
