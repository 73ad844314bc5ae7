#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ucstar {

enum class ErrorKind {
  InvalidMatrix,
  ShapeMismatch,
  MissingShape,
  NotSquare,
  NotHermitian,
  NotPositive,
  SingularOperand,
  NotInvertible,
  InvalidQuiver,
  NameClash,
  NotParallel,
  UnboundedGenerator,
  RelationFailed,
  BoundFailed,
  InvalidCategory,
  InvalidFunctor,
  InvalidGroupoid,
  NotUnitary,
  InvalidSimplicialSet,
  InvalidParams,
  NotFiniteWithinBound,
  SquareMismatch,
  NotAWeakEquivalence,
  LiftObstruction,
  PreconditionFailed,
  Unsupported,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::MissingShape: return "MissingShape";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::SingularOperand: return "SingularOperand";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::InvalidQuiver: return "InvalidQuiver";
    case ErrorKind::NameClash: return "NameClash";
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::UnboundedGenerator: return "UnboundedGenerator";
    case ErrorKind::RelationFailed: return "RelationFailed";
    case ErrorKind::BoundFailed: return "BoundFailed";
    case ErrorKind::InvalidCategory: return "InvalidCategory";
    case ErrorKind::InvalidFunctor: return "InvalidFunctor";
    case ErrorKind::InvalidGroupoid: return "InvalidGroupoid";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::InvalidSimplicialSet: return "InvalidSimplicialSet";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NotFiniteWithinBound: return "NotFiniteWithinBound";
    case ErrorKind::SquareMismatch: return "SquareMismatch";
    case ErrorKind::NotAWeakEquivalence: return "NotAWeakEquivalence";
    case ErrorKind::LiftObstruction: return "LiftObstruction";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind; the
/// message holds the witness (pair, arrow, residual) when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ucstar
