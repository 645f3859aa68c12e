#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cartan {

enum class Errc {
  NonSquare,
  Singular,
  DimensionMismatch,
  EmptyInput,
  DivisionByZero,
  ParseError,
  ZeroVector,
  TooFewPoints,
  DegenerateBasis,
  NotAugmentedBasis,
  CapExceeded,
  SizeMismatch,
  ZeroRow,
  TooFewRows,
  IndexOutOfRange,
  NotGeneric,
  ShapeMismatch,
  DegenerateAlpha,
  NonpositiveR,
  ZeroFirstColumn,
  NoPositiveRoot,
  UnknownName,
  NotIdentityAtZero,
  NotAGroupLaw,
  DependentCoefficients,
  SampleCapExceeded,
  DegenerateParameterization,
  InvalidShape,
  KTooSmall,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::Singular: return "Singular";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ParseError: return "ParseError";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::DegenerateBasis: return "DegenerateBasis";
    case Errc::NotAugmentedBasis: return "NotAugmentedBasis";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::ZeroRow: return "ZeroRow";
    case Errc::TooFewRows: return "TooFewRows";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::NotGeneric: return "NotGeneric";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::DegenerateAlpha: return "DegenerateAlpha";
    case Errc::NonpositiveR: return "NonpositiveR";
    case Errc::ZeroFirstColumn: return "ZeroFirstColumn";
    case Errc::NoPositiveRoot: return "NoPositiveRoot";
    case Errc::UnknownName: return "UnknownName";
    case Errc::NotIdentityAtZero: return "NotIdentityAtZero";
    case Errc::NotAGroupLaw: return "NotAGroupLaw";
    case Errc::DependentCoefficients: return "DependentCoefficients";
    case Errc::SampleCapExceeded: return "SampleCapExceeded";
    case Errc::DegenerateParameterization: return "DegenerateParameterization";
    case Errc::InvalidShape: return "InvalidShape";
    case Errc::KTooSmall: return "KTooSmall";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; `code()` is
/// stable and is what callers (and the CLI exit-status mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cartan
