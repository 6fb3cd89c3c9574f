#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qproj {

enum class ErrorKind {
  DegenerateInput,
  NonRealCoefficient,
  Singular,
  NotUnimodular,
  SpectralFailure,
  LiftFailure,
  IllConditioned,
  NotReal,
  NotSimple,
  NotReversible,
  NotStronglyReversible,
  ParseError,
  VerificationFailure,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NonRealCoefficient: return "NonRealCoefficient";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::SpectralFailure: return "SpectralFailure";
    case ErrorKind::LiftFailure: return "LiftFailure";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NotReal: return "NotReal";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::NotReversible: return "NotReversible";
    case ErrorKind::NotStronglyReversible: return "NotStronglyReversible";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
  }
  return "Unknown";
}

/// Default relative tolerance threaded through every predicate.
inline constexpr double kDefaultTol = 1e-9;

/// Quantities derived from computed eigenvalues (moduli, angles, traces,
/// discriminants, residuals) carry more rounding than raw entries; they are
/// compared at this multiple of the caller's tolerance.
inline constexpr double kDerivedFactor = 1e3;

inline double derived_tol(double tol) noexcept { return kDerivedFactor * tol; }

}  // namespace qproj
