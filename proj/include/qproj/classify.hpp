#pragma once

#include <string_view>

#include "qproj/spectral.hpp"

namespace qproj {

enum class Major { Elliptic, Parabolic, Loxodromic };

enum class Minor {
  RegularElliptic,
  EllipticReflection,
  VerticalTranslation,
  NonVerticalTranslation,
  ElliptoParabolic,
  ElliptoTranslation,
  RegularLoxodromic,
  ScrewLoxodromic,
  Homothety,
  LoxoParabolic,
  Identity,
};

struct DynType {
  Major major = Major::Elliptic;
  Minor minor = Minor::Identity;

  friend bool operator==(const DynType&, const DynType&) = default;
};

std::string_view to_string(Major m) noexcept;
std::string_view to_string(Minor m) noexcept;
Major major_of(Minor m) noexcept;
DynType make_type(Minor m) noexcept;

/// Parses "RegularElliptic" style names; throws ParseError.
Minor minor_from_string(std::string_view s);

DynType dynamical_type(const JordanData& jd, double tol = kDefaultTol);
/// Throws NotUnimodular unless det_h(A) = 1.
DynType dynamical_type(const QMatrix3& a, double tol = kDefaultTol);

/// Discriminant of t^3 - x t^2 + y t - 1.
double discriminant_f(double x, double y);

struct SL3RAnalysis {
  DynType type;
  double x = 0.0;  // tr A
  double y = 0.0;  // tr A^-1
  double f = 0.0;
  int d = 0;       // degree measure of the minimal polynomial
};

SL3RAnalysis analyze_sl3r(const RealMatrix3& a, double tol = kDefaultTol);
DynType classify_sl3r(const RealMatrix3& a, double tol = kDefaultTol);
/// Quaternionic input; throws NotReal if any imaginary component exceeds tol.
DynType classify_sl3r(const QMatrix3& a, double tol = kDefaultTol);

struct TraceTest {
  double x = 0.0;
  double y = 0.0;
  bool all_unit = false;
};

TraceTest unit_modulus_iff_traces_equal(const RealMatrix3& a, double tol = kDefaultTol);

bool traces_equal(double x, double y, double tol);

/// Realifies a simple A, classifies the real conjugate and lifts the verdict
/// back to the quaternionic setting. Throws NotSimple.
DynType classify_via_simple(const QMatrix3& a, double tol = kDefaultTol);

}  // namespace qproj
