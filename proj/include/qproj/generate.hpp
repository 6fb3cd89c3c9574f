#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qproj/classify.hpp"

namespace qproj {

using Rng = std::mt19937_64;

QMatrix3 complex_diagonal(const Diag3& d);
/// J(lambda, 2) (+) (xi)
QMatrix3 jordan2(Complex lambda, Complex xi);
/// J(lambda, 3)
QMatrix3 jordan3(Complex lambda);
/// g a g^-1
QMatrix3 conjugate(const QMatrix3& g, const QMatrix3& a);

/// Random element of SL(3,H) whose complex adjoint has condition number at
/// most max_cond.
QMatrix3 random_conjugator(Rng& rng, double max_cond = 1e3);
RealMatrix3 random_real_conjugator(Rng& rng, double max_cond = 1e3);
QMatrix3 random_matrix(Rng& rng);
Quaternion random_quaternion(Rng& rng);

double uniform(Rng& rng, double lo, double hi);
/// Angle in [0.15, pi - 0.15].
double random_angle(Rng& rng);
/// n angles in (0, pi) pairwise at least `gap` apart and at least 0.15 away
/// from 0 and pi.
std::vector<double> random_angles(Rng& rng, int n, double gap = 0.1);
/// Modulus with |log r| in [0.1, log(max)].
double random_modulus(Rng& rng, double max = 5.0);

/// Kebab-case generator names, e.g. "screw-loxodromic".
std::string_view kebab_name(Minor m) noexcept;
/// Throws ParseError for unknown names.
Minor minor_from_kebab(std::string_view name);
std::vector<Minor> all_minors();

/// A canonical quaternionic matrix of the requested type with separated
/// random parameters.
QMatrix3 canonical_of_type(Minor m, Rng& rng);

struct Sample {
  Minor label = Minor::Identity;
  QMatrix3 canonical;
  QMatrix3 g;
  QMatrix3 a;  // g canonical g^-1
};

Sample generate(Minor m, Rng& rng);

/// Real canonical forms labeled by their SL(3,R) type. Minors that have no
/// real representative (ElliptoTranslation) are rejected with DegenerateInput.
RealMatrix3 real_canonical_of_type(Minor m, Rng& rng);

struct RealSample {
  Minor label = Minor::Identity;
  RealMatrix3 canonical;
  RealMatrix3 a;
};

RealSample generate_real(Minor m, Rng& rng);
std::vector<Minor> real_minors();

}  // namespace qproj
