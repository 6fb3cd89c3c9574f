#pragma once

#include <array>
#include <iosfwd>

#include <Eigen/Dense>

#include "qproj/quaternion.hpp"

namespace qproj {

using ComplexMatrix6 = Eigen::Matrix<Complex, 6, 6>;
using ComplexVector6 = Eigen::Matrix<Complex, 6, 1>;
using ComplexMatrix3 = Eigen::Matrix<Complex, 3, 3>;
using ComplexVector3 = Eigen::Matrix<Complex, 3, 1>;
using RealMatrix3 = Eigen::Matrix3d;

/// Column vector in H^3; scalars act on the right.
using QVector3 = std::array<Quaternion, 3>;

/// Diagonal of a complex diagonal matrix.
using Diag3 = std::array<Complex, 3>;

/// 3x3 quaternionic matrix acting on column vectors.
class QMatrix3 {
 public:
  QMatrix3() = default;
  QMatrix3(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QMatrix3 identity();
  static QMatrix3 zero() { return {}; }
  static QMatrix3 diagonal(const Quaternion& a, const Quaternion& b, const Quaternion& c);
  static QMatrix3 from_real(const RealMatrix3& m);
  /// A = A1 + A2 j with A1, A2 complex.
  static QMatrix3 from_complex_pair(const ComplexMatrix3& a1, const ComplexMatrix3& a2);

  Quaternion& operator()(int r, int c) { return e_[r][c]; }
  const Quaternion& operator()(int r, int c) const { return e_[r][c]; }

  ComplexMatrix3 first() const;   // A1
  ComplexMatrix3 second() const;  // A2

  QVector3 column(int c) const { return {e_[0][c], e_[1][c], e_[2][c]}; }
  void set_column(int c, const QVector3& v);

  /// Frobenius norm over all 36 real components.
  double norm() const;
  /// Largest absolute value of the i, j, k components.
  double max_imag() const;
  bool is_real(double tol) const { return max_imag() <= tol * std::max(1.0, norm()); }
  RealMatrix3 real_part() const;

  QMatrix3& operator+=(const QMatrix3& o);
  QMatrix3& operator-=(const QMatrix3& o);
  QMatrix3& operator*=(double s);

 private:
  std::array<std::array<Quaternion, 3>, 3> e_{};
};

QMatrix3 operator+(QMatrix3 a, const QMatrix3& b);
QMatrix3 operator-(QMatrix3 a, const QMatrix3& b);
QMatrix3 operator-(const QMatrix3& a);
QMatrix3 operator*(const QMatrix3& a, const QMatrix3& b);
QMatrix3 operator*(QMatrix3 a, double s);
QMatrix3 operator*(double s, QMatrix3 a);
/// Right scalar multiplication A q (entrywise a_rc q).
QMatrix3 operator*(const QMatrix3& a, const Quaternion& q);
/// Left scalar multiplication q A.
QMatrix3 operator*(const Quaternion& q, const QMatrix3& a);
QVector3 operator*(const QMatrix3& a, const QVector3& v);

std::ostream& operator<<(std::ostream& os, const QMatrix3& m);

double norm(const QVector3& v);
/// v q
QVector3 scale_right(const QVector3& v, const Quaternion& q);

/// Block form [[A1, A2], [-conj(A2), conj(A1)]].
ComplexMatrix6 complex_adjoint(const QMatrix3& a);

/// Inverse of complex_adjoint; reads A1, A2 off the top block row.
QMatrix3 from_complex_adjoint(const ComplexMatrix6& phi);

/// Real, non-negative determinant of the complex adjoint.
double det_h(const QMatrix3& a);

/// x^6 - c5 x^5 + c4 x^4 - c3 x^3 + c2 x^2 - c1 x + c0; coeffs[6] == 1.
struct CharPoly6 {
  std::array<double, 7> coeffs{};

  double c(int k) const { return coeffs[static_cast<std::size_t>(k)]; }
  /// Evaluates the polynomial at a complex point.
  Complex operator()(Complex x) const;
};

/// Characteristic polynomial of the complex adjoint, assembled from its
/// eigenvalues. Throws NonRealCoefficient if an imaginary residue exceeds
/// tol (relative to the coefficient scale).
CharPoly6 char_poly_h(const QMatrix3& a, double tol = kDefaultTol);

/// Throws Singular when sigma_min / sigma_max of the complex adjoint is <= tol.
QMatrix3 inverse(const QMatrix3& a, double tol = kDefaultTol);

/// a A with a = det_h(A)^(-1/6), so det_h of the result is 1.
QMatrix3 normalize_to_sl(const QMatrix3& a, double tol = kDefaultTol);

/// True iff |c5 - c1| and |c4 - c2| are below tol. Throws NotUnimodular if
/// det_h(A) is not 1 within the derived tolerance.
bool self_dual_check(const QMatrix3& a, double tol = kDefaultTol);

/// Throws NotUnimodular unless |det_h(A) - 1| <= derived_tol(tol).
void require_unimodular(const QMatrix3& a, double tol);

/// Relative Frobenius distance |a - b| / max(1, |b|).
double relative_distance(const QMatrix3& a, const QMatrix3& b);

}  // namespace qproj
