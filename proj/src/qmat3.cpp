#include "qproj/qmat3.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

namespace qproj {

QMatrix3::QMatrix3(std::initializer_list<std::initializer_list<Quaternion>> rows) {
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (const auto& q : row) {
      if (r < 3 && c < 3) e_[r][c] = q;
      ++c;
    }
    ++r;
  }
}

QMatrix3 QMatrix3::identity() { return diagonal(1.0, 1.0, 1.0); }

QMatrix3 QMatrix3::diagonal(const Quaternion& a, const Quaternion& b, const Quaternion& c) {
  QMatrix3 m;
  m.e_[0][0] = a;
  m.e_[1][1] = b;
  m.e_[2][2] = c;
  return m;
}

QMatrix3 QMatrix3::from_real(const RealMatrix3& m) {
  QMatrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out.e_[r][c] = Quaternion(m(r, c));
  return out;
}

QMatrix3 QMatrix3::from_complex_pair(const ComplexMatrix3& a1, const ComplexMatrix3& a2) {
  QMatrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out.e_[r][c] = Quaternion::from_pair(a1(r, c), a2(r, c));
  return out;
}

ComplexMatrix3 QMatrix3::first() const {
  ComplexMatrix3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = e_[r][c].first();
  return m;
}

ComplexMatrix3 QMatrix3::second() const {
  ComplexMatrix3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = e_[r][c].second();
  return m;
}

void QMatrix3::set_column(int c, const QVector3& v) {
  for (int r = 0; r < 3; ++r) e_[r][c] = v[static_cast<std::size_t>(r)];
}

double QMatrix3::norm() const {
  double s = 0.0;
  for (const auto& row : e_)
    for (const auto& q : row) s += q.norm_sq();
  return std::sqrt(s);
}

double QMatrix3::max_imag() const {
  double m = 0.0;
  for (const auto& row : e_)
    for (const auto& q : row) m = std::max({m, std::abs(q.x), std::abs(q.y), std::abs(q.z)});
  return m;
}

RealMatrix3 QMatrix3::real_part() const {
  RealMatrix3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = e_[r][c].w;
  return m;
}

QMatrix3& QMatrix3::operator+=(const QMatrix3& o) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e_[r][c] += o.e_[r][c];
  return *this;
}

QMatrix3& QMatrix3::operator-=(const QMatrix3& o) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e_[r][c] -= o.e_[r][c];
  return *this;
}

QMatrix3& QMatrix3::operator*=(double s) {
  for (auto& row : e_)
    for (auto& q : row) q *= s;
  return *this;
}

QMatrix3 operator+(QMatrix3 a, const QMatrix3& b) { return a += b; }
QMatrix3 operator-(QMatrix3 a, const QMatrix3& b) { return a -= b; }
QMatrix3 operator-(const QMatrix3& a) { return a * -1.0; }
QMatrix3 operator*(QMatrix3 a, double s) { return a *= s; }
QMatrix3 operator*(double s, QMatrix3 a) { return a *= s; }

QMatrix3 operator*(const QMatrix3& a, const QMatrix3& b) {
  QMatrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Quaternion acc;
      for (int k = 0; k < 3; ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  return out;
}

QMatrix3 operator*(const QMatrix3& a, const Quaternion& q) {
  QMatrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = a(r, c) * q;
  return out;
}

QMatrix3 operator*(const Quaternion& q, const QMatrix3& a) {
  QMatrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = q * a(r, c);
  return out;
}

QVector3 operator*(const QMatrix3& a, const QVector3& v) {
  QVector3 out{};
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(r)] += a(r, k) * v[static_cast<std::size_t>(k)];
  return out;
}

std::ostream& operator<<(std::ostream& os, const QMatrix3& m) {
  for (int r = 0; r < 3; ++r) {
    os << "[";
    for (int c = 0; c < 3; ++c) os << (c ? ", " : "") << m(r, c);
    os << "]\n";
  }
  return os;
}

double norm(const QVector3& v) {
  return std::sqrt(v[0].norm_sq() + v[1].norm_sq() + v[2].norm_sq());
}

QVector3 scale_right(const QVector3& v, const Quaternion& q) { return {v[0] * q, v[1] * q, v[2] * q}; }

ComplexMatrix6 complex_adjoint(const QMatrix3& a) {
  const ComplexMatrix3 a1 = a.first();
  const ComplexMatrix3 a2 = a.second();
  ComplexMatrix6 phi;
  phi.topLeftCorner<3, 3>() = a1;
  phi.topRightCorner<3, 3>() = a2;
  phi.bottomLeftCorner<3, 3>() = -a2.conjugate();
  phi.bottomRightCorner<3, 3>() = a1.conjugate();
  return phi;
}

QMatrix3 from_complex_adjoint(const ComplexMatrix6& phi) {
  return QMatrix3::from_complex_pair(phi.topLeftCorner<3, 3>(), phi.topRightCorner<3, 3>());
}

double det_h(const QMatrix3& a) { return complex_adjoint(a).determinant().real(); }

Complex CharPoly6::operator()(Complex x) const {
  // Signs alternate: coefficient of x^k is (-1)^(6-k) c_k.
  Complex acc = 0.0;
  for (int k = 6; k >= 0; --k) {
    const double sign = ((6 - k) % 2 == 0) ? 1.0 : -1.0;
    acc = acc * x + sign * coeffs[static_cast<std::size_t>(k)];
  }
  return acc;
}

CharPoly6 char_poly_h(const QMatrix3& a, double tol) {
  const Eigen::ComplexEigenSolver<ComplexMatrix6> solver(complex_adjoint(a), false);
  const auto& ev = solver.eigenvalues();

  // Elementary symmetric functions e_0..e_6 by expanding prod (x - lambda).
  std::array<Complex, 7> e{};
  e[0] = 1.0;
  double scale = 1.0;
  for (int i = 0; i < 6; ++i) {
    for (int k = i + 1; k >= 1; --k) e[static_cast<std::size_t>(k)] += ev(i) * e[static_cast<std::size_t>(k - 1)];
    scale *= 1.0 + std::abs(ev(i));
  }

  CharPoly6 poly;
  poly.coeffs[6] = 1.0;
  for (int k = 1; k <= 6; ++k) {
    const Complex v = e[static_cast<std::size_t>(k)];
    if (std::abs(v.imag()) > tol * scale) {
      throw Error(ErrorKind::NonRealCoefficient,
                  "imaginary residue " + std::to_string(v.imag()) + " in coefficient e" + std::to_string(k));
    }
    poly.coeffs[static_cast<std::size_t>(6 - k)] = v.real();
  }
  return poly;
}

namespace {

// sigma_min / sigma_max of the adjoint.
double reciprocal_condition(const ComplexMatrix6& phi) {
  const Eigen::JacobiSVD<ComplexMatrix6> svd(phi);
  const auto& s = svd.singularValues();
  return s(0) > 0.0 ? s(5) / s(0) : 0.0;
}

}  // namespace

QMatrix3 inverse(const QMatrix3& a, double tol) {
  const ComplexMatrix6 phi = complex_adjoint(a);
  const double rc = reciprocal_condition(phi);
  if (!(rc > tol)) {
    throw Error(ErrorKind::Singular, "reciprocal condition " + std::to_string(rc));
  }
  return from_complex_adjoint(phi.partialPivLu().inverse());
}

QMatrix3 normalize_to_sl(const QMatrix3& a, double tol) {
  const double rc = reciprocal_condition(complex_adjoint(a));
  if (!(rc > tol)) {
    throw Error(ErrorKind::Singular, "cannot normalize: reciprocal condition " + std::to_string(rc));
  }
  return a * std::pow(det_h(a), -1.0 / 6.0);
}

void require_unimodular(const QMatrix3& a, double tol) {
  const double det = det_h(a);
  if (!(std::abs(det - 1.0) <= derived_tol(tol))) {
    throw Error(ErrorKind::NotUnimodular, "det_h = " + std::to_string(det));
  }
}

bool self_dual_check(const QMatrix3& a, double tol) {
  require_unimodular(a, tol);
  const CharPoly6 p = char_poly_h(a, derived_tol(tol));
  return std::abs(p.c(5) - p.c(1)) < tol && std::abs(p.c(4) - p.c(2)) < tol;
}

double relative_distance(const QMatrix3& a, const QMatrix3& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

}  // namespace qproj
