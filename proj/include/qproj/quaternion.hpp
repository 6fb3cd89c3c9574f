#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

#include "qproj/errors.hpp"

namespace qproj {

using Complex = std::complex<double>;

/// Hamilton quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  /// Embeds a complex number a + b i.
  static Quaternion from_complex(Complex c) { return {c.real(), c.imag(), 0.0, 0.0}; }
  /// q = a + b j with a, b complex.
  static Quaternion from_pair(Complex a, Complex b) {
    return {a.real(), a.imag(), b.real(), b.imag()};
  }
  static Quaternion exp_i(double theta) { return {std::cos(theta), std::sin(theta), 0.0, 0.0}; }

  /// Complex part a of q = a + b j.
  Complex first() const { return {w, x}; }
  /// Coefficient b of q = a + b j.
  Complex second() const { return {y, z}; }

  double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_sq()); }
  double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }
  Quaternion conj() const { return {w, -x, -y, -z}; }

  /// Throws DegenerateInput when |q| <= tol.
  Quaternion inverse(double tol = kDefaultTol) const;

  Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
inline Quaternion operator*(Quaternion a, double s) { return a *= s; }
inline Quaternion operator*(double s, Quaternion a) { return a *= s; }

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion Quaternion::inverse(double tol) const {
  const double n2 = norm_sq();
  if (std::sqrt(n2) <= tol) {
    throw Error(ErrorKind::DegenerateInput, "inverse of a (near-)zero quaternion");
  }
  return conj() * (1.0 / n2);
}

inline double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// Unique complex representative (non-negative imaginary part) of the
/// similarity class of a quaternion.
struct ClassRep {
  double re = 0.0;
  double im = 0.0;

  Complex value() const { return {re, im}; }
  double modulus() const { return std::hypot(re, im); }
  /// Argument in [0, pi].
  double angle() const { return std::atan2(im, re); }
};

ClassRep class_representative(const Quaternion& q);

/// ClassRep from a complex number (sign of the imaginary part dropped).
ClassRep class_representative(Complex c);

/// Scale-free comparison: |a - b| <= tol * max(1, modulus) on each component.
bool same_class(const ClassRep& a, const ClassRep& b, double tol);

bool similar(const Quaternion& q, const Quaternion& p, double tol);

enum class CommutantMode { Same, Flip };

/// Whether a lies in {a : a e^{i theta} = e^{+-i theta} a} (Same: +, Flip: -).
/// For theta in (0, pi) the Flip solutions are C j and the Same solutions C.
bool commutant_membership(const Quaternion& a, double theta, CommutantMode mode,
                          double tol = kDefaultTol);

}  // namespace qproj
