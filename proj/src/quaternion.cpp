#include "qproj/quaternion.hpp"

#include <algorithm>
#include <ostream>

namespace qproj {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "(" << q.w << ", " << q.x << "i, " << q.y << "j, " << q.z << "k)";
}

ClassRep class_representative(const Quaternion& q) { return {q.w, q.imag_norm()}; }

ClassRep class_representative(Complex c) { return {c.real(), std::abs(c.imag())}; }

bool same_class(const ClassRep& a, const ClassRep& b, double tol) {
  const double scale = std::max({1.0, a.modulus(), b.modulus()});
  return std::abs(a.re - b.re) <= tol * scale && std::abs(a.im - b.im) <= tol * scale;
}

bool similar(const Quaternion& q, const Quaternion& p, double tol) {
  return same_class(class_representative(q), class_representative(p), tol);
}

bool commutant_membership(const Quaternion& a, double theta, CommutantMode mode, double tol) {
  const double s = std::sin(theta);
  if (std::abs(s) <= tol) return true;  // theta in {0, pi}: e^{i theta} is real
  // Write a = p + q j. Then a e^{it} = p e^{it} + q e^{-it} j and
  // e^{+-it} a = e^{+-it} p + e^{+-it} q j; comparing parts isolates p or q.
  const double scale = std::max(1.0, a.norm());
  if (mode == CommutantMode::Same) return std::abs(a.second()) <= tol * scale;
  return std::abs(a.first()) <= tol * scale;
}

}  // namespace qproj
