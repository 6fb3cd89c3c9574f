#pragma once

#include <utility>
#include <vector>

#include "qproj/spectral.hpp"

namespace qproj {

/// A = T B T^-1 with B real.
struct SimpleCertificate {
  QMatrix3 T;
  RealMatrix3 B;

  /// |A - T B T^-1| / |A|
  double residual(const QMatrix3& a) const;
};

struct Decomposition {
  std::vector<QMatrix3> factors;  // left-to-right product order
  std::vector<SimpleCertificate> certificates;
  /// |prod factors - A| / |A|
  double residual = 0.0;

  QMatrix3 product() const;
};

bool is_simple(const JordanData& jd, double tol = kDefaultTol);
/// Throws NotUnimodular.
bool is_simple(const QMatrix3& a, double tol = kDefaultTol);

/// Real conjugate of a simple matrix. Throws NotSimple.
SimpleCertificate realify(const QMatrix3& a, double tol = kDefaultTol);

/// diag(e^{i mu}, e^{i mu}, 1) and diag(e^{i nu}, e^{-i nu}, 1) with
/// mu = (theta + phi)/2, nu = (theta - phi)/2.
std::pair<QMatrix3, QMatrix3> pair_rotation_split(double theta, double phi);

/// At most four simple factors whose product is A.
Decomposition decompose_simple(const QMatrix3& a, double tol = kDefaultTol);

}  // namespace qproj
