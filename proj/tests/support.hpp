#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qproj/classify.hpp"
#include "qproj/generate.hpp"

namespace qtest {

using namespace qproj;
inline constexpr double kPi = std::numbers::pi;

inline Complex polar(double r, double theta) { return std::polar(r, theta); }

inline QMatrix3 diag(Complex a, Complex b, Complex c) { return complex_diagonal({a, b, c}); }

inline double mat_dist(const QMatrix3& a, const QMatrix3& b) { return (a - b).norm(); }

// Quaternionic Gauss-Jordan elimination with partial pivoting on |entry|.
// Rows are combined by left multiplication, so the result is a left inverse,
// which for square matrices over a division ring is the two-sided inverse.
inline std::optional<QMatrix3> gauss_inverse(const QMatrix3& a) {
  QMatrix3 m = a;
  QMatrix3 inv = QMatrix3::identity();
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (m(r, c).norm() > m(piv, c).norm()) piv = r;
    if (m(piv, c).norm() < 1e-300) return std::nullopt;
    for (int k = 0; k < 3; ++k) {
      std::swap(m(c, k), m(piv, k));
      std::swap(inv(c, k), inv(piv, k));
    }
    const Quaternion p = m(c, c).inverse(0.0);
    for (int k = 0; k < 3; ++k) {
      m(c, k) = p * m(c, k);
      inv(c, k) = p * inv(c, k);
    }
    for (int r = 0; r < 3; ++r) {
      if (r == c) continue;
      const Quaternion f = m(r, c);
      for (int k = 0; k < 3; ++k) {
        m(r, k) = m(r, k) - f * m(c, k);
        inv(r, k) = inv(r, k) - f * inv(c, k);
      }
    }
  }
  return inv;
}

// Verdict for a real unimodular matrix computed straight from the roots of
// its characteristic polynomial, using the subclass definitions directly.
struct RootVerdict {
  Minor minor = Minor::Identity;
  std::array<Complex, 3> roots{};
  double discriminant = 0.0;
};

inline RootVerdict root_oracle(const RealMatrix3& a, double cluster = 1e-3) {
  const Eigen::EigenSolver<RealMatrix3> es(a, false);
  RootVerdict out;
  for (int k = 0; k < 3; ++k) out.roots[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
  const auto& z = out.roots;
  Complex disc = 1.0;
  for (int p = 0; p < 3; ++p)
    for (int q = p + 1; q < 3; ++q) disc *= (z[p] - z[q]) * (z[p] - z[q]);
  out.discriminant = disc.real();

  // Group roots; J3 perturbs roots by about eps^(1/3) so the radius is loose.
  std::vector<std::pair<Complex, int>> groups;
  for (const Complex r : z) {
    bool placed = false;
    for (auto& [c, n] : groups) {
      if (std::abs(c - r) < cluster * std::max(1.0, std::abs(r))) {
        c = (c * double(n) + r) / double(n + 1);
        ++n;
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({r, 1});
  }

  auto unit = [](Complex c) { return std::abs(std::abs(c) - 1.0) < 1e-6; };
  const bool all_unit = std::all_of(groups.begin(), groups.end(), [&](const auto& g) { return unit(g.first); });

  if (groups.size() == 3) {
    if (all_unit) {
      out.minor = Minor::RegularElliptic;
      return out;
    }
    bool shared = false;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) shared = shared || std::abs(std::abs(z[p]) - std::abs(z[q])) < 1e-6;
    out.minor = shared ? Minor::ScrewLoxodromic : Minor::RegularLoxodromic;
    return out;
  }

  // Repeated roots are real; Jordan structure from the rank of A - lambda I.
  int largest = 1;
  bool diagonalizable = true;
  for (const auto& [c, n] : groups) {
    if (n == 1) continue;
    const double lambda = c.real();
    const RealMatrix3 m = a - lambda * RealMatrix3::Identity();
    const Eigen::JacobiSVD<RealMatrix3> svd(m);
    const auto s = svd.singularValues();
    const double scale = std::max(1.0, a.norm());
    int rank = 0;
    for (int k = 0; k < 3; ++k) rank += s(k) > 1e-5 * scale ? 1 : 0;
    const int geo = 3 - rank;
    if (geo < n) diagonalizable = false;
    largest = std::max(largest, n == 3 && geo == 1 ? 3 : (geo < n ? 2 : 1));
  }
  if (all_unit) {
    if (diagonalizable) {
      out.minor = (a - RealMatrix3::Identity()).norm() < 1e-6 ? Minor::Identity : Minor::EllipticReflection;
    } else {
      const bool unipotent = groups.size() == 1 && std::abs(groups[0].first - 1.0) < 1e-6;
      if (unipotent) {
        out.minor = largest == 3 ? Minor::NonVerticalTranslation : Minor::VerticalTranslation;
      } else {
        out.minor = largest == 3 ? Minor::ElliptoTranslation : Minor::ElliptoParabolic;
      }
    }
    return out;
  }
  out.minor = diagonalizable ? Minor::Homothety : Minor::LoxoParabolic;
  return out;
}

// --- shape families -----------------------------------------------------------

inline double modulus(Rng& rng) {
  // r in [0.2, 5] with |log r| >= 0.1
  for (;;) {
    const double r = std::exp(uniform(rng, std::log(0.2), std::log(5.0)));
    if (std::abs(std::log(r)) >= 0.1) return r;
  }
}

inline double open_angle(Rng& rng) { return random_angle(rng); }
inline double closed_angle(Rng& rng) {
  const double u = uniform(rng, 0.0, 1.0);
  if (u < 0.1) return 0.0;
  if (u < 0.2) return kPi;
  return random_angle(rng);
}
inline double endpoint(Rng& rng) { return uniform(rng, 0.0, 1.0) < 0.5 ? 0.0 : kPi; }

// Reversible shapes: unit diagonal, reciprocal pair, unit J2 (+) point, unit J3.
inline QMatrix3 reversible_shape(int shape, Rng& rng) {
  switch (shape) {
    case 0: {
      const double u = uniform(rng, 0.0, 1.0);
      if (u < 0.6) {
        const auto t = random_angles(rng, 3);
        return diag(polar(1, t[0]), polar(1, t[1]), polar(1, t[2]));
      }
      const double a = closed_angle(rng), b = closed_angle(rng);
      if (u < 0.9) return diag(polar(1, a), polar(1, a), polar(1, b));
      return diag(polar(1, a), polar(1, a), polar(1, a));
    }
    case 1: {
      const double r = modulus(rng), t = closed_angle(rng), p = closed_angle(rng);
      return diag(polar(r, t), polar(1 / r, t), polar(1, p));
    }
    case 2: {
      const double t = closed_angle(rng);
      const double p = uniform(rng, 0.0, 1.0) < 0.2 ? t : closed_angle(rng);
      return jordan2(polar(1, t), polar(1, p));
    }
    default:
      return jordan3(polar(1, closed_angle(rng)));
  }
}

// Non-reversible shapes: generic diagonal and J2 (+) point with
// non-unit modulus, both kept away from the reversible locus.
inline QMatrix3 nonreversible_shape(int shape, Rng& rng) {
  if (shape == 0) {
    for (;;) {
      const double r = modulus(rng), s = modulus(rng);
      const double t = closed_angle(rng), p = closed_angle(rng), q = closed_angle(rng);
      if (std::abs(std::log(r * s)) < 0.1 && std::abs(t - p) < 0.1) continue;
      return diag(polar(r, t), polar(s, p), polar(1 / (r * s), q));
    }
  }
  const double r = modulus(rng);
  return jordan2(polar(r, closed_angle(rng)), polar(1 / (r * r), closed_angle(rng)));
}

// Strongly reversible shapes with the endpoint angles they require.
inline QMatrix3 strong_shape(int shape, Rng& rng) {
  switch (shape) {
    case 0: {
      const double t = closed_angle(rng);
      return diag(polar(1, t), polar(1, t), polar(1, endpoint(rng)));
    }
    case 1: {
      const double r = modulus(rng), t = closed_angle(rng);
      return diag(polar(r, t), polar(1 / r, t), polar(1, endpoint(rng)));
    }
    case 2:
      return jordan2(polar(1, endpoint(rng)), polar(1, endpoint(rng)));
    default:
      return jordan3(polar(1, endpoint(rng)));
  }
}

inline constexpr int kNonStrongShapes = 7;

// Reversible but not strongly reversible shapes.
inline QMatrix3 non_strong_shape(int shape, Rng& rng) {
  switch (shape) {
    case 0: {
      const double t = open_angle(rng);
      return diag(polar(1, t), polar(1, t), polar(1, t));
    }
    case 1: {
      const auto a = random_angles(rng, 3);
      const double phi = uniform(rng, 0, 1) < 0.3 ? endpoint(rng) : a[1];
      const double psi = uniform(rng, 0, 1) < 0.3 ? phi : a[2];
      return diag(polar(1, a[0]), polar(1, phi), polar(1, psi));
    }
    case 2: {
      const double r = modulus(rng);
      const double t = closed_angle(rng);
      return diag(polar(r, t), polar(1 / r, t), polar(1, open_angle(rng)));
    }
    case 3:
      return jordan2(polar(1, endpoint(rng)), polar(1, open_angle(rng)));
    case 4: {
      const auto a = random_angles(rng, 2);
      const double psi = uniform(rng, 0, 1) < 0.3 ? endpoint(rng) : a[1];
      return jordan2(polar(1, a[0]), polar(1, psi));
    }
    case 5: {
      const double t = open_angle(rng);
      return jordan2(polar(1, t), polar(1, t));
    }
    default:
      return jordan3(polar(1, open_angle(rng)));
  }
}

// Shapes that satisfy g A g^-1 = -A^-1 only.
inline QMatrix3 negative_shape(int shape, Rng& rng) {
  const Complex i{0, 1};
  switch (shape) {
    case 0: {
      const double t = closed_angle(rng);
      return diag(polar(1, t), -polar(1, -t), i);
    }
    case 1: {
      const double r = modulus(rng), t = closed_angle(rng);
      return diag(polar(r, t), -polar(1 / r, -t), i);
    }
    case 2:
      return jordan2(i, i);
    default:
      return jordan3(i);
  }
}

// Jordan families of the decomposition table with their factor counts.
struct Family {
  const char* name;
  int count;
};
inline constexpr std::array<Family, 5> kFamilies{{
    {"unit diagonal", 3},
    {"unit J2 (+) point", 3},
    {"unit J3", 4},
    {"general diagonal", 4},
    {"general J2 (+) point", 4},
}};

inline QMatrix3 family_shape(int family, Rng& rng) {
  switch (family) {
    case 0: {
      const auto t = random_angles(rng, 3);
      return diag(polar(1, t[0]), polar(1, t[1]), polar(1, t[2]));
    }
    case 1:
      return jordan2(polar(1, open_angle(rng)), polar(1, closed_angle(rng)));
    case 2:
      return jordan3(polar(1, open_angle(rng)));
    case 3: {
      const double r = modulus(rng), s = modulus(rng);
      const auto t = random_angles(rng, 3);
      return diag(polar(r, t[0]), polar(s, t[1]), polar(1 / (r * s), t[2]));
    }
    default: {
      const double r = modulus(rng);
      return jordan2(polar(r, open_angle(rng)), polar(1 / (r * r), closed_angle(rng)));
    }
  }
}

// Simple elements: real forms and a doubled non-real class next to a real one.
inline QMatrix3 simple_shape(Rng& rng) {
  if (uniform(rng, 0, 1) < 0.6) {
    const auto minors = real_minors();
    const Minor m = minors[std::uniform_int_distribution<std::size_t>(0, minors.size() - 1)(rng)];
    return QMatrix3::from_real(real_canonical_of_type(m, rng));
  }
  const double r = uniform(rng, 0, 1) < 0.4 ? 1.0 : modulus(rng);
  const double t = open_angle(rng);
  const double sign = uniform(rng, 0, 1) < 0.5 ? 1.0 : -1.0;
  return diag(polar(r, t), polar(r, t), sign / (r * r));
}

inline QMatrix3 conjugated(const QMatrix3& canonical, Rng& rng) {
  return conjugate(random_conjugator(rng), canonical);
}

}  // namespace qtest
