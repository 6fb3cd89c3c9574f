#include "qproj/generate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SVD>

namespace qproj {

namespace {

constexpr double kPi = std::numbers::pi;

Quaternion qc(Complex c) { return Quaternion::from_complex(c); }

Complex polar(double r, double t) { return std::polar(r, t); }

// 0 or pi with probability 1/4 each, otherwise a generic angle.
double any_angle(Rng& rng) {
  const double u = uniform(rng, 0.0, 1.0);
  if (u < 0.25) return 0.0;
  if (u < 0.5) return kPi;
  return random_angle(rng);
}

double sign(Rng& rng) { return uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0; }

// log-moduli l1, l2, -(l1 + l2) pairwise at least `gap` apart, none within
// `gap` of zero.
std::array<double, 3> separated_log_moduli(Rng& rng, double max_log, double gap = 0.1) {
  for (;;) {
    const double l1 = uniform(rng, -max_log, max_log), l2 = uniform(rng, -max_log, max_log);
    const std::array<double, 3> l{l1, l2, -(l1 + l2)};
    bool ok = std::abs(l[2]) <= max_log;
    for (int i = 0; i < 3 && ok; ++i) {
      ok = std::abs(l[static_cast<std::size_t>(i)]) >= gap;
      for (int k = i + 1; k < 3 && ok; ++k) ok = std::abs(l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(k)]) >= gap;
    }
    if (ok) return l;
  }
}

constexpr std::array<std::pair<Minor, std::string_view>, 11> kKebab{{
    {Minor::RegularElliptic, "regular-elliptic"},
    {Minor::EllipticReflection, "elliptic-reflection"},
    {Minor::Identity, "identity"},
    {Minor::VerticalTranslation, "vertical-translation"},
    {Minor::NonVerticalTranslation, "non-vertical-translation"},
    {Minor::ElliptoParabolic, "ellipto-parabolic"},
    {Minor::ElliptoTranslation, "ellipto-translation"},
    {Minor::RegularLoxodromic, "regular-loxodromic"},
    {Minor::ScrewLoxodromic, "screw-loxodromic"},
    {Minor::Homothety, "homothety"},
    {Minor::LoxoParabolic, "loxo-parabolic"},
}};

double condition(const ComplexMatrix6& m) {
  const Eigen::JacobiSVD<ComplexMatrix6> svd(m);
  const auto& s = svd.singularValues();
  return s(0) / s(5);
}

}  // namespace

QMatrix3 complex_diagonal(const Diag3& d) { return QMatrix3::diagonal(qc(d[0]), qc(d[1]), qc(d[2])); }

QMatrix3 jordan2(Complex lambda, Complex xi) {
  return {{qc(lambda), 1.0, 0.0}, {0.0, qc(lambda), 0.0}, {0.0, 0.0, qc(xi)}};
}

QMatrix3 jordan3(Complex lambda) {
  return {{qc(lambda), 1.0, 0.0}, {0.0, qc(lambda), 1.0}, {0.0, 0.0, qc(lambda)}};
}

QMatrix3 conjugate(const QMatrix3& g, const QMatrix3& a) { return g * a * inverse(g, 1e-300); }

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double random_angle(Rng& rng) { return uniform(rng, 0.15, kPi - 0.15); }

std::vector<double> random_angles(Rng& rng, int n, double gap) {
  for (;;) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (auto& v : t) v = random_angle(rng);
    bool ok = true;
    for (std::size_t i = 0; i < t.size() && ok; ++i)
      for (std::size_t k = i + 1; k < t.size() && ok; ++k) ok = std::abs(t[i] - t[k]) >= gap;
    if (ok) return t;
  }
}

double random_modulus(Rng& rng, double max) {
  const double l = uniform(rng, 0.1, std::log(max));
  return std::exp(sign(rng) * l);
}

Quaternion random_quaternion(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng), n(rng), n(rng)};
}

QMatrix3 random_matrix(Rng& rng) {
  QMatrix3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = random_quaternion(rng);
  return m;
}

QMatrix3 random_conjugator(Rng& rng, double max_cond) {
  for (;;) {
    const QMatrix3 g = random_matrix(rng);
    if (condition(complex_adjoint(g)) <= max_cond) return normalize_to_sl(g, 1e-300);
  }
}

RealMatrix3 random_real_conjugator(Rng& rng, double max_cond) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    RealMatrix3 g;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) g(r, c) = n(rng);
    const Eigen::Vector3d s = Eigen::JacobiSVD<RealMatrix3>(g).singularValues();
    if (s(0) / s(2) > max_cond) continue;
    const double det = g.determinant();
    if (det < 0) g.row(0) *= -1.0;
    return g / std::cbrt(std::abs(det));
  }
}

std::string_view kebab_name(Minor m) noexcept {
  for (const auto& [k, name] : kKebab)
    if (k == m) return name;
  return "identity";
}

Minor minor_from_kebab(std::string_view name) {
  for (const auto& [k, n] : kKebab)
    if (n == name) return k;
  throw Error(ErrorKind::ParseError, "unknown type '" + std::string(name) + "'");
}

std::vector<Minor> all_minors() {
  std::vector<Minor> out;
  for (const auto& [k, name] : kKebab) out.push_back(k);
  return out;
}

QMatrix3 canonical_of_type(Minor m, Rng& rng) {
  const double s = sign(rng);
  const double variant = uniform(rng, 0.0, 1.0);
  switch (m) {
    case Minor::Identity:
      return QMatrix3::identity() * s;
    case Minor::RegularElliptic: {
      const auto t = random_angles(rng, 3);
      if (variant < 0.5) return complex_diagonal({polar(1, t[0]), polar(1, t[1]), polar(1, t[2])});
      if (variant < 0.75) return complex_diagonal({polar(1, t[0]), polar(1, t[1]), s});
      return complex_diagonal({polar(1, t[0]), 1.0, -1.0});
    }
    case Minor::EllipticReflection: {
      const auto t = random_angles(rng, 2);
      if (variant < 0.4) return complex_diagonal({polar(1, t[0]), polar(1, t[0]), polar(1, t[1])});
      if (variant < 0.7) return complex_diagonal({polar(1, t[0]), polar(1, t[0]), s});
      if (variant < 0.85) return complex_diagonal({polar(1, t[0]), polar(1, t[0]), polar(1, t[0])});
      return complex_diagonal({s, s, -s});
    }
    case Minor::VerticalTranslation:
      return jordan2(1.0, 1.0) * s;
    case Minor::NonVerticalTranslation:
      return jordan3(1.0) * s;
    case Minor::ElliptoParabolic: {
      if (variant < 0.2) return jordan2(s, -s);
      const auto t = random_angles(rng, 2);
      const double psi = variant < 0.6 ? t[1] : (variant < 0.8 ? 0.0 : kPi);
      return jordan2(polar(1, t[0]), polar(1, psi));
    }
    case Minor::ElliptoTranslation:
      return jordan3(polar(1, random_angle(rng)));
    case Minor::RegularLoxodromic: {
      const auto l = separated_log_moduli(rng, std::log(4.0));
      return complex_diagonal(
          {polar(std::exp(l[0]), any_angle(rng)), polar(std::exp(l[1]), any_angle(rng)), polar(std::exp(l[2]), any_angle(rng))});
    }
    case Minor::ScrewLoxodromic: {
      const double r = random_modulus(rng, 3.0);
      std::vector<double> t;
      if (variant < 0.2) {
        t = {0.0, kPi};
      } else if (variant < 0.4) {
        t = {random_angle(rng), uniform(rng, 0.0, 1.0) < 0.5 ? 0.0 : kPi};
      } else {
        t = random_angles(rng, 2);
      }
      return complex_diagonal({polar(r, t[0]), polar(r, t[1]), polar(1.0 / (r * r), any_angle(rng))});
    }
    case Minor::Homothety: {
      const double r = random_modulus(rng, 3.0);
      const double t = any_angle(rng);
      return complex_diagonal({polar(r, t), polar(r, t), polar(1.0 / (r * r), any_angle(rng))});
    }
    case Minor::LoxoParabolic: {
      const double r = random_modulus(rng, 3.0);
      return jordan2(polar(r, any_angle(rng)), polar(1.0 / (r * r), any_angle(rng)));
    }
  }
  return QMatrix3::identity();
}

Sample generate(Minor m, Rng& rng) {
  Sample out;
  out.label = m;
  out.canonical = canonical_of_type(m, rng);
  out.g = random_conjugator(rng);
  out.a = conjugate(out.g, out.canonical);
  return out;
}

std::vector<Minor> real_minors() {
  return {Minor::RegularLoxodromic, Minor::ScrewLoxodromic,        Minor::RegularElliptic,
          Minor::EllipticReflection, Minor::Homothety,             Minor::LoxoParabolic,
          Minor::VerticalTranslation, Minor::NonVerticalTranslation, Minor::ElliptoParabolic,
          Minor::Identity};
}

RealMatrix3 real_canonical_of_type(Minor m, Rng& rng) {
  RealMatrix3 a = RealMatrix3::Zero();
  const double s = sign(rng);
  const double variant = uniform(rng, 0.0, 1.0);
  const auto rotation = [&](double r, double t, double third) {
    a << r * std::cos(t), r * std::sin(t), 0.0, -r * std::sin(t), r * std::cos(t), 0.0, 0.0, 0.0, third;
  };
  switch (m) {
    case Minor::Identity:
      return RealMatrix3::Identity();
    case Minor::RegularLoxodromic: {
      const auto l = separated_log_moduli(rng, std::log(4.0));
      const double s1 = sign(rng), s2 = sign(rng);
      a.diagonal() << s1 * std::exp(l[0]), s2 * std::exp(l[1]), s1 * s2 * std::exp(l[2]);
      return a;
    }
    case Minor::ScrewLoxodromic: {
      const double r = random_modulus(rng, 3.0);
      if (variant < 0.3) {
        a.diagonal() << r, -r, -1.0 / (r * r);
      } else {
        rotation(r, random_angle(rng), 1.0 / (r * r));
      }
      return a;
    }
    case Minor::RegularElliptic:
      rotation(1.0, random_angle(rng), 1.0);
      return a;
    case Minor::EllipticReflection:
      a.diagonal() << -1.0, -1.0, 1.0;
      return a;
    case Minor::Homothety: {
      const double r = random_modulus(rng, 3.0);
      a.diagonal() << s * r, s * r, 1.0 / (r * r);
      return a;
    }
    case Minor::LoxoParabolic: {
      const double r = random_modulus(rng, 3.0);
      a.diagonal() << s * r, s * r, 1.0 / (r * r);
      a(0, 1) = 1.0;
      return a;
    }
    case Minor::VerticalTranslation:
      a.diagonal() << 1.0, 1.0, 1.0;
      a(0, 1) = 1.0;
      return a;
    case Minor::NonVerticalTranslation:
      a.diagonal() << 1.0, 1.0, 1.0;
      a(0, 1) = a(1, 2) = 1.0;
      return a;
    case Minor::ElliptoParabolic:
      a.diagonal() << -1.0, -1.0, 1.0;
      a(0, 1) = 1.0;
      return a;
    case Minor::ElliptoTranslation:
      break;
  }
  throw Error(ErrorKind::DegenerateInput, "type has no real unimodular representative");
}

RealSample generate_real(Minor m, Rng& rng) {
  RealSample out;
  out.label = m;
  out.canonical = real_canonical_of_type(m, rng);
  const RealMatrix3 g = random_real_conjugator(rng);
  out.a = g * out.canonical * g.inverse();
  return out;
}

}  // namespace qproj
