#include "qproj/classify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qproj/simple_decomp.hpp"

namespace qproj {

std::string_view to_string(Major m) noexcept {
  switch (m) {
    case Major::Elliptic: return "Elliptic";
    case Major::Parabolic: return "Parabolic";
    case Major::Loxodromic: return "Loxodromic";
  }
  return "Elliptic";
}

namespace {

constexpr std::array<std::pair<Minor, std::string_view>, 11> kMinorNames{{
    {Minor::RegularElliptic, "RegularElliptic"},
    {Minor::EllipticReflection, "EllipticReflection"},
    {Minor::VerticalTranslation, "VerticalTranslation"},
    {Minor::NonVerticalTranslation, "NonVerticalTranslation"},
    {Minor::ElliptoParabolic, "ElliptoParabolic"},
    {Minor::ElliptoTranslation, "ElliptoTranslation"},
    {Minor::RegularLoxodromic, "RegularLoxodromic"},
    {Minor::ScrewLoxodromic, "ScrewLoxodromic"},
    {Minor::Homothety, "Homothety"},
    {Minor::LoxoParabolic, "LoxoParabolic"},
    {Minor::Identity, "Identity"},
}};

bool unit(const ClassRep& r, double tol) { return std::abs(r.modulus() - 1.0) <= derived_tol(tol); }

bool equal_rep(const ClassRep& a, const ClassRep& b, double tol) { return same_class(a, b, derived_tol(tol)); }

// First-order error model: x and y carry relative error derived_tol(tol);
// the floor covers rounding in the evaluation of f itself.
bool near_zero_f(double f, double x, double y, double tol) {
  const double ax = std::abs(x), ay = std::abs(y);
  const double fx = 2.0 * x * y * y - 12.0 * x * x + 18.0 * y;
  const double fy = 2.0 * x * x * y - 12.0 * y * y + 18.0 * x;
  const double terms = x * x * y * y + 4.0 * (ax * ax * ax + ay * ay * ay) + 18.0 * ax * ay + 27.0;
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * terms;
  return std::abs(f) <= derived_tol(tol) * (std::abs(fx) * std::max(1.0, ax) + std::abs(fy) * std::max(1.0, ay)) + floor;
}

// tr(A^-1) = e2 / det with e2 the sum of the principal 2x2 minors,
// accumulated in long double.
double inverse_trace(const RealMatrix3& a) {
  const Eigen::Matrix<long double, 3, 3> m = a.cast<long double>();
  const long double e2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                         m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  return static_cast<double>(e2 / m.determinant());
}

}  // namespace

std::string_view to_string(Minor m) noexcept {
  for (const auto& [k, name] : kMinorNames)
    if (k == m) return name;
  return "Identity";
}

Minor minor_from_string(std::string_view s) {
  for (const auto& [k, name] : kMinorNames)
    if (name == s) return k;
  throw Error(ErrorKind::ParseError, "unknown minor type '" + std::string(s) + "'");
}

Major major_of(Minor m) noexcept {
  switch (m) {
    case Minor::RegularElliptic:
    case Minor::EllipticReflection:
    case Minor::Identity:
      return Major::Elliptic;
    case Minor::VerticalTranslation:
    case Minor::NonVerticalTranslation:
    case Minor::ElliptoParabolic:
    case Minor::ElliptoTranslation:
      return Major::Parabolic;
    default:
      return Major::Loxodromic;
  }
}

DynType make_type(Minor m) noexcept { return {major_of(m), m}; }

DynType dynamical_type(const JordanData& jd, double tol) {
  const auto& bs = jd.blocks;
  const bool all_unit = std::all_of(bs.begin(), bs.end(), [&](const JordanBlock& b) { return unit(b.rep, tol); });
  const int mb = jd.max_block();

  // Eigenvalue list with multiplicity (each block contributes `size` copies).
  std::vector<ClassRep> ev;
  for (const auto& b : bs)
    for (int k = 0; k < b.size; ++k) ev.push_back(b.rep);
  bool repeated = false;
  bool same_modulus = false;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j) {
      if (equal_rep(ev[i], ev[j], tol)) {
        repeated = true;
      } else if (std::abs(ev[i].modulus() - ev[j].modulus()) <= derived_tol(tol) * std::max(1.0, ev[i].modulus())) {
        same_modulus = true;
      }
    }

  if (all_unit && mb == 1) {
    const bool scalar = ev.size() == 3 && equal_rep(ev[0], ev[1], tol) && equal_rep(ev[1], ev[2], tol);
    if (scalar && std::abs(ev[0].im) <= derived_tol(tol)) return make_type(Minor::Identity);
    return make_type(repeated ? Minor::EllipticReflection : Minor::RegularElliptic);
  }
  if (all_unit) {
    const ClassRep plus{1.0, 0.0}, minus{-1.0, 0.0};
    const bool unipotent =
        std::all_of(ev.begin(), ev.end(), [&](const ClassRep& r) { return equal_rep(r, plus, tol); }) ||
        std::all_of(ev.begin(), ev.end(), [&](const ClassRep& r) { return equal_rep(r, minus, tol); });
    if (unipotent) return make_type(mb == 2 ? Minor::VerticalTranslation : Minor::NonVerticalTranslation);
    return make_type(mb == 2 ? Minor::ElliptoParabolic : Minor::ElliptoTranslation);
  }
  if (repeated) return make_type(mb == 1 ? Minor::Homothety : Minor::LoxoParabolic);
  return make_type(same_modulus ? Minor::ScrewLoxodromic : Minor::RegularLoxodromic);
}

DynType dynamical_type(const QMatrix3& a, double tol) {
  require_unimodular(a, tol);
  return dynamical_type(jordan_form(a, tol), tol);
}

double discriminant_f(double x, double y) {
  return x * x * y * y - 4.0 * (x * x * x + y * y * y) + 18.0 * x * y - 27.0;
}

bool traces_equal(double x, double y, double tol) {
  return std::abs(x - y) <= derived_tol(tol) * std::max({1.0, std::abs(x), std::abs(y)});
}

SL3RAnalysis analyze_sl3r(const RealMatrix3& a, double tol) {
  const double det = a.determinant();
  if (!(std::abs(det - 1.0) <= derived_tol(tol))) {
    throw Error(ErrorKind::NotUnimodular, "det = " + std::to_string(det));
  }
  SL3RAnalysis out;
  out.x = a.trace();
  out.y = inverse_trace(a);
  out.f = discriminant_f(out.x, out.y);
  const bool eq = traces_equal(out.x, out.y, tol);

  if (near_zero_f(out.f, out.x, out.y, tol)) {
    out.d = minimal_poly_structure(QMatrix3::from_real(a), tol).d;
    if (eq) {
      const bool three = std::abs(out.x - 3.0) <= derived_tol(tol) * 3.0;
      if (out.d == 1) {
        out.type = make_type(three ? Minor::Identity : Minor::EllipticReflection);
      } else if (three) {
        out.type = make_type(out.d == 2 ? Minor::VerticalTranslation : Minor::NonVerticalTranslation);
      } else {
        out.type = make_type(out.d == 2 ? Minor::ElliptoParabolic : Minor::ElliptoTranslation);
      }
    } else {
      out.type = make_type(out.d == 1 ? Minor::Homothety : Minor::LoxoParabolic);
    }
  } else if (out.f > 0) {
    // Three distinct real roots. They include an opposite-sign pair {a, -a}
    // exactly when x y = 1, and then two roots share a modulus.
    const bool opposite = std::abs(out.x * out.y - 1.0) <= derived_tol(tol) * std::max(1.0, std::abs(out.x * out.y));
    out.type = make_type(opposite ? Minor::ScrewLoxodromic : Minor::RegularLoxodromic);
  } else {
    out.type = make_type(eq ? Minor::RegularElliptic : Minor::ScrewLoxodromic);
  }
  return out;
}

DynType classify_sl3r(const RealMatrix3& a, double tol) { return analyze_sl3r(a, tol).type; }

DynType classify_sl3r(const QMatrix3& a, double tol) {
  if (!a.is_real(tol)) throw Error(ErrorKind::NotReal, "matrix has non-real entries");
  return classify_sl3r(a.real_part(), tol);
}

TraceTest unit_modulus_iff_traces_equal(const RealMatrix3& a, double tol) {
  TraceTest out;
  out.x = a.trace();
  out.y = inverse_trace(a);
  const Eigen::EigenSolver<RealMatrix3> es(a, false);
  const auto ev = es.eigenvalues();
  out.all_unit = true;
  for (int i = 0; i < 3; ++i) out.all_unit = out.all_unit && std::abs(std::abs(ev(i)) - 1.0) <= derived_tol(tol);
  return out;
}

DynType classify_via_simple(const QMatrix3& a, double tol) {
  require_unimodular(a, tol);
  if (!is_simple(a, tol)) throw Error(ErrorKind::NotSimple, "matrix is not conjugate to a real matrix");
  RealMatrix3 b = realify(a, tol).B;
  // The real conjugate may have determinant -1; -B then lies in SL(3,R) and
  // represents the same projective class.
  if (b.determinant() < 0) b = -b;
  const SL3RAnalysis r = analyze_sl3r(b, tol);
  if (r.f < 0 && !near_zero_f(r.f, r.x, r.y, tol)) {
    // A complex-conjugate pair of B is a single quaternionic class of
    // multiplicity two.
    if (r.type.minor == Minor::RegularElliptic) return make_type(Minor::EllipticReflection);
    if (r.type.minor == Minor::ScrewLoxodromic) return make_type(Minor::Homothety);
  }
  return r.type;
}

}  // namespace qproj
