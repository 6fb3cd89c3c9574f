#include "qproj/reversibility.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace qproj {

std::string_view to_string(ReverserKind k) noexcept {
  switch (k) {
    case ReverserKind::Involution: return "involution";
    case ReverserKind::SkewInvolution: return "skew-involution";
    case ReverserKind::None: return "none";
  }
  return "none";
}

std::string_view to_string(ReverserRelation r) noexcept {
  return r == ReverserRelation::Inverse ? "inverse" : "negative_inverse";
}

namespace {

enum class Shape { UnitDiag, PairSingle, J2, J3 };

// A Jordan frame: S with its columns permuted so that S^-1 A S is the
// canonical matrix with the block values placed in the given slots.
struct Frame {
  Shape shape = Shape::UnitDiag;
  QMatrix3 S;
  std::array<ClassRep, 3> slot{};
};

bool eq(const ClassRep& a, const ClassRep& b, double tol) { return same_class(a, b, derived_tol(tol)); }
bool unit(const ClassRep& r, double tol) { return std::abs(r.modulus() - 1.0) <= derived_tol(tol); }
bool real_angle(const ClassRep& r, double tol) {
  const double t = r.angle();
  return std::min(std::abs(t), std::abs(std::numbers::pi - t)) <= derived_tol(tol);
}

// alpha -> alpha^-1 on class representatives
ClassRep inverse_class(const ClassRep& r) {
  const double m2 = r.re * r.re + r.im * r.im;
  return {r.re / m2, r.im / m2};
}
// alpha -> -alpha^-1 on class representatives
ClassRep negative_inverse_class(const ClassRep& r) {
  const double m2 = r.re * r.re + r.im * r.im;
  return {-r.re / m2, r.im / m2};
}

Frame diag_frame(const JordanData& jd, int p, int q, int r, Shape shape) {
  Frame f;
  f.shape = shape;
  const std::array<int, 3> idx{p, q, r};
  for (int s = 0; s < 3; ++s) {
    f.S.set_column(s, jd.S.column(idx[static_cast<std::size_t>(s)]));
    f.slot[static_cast<std::size_t>(s)] = jd.blocks[static_cast<std::size_t>(idx[static_cast<std::size_t>(s)])].rep;
  }
  return f;
}

Frame block_frame(const JordanData& jd) {
  Frame f;
  f.shape = jd.max_block() == 3 ? Shape::J3 : Shape::J2;
  f.S = jd.S;
  int s = 0;
  for (const auto& b : jd.blocks)
    for (int k = 0; k < b.size; ++k) f.slot[static_cast<std::size_t>(s++)] = b.rep;
  return f;
}

constexpr std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}, {1, 0, 2}, {2, 0, 1}, {2, 1, 0}}};

std::optional<Frame> sl_frame(const JordanData& jd, double tol) {
  const auto& bs = jd.blocks;
  if (jd.max_block() > 1) {
    for (const auto& b : bs)
      if (!unit(b.rep, tol)) return std::nullopt;
    return block_frame(jd);
  }
  bool all_unit = true;
  for (const auto& b : bs) all_unit = all_unit && unit(b.rep, tol);
  if (all_unit) return diag_frame(jd, 0, 1, 2, Shape::UnitDiag);
  for (const auto& [p, q, r] : kPerms) {
    const auto& a = bs[static_cast<std::size_t>(p)].rep;
    if (unit(a, tol) || a.modulus() < 1.0) continue;
    if (eq(bs[static_cast<std::size_t>(q)].rep, inverse_class(a), tol) && unit(bs[static_cast<std::size_t>(r)].rep, tol)) {
      return diag_frame(jd, p, q, r, Shape::PairSingle);
    }
  }
  return std::nullopt;
}

std::optional<Frame> strong_frame(const JordanData& jd, double tol) {
  const auto f = sl_frame(jd, tol);
  if (!f) return std::nullopt;
  const auto& bs = jd.blocks;
  switch (f->shape) {
    case Shape::UnitDiag:
      for (const auto& [p, q, r] : kPerms) {
        if (eq(bs[static_cast<std::size_t>(p)].rep, bs[static_cast<std::size_t>(q)].rep, tol) &&
            real_angle(bs[static_cast<std::size_t>(r)].rep, tol)) {
          return diag_frame(jd, p, q, r, Shape::UnitDiag);
        }
      }
      return std::nullopt;
    case Shape::PairSingle:
      return real_angle(f->slot[2], tol) ? f : std::nullopt;
    case Shape::J2:
      return real_angle(f->slot[0], tol) && real_angle(f->slot[2], tol) ? f : std::nullopt;
    case Shape::J3:
      return real_angle(f->slot[0], tol) ? f : std::nullopt;
  }
  return std::nullopt;
}

std::optional<Frame> negative_frame(const JordanData& jd, double tol) {
  const ClassRep i_rep{0.0, 1.0};
  const auto& bs = jd.blocks;
  if (jd.max_block() > 1) {
    for (const auto& b : bs)
      if (!eq(b.rep, i_rep, tol)) return std::nullopt;
    return block_frame(jd);
  }
  for (const auto& [p, q, r] : kPerms) {
    const auto& a = bs[static_cast<std::size_t>(p)].rep;
    if (eq(bs[static_cast<std::size_t>(r)].rep, i_rep, tol) &&
        eq(bs[static_cast<std::size_t>(q)].rep, negative_inverse_class(a), tol)) {
      return diag_frame(jd, p, q, r, Shape::PairSingle);
    }
  }
  return std::nullopt;
}

Quaternion cj(Complex c) { return Quaternion::from_pair(0.0, c); }  // c j

QMatrix3 skew_canonical(const Frame& f) {
  const Quaternion j = Quaternion::j();
  const double t = f.slot[0].angle();
  const auto e = [t](double k) { return std::polar(1.0, k * t); };
  switch (f.shape) {
    case Shape::UnitDiag: return QMatrix3::diagonal(j, j, j);
    case Shape::PairSingle: return {{0.0, j, 0.0}, {j, 0.0, 0.0}, {0.0, 0.0, j}};
    case Shape::J2: return QMatrix3::diagonal(cj(-e(-2)), j, j);
    case Shape::J3: return {{cj(e(-4)), cj(e(-3)), 0.0}, {0.0, cj(-e(-2)), 0.0}, {0.0, 0.0, j}};
  }
  return {};
}

QMatrix3 involution_canonical(const Frame& f) {
  const Quaternion j = Quaternion::j();
  switch (f.shape) {
    case Shape::UnitDiag:
    case Shape::PairSingle:
      return {{0.0, j, 0.0}, {-j, 0.0, 0.0}, {0.0, 0.0, 1.0}};
    case Shape::J2: return QMatrix3::diagonal(1.0, -1.0, 1.0);
    case Shape::J3: {
      const double s = f.slot[0].re > 0 ? 1.0 : -1.0;
      return {{1.0, s, 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 1.0}};
    }
  }
  return {};
}

QMatrix3 negative_canonical(const Frame& f) {
  switch (f.shape) {
    case Shape::UnitDiag:
    case Shape::PairSingle:
      return {{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
    case Shape::J2: return QMatrix3::diagonal(1.0, -1.0, 1.0);
    case Shape::J3: return {{1.0, -Quaternion::i(), 0.0}, {0.0, -1.0, 0.0}, {0.0, 0.0, 1.0}};
  }
  return {};
}

QMatrix3 transport(const Frame& f, const QMatrix3& g0, double tol) { return f.S * g0 * inverse(f.S, tol * tol); }

JordanData checked_jordan(const QMatrix3& a, double tol) {
  require_unimodular(a, tol);
  return jordan_form(a, tol);
}

}  // namespace

double reverser_residual(const QMatrix3& a, const QMatrix3& g, ReverserRelation rel, double tol) {
  QMatrix3 target = inverse(a, tol * tol);
  if (rel == ReverserRelation::NegativeInverse) target = -target;
  return (g * a * inverse(g, tol * tol) - target).norm() / std::max(1e-300, target.norm());
}

double square_residual(const QMatrix3& g, double sign) { return (g * g - QMatrix3::identity() * sign).norm(); }

bool is_reversible_sl(const QMatrix3& a, double tol) { return sl_frame(checked_jordan(a, tol), tol).has_value(); }

QMatrix3 reverser(const QMatrix3& a, double tol) {
  const auto f = sl_frame(checked_jordan(a, tol), tol);
  if (!f) throw Error(ErrorKind::NotReversible, "Jordan blocks do not pair under inversion");
  return transport(*f, skew_canonical(*f), tol);
}

std::pair<QMatrix3, QMatrix3> two_skew_involutions(const QMatrix3& a, double tol) {
  const QMatrix3 s2 = reverser(a, tol);
  const QMatrix3 s1 = -(a * s2);
  const double scale = std::max(1.0, s1.norm() * s1.norm());
  if (!(square_residual(s1, -1.0) <= derived_tol(tol) * scale)) {
    throw Error(ErrorKind::VerificationFailure, "s1^2 != -I (residual " + std::to_string(square_residual(s1, -1.0)) + ")");
  }
  return {s1, s2};
}

bool is_strongly_reversible_sl(const QMatrix3& a, double tol) {
  return strong_frame(checked_jordan(a, tol), tol).has_value();
}

QMatrix3 involution_reverser(const QMatrix3& a, double tol) {
  const auto f = strong_frame(checked_jordan(a, tol), tol);
  if (!f) throw Error(ErrorKind::NotStronglyReversible, "no involution conjugates A to its inverse");
  return transport(*f, involution_canonical(*f), tol);
}

bool is_negative_reversible(const QMatrix3& a, double tol) {
  return negative_frame(checked_jordan(a, tol), tol).has_value();
}

QMatrix3 negative_reverser(const QMatrix3& a, double tol) {
  const auto f = negative_frame(checked_jordan(a, tol), tol);
  if (!f) throw Error(ErrorKind::NotReversible, "A is not conjugate to -A^-1");
  return transport(*f, negative_canonical(*f), tol);
}

ReversibilityReport psl_report(const QMatrix3& a, double tol) {
  const JordanData jd = checked_jordan(a, tol);
  const auto sl = sl_frame(jd, tol);
  const auto strong = strong_frame(jd, tol);
  const auto neg = negative_frame(jd, tol);

  ReversibilityReport rep;
  rep.reversible_sl = sl.has_value();
  rep.strongly_reversible_sl = strong.has_value();
  rep.negative_reversible = neg.has_value();
  rep.reversible_psl = rep.reversible_sl || rep.negative_reversible;

  if (sl) {
    rep.reverser = transport(*sl, skew_canonical(*sl), tol);
    rep.reverser_kind = ReverserKind::SkewInvolution;
  } else if (neg) {
    rep.reverser = transport(*neg, negative_canonical(*neg), tol);
    rep.reverser_kind = ReverserKind::Involution;
    rep.relation = ReverserRelation::NegativeInverse;
  }
  if (rep.reverser) {
    rep.reverser_residual = reverser_residual(a, *rep.reverser, rep.relation, tol);
    rep.square_residual = square_residual(*rep.reverser, rep.reverser_kind == ReverserKind::Involution ? 1.0 : -1.0);
  }

  if (sl) {
    const QMatrix3 s2 = transport(*sl, skew_canonical(*sl), tol);
    rep.psl_involution_pair = std::make_pair(-(a * s2), s2);
  } else if (neg) {
    const QMatrix3 g = transport(*neg, negative_canonical(*neg), tol);
    rep.psl_involution_pair = std::make_pair(-(inverse(g, tol * tol) * inverse(a, tol * tol)), g);
  }
  if (rep.psl_involution_pair) {
    const auto& [s1, s2] = *rep.psl_involution_pair;
    const QMatrix3 prod = s1 * s2;
    rep.pair_product_residual = std::min((prod - a).norm(), (prod + a).norm()) / std::max(1e-300, a.norm());
    rep.pair_square_residual = 0.0;
    for (const QMatrix3* s : {&s1, &s2}) {
      rep.pair_square_residual =
          std::max(rep.pair_square_residual, std::min(square_residual(*s, 1.0), square_residual(*s, -1.0)));
    }
  }
  return rep;
}

}  // namespace qproj
