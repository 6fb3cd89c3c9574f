#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "qproj/spectral.hpp"

namespace qproj {

enum class ReverserKind { Involution, SkewInvolution, None };

/// Which equation the reverser satisfies: g A g^-1 = A^-1 or = -A^-1.
enum class ReverserRelation { Inverse, NegativeInverse };

std::string_view to_string(ReverserKind k) noexcept;
std::string_view to_string(ReverserRelation r) noexcept;

struct ReversibilityReport {
  bool reversible_sl = false;
  bool strongly_reversible_sl = false;
  bool negative_reversible = false;
  bool reversible_psl = false;

  std::optional<QMatrix3> reverser;
  ReverserKind reverser_kind = ReverserKind::None;
  ReverserRelation relation = ReverserRelation::Inverse;
  std::optional<std::pair<QMatrix3, QMatrix3>> psl_involution_pair;

  /// |g A g^-1 - (+-A^-1)| / |A^-1|
  double reverser_residual = 0.0;
  /// |g^2 -+ I|
  double square_residual = 0.0;
  /// |s1 s2 - A| / |A| and max |s_k^2 -+ I|
  double pair_product_residual = 0.0;
  double pair_square_residual = 0.0;
};

bool is_reversible_sl(const QMatrix3& a, double tol = kDefaultTol);
/// Skew-involution g with g A g^-1 = A^-1. Throws NotReversible.
QMatrix3 reverser(const QMatrix3& a, double tol = kDefaultTol);
/// (s1, s2) with s1 s2 = A and s1^2 = s2^2 = -I. Throws NotReversible.
std::pair<QMatrix3, QMatrix3> two_skew_involutions(const QMatrix3& a, double tol = kDefaultTol);

bool is_strongly_reversible_sl(const QMatrix3& a, double tol = kDefaultTol);
/// Involution g with g A g^-1 = A^-1. Throws NotStronglyReversible.
QMatrix3 involution_reverser(const QMatrix3& a, double tol = kDefaultTol);

bool is_negative_reversible(const QMatrix3& a, double tol = kDefaultTol);
/// Involution g with g A g^-1 = -A^-1. Throws NotReversible.
QMatrix3 negative_reverser(const QMatrix3& a, double tol = kDefaultTol);

ReversibilityReport psl_report(const QMatrix3& a, double tol = kDefaultTol);

/// |g A g^-1 - target| / |target| with target = A^-1 or -A^-1.
double reverser_residual(const QMatrix3& a, const QMatrix3& g, ReverserRelation rel, double tol = kDefaultTol);
/// |g^2 - sign I|
double square_residual(const QMatrix3& g, double sign);

}  // namespace qproj
