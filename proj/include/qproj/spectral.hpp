#pragma once

#include <string_view>
#include <vector>

#include "qproj/qmat3.hpp"

namespace qproj {

/// Similarity class of a right eigenvalue together with its quaternionic
/// algebraic and geometric multiplicities.
struct EigenClass {
  ClassRep rep;
  int alg_mult = 0;
  int geo_mult = 0;

  bool is_real() const { return rep.im == 0.0; }
};

struct JordanBlock {
  ClassRep rep;
  int size = 1;
};

enum class JordanShape { Diag, J2, J3 };

std::string_view to_string(JordanShape shape) noexcept;

/// A = S J S^{-1} where J is assembled from `blocks` in order. Blocks are
/// sorted by descending size, then descending modulus, then ascending angle.
struct JordanData {
  std::vector<JordanBlock> blocks;
  QMatrix3 S;
  JordanShape shape = JordanShape::Diag;
  /// Relative reconstruction residual |A - S J S^-1| / |A|.
  double residual = 0.0;

  /// The canonical matrix J.
  QMatrix3 canonical() const;
  /// First column of S belonging to block b.
  int column_offset(std::size_t b) const;
  int max_block() const;
};

/// Assembles a Jordan matrix from blocks laid out left to right.
QMatrix3 assemble_jordan(const std::vector<JordanBlock>& blocks);

/// Right eigenvalue classes of an invertible A, computed through the
/// complex adjoint; sorted by descending modulus then ascending angle.
std::vector<EigenClass> right_eigenvalues(const QMatrix3& a, double tol = kDefaultTol);

/// Lifts an eigenvector (u; v) of Phi(A) for lambda to x = u - conj(v) j,
/// which satisfies A x = x lambda. Throws LiftFailure if the relative
/// residual exceeds tol.
QVector3 eigenvector_lift(const QMatrix3& a, const ComplexVector3& u, const ComplexVector3& v,
                          Complex lambda, double tol = kDefaultTol);

/// Lift without residual checking.
QVector3 lift_vector(const ComplexVector6& w);

/// Inverse of lift_vector: x = x1 + x2 j maps to (x1; -conj(x2)).
ComplexVector6 embed_vector(const QVector3& x);

/// Jordan canonical form over H. Throws Singular on non-invertible input,
/// IllConditioned when the reconstruction residual exceeds derived_tol(tol),
/// SpectralFailure when the adjoint spectrum cannot be paired into classes.
JordanData jordan_form(const QMatrix3& a, double tol = kDefaultTol);

bool is_diagonalizable(const QMatrix3& a, double tol = kDefaultTol);

/// One irreducible factor of the real minimal polynomial, raised to `power`.
struct MinimalPolyFactor {
  int degree = 1;  // 1 for a real eigenvalue, 2 for a conjugate pair
  int power = 1;
};

struct MinimalPolyStructure {
  std::vector<MinimalPolyFactor> factors;
  /// max over factors of degree * power
  int d = 0;
};

MinimalPolyStructure minimal_poly_structure(const JordanData& jd);
MinimalPolyStructure minimal_poly_structure(const QMatrix3& a, double tol = kDefaultTol);

}  // namespace qproj
