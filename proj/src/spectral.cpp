#include "qproj/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qproj {

std::string_view to_string(JordanShape shape) noexcept {
  switch (shape) {
    case JordanShape::Diag: return "diag";
    case JordanShape::J2: return "j2";
    case JordanShape::J3: return "j3";
  }
  return "diag";
}

QMatrix3 assemble_jordan(const std::vector<JordanBlock>& blocks) {
  QMatrix3 j;
  int pos = 0;
  for (const auto& b : blocks) {
    for (int k = 0; k < b.size && pos + k < 3; ++k) {
      j(pos + k, pos + k) = Quaternion::from_complex(b.rep.value());
      if (k + 1 < b.size) j(pos + k, pos + k + 1) = 1.0;
    }
    pos += b.size;
  }
  return j;
}

QMatrix3 JordanData::canonical() const { return assemble_jordan(blocks); }

int JordanData::column_offset(std::size_t b) const {
  int off = 0;
  for (std::size_t i = 0; i < b && i < blocks.size(); ++i) off += blocks[i].size;
  return off;
}

int JordanData::max_block() const {
  int m = 0;
  for (const auto& b : blocks) m = std::max(m, b.size);
  return m;
}

QVector3 lift_vector(const ComplexVector6& w) {
  QVector3 x{};
  for (int r = 0; r < 3; ++r) {
    const Complex u = w(r);
    const Complex v = w(r + 3);
    // u - conj(v) j
    x[static_cast<std::size_t>(r)] = Quaternion::from_pair(u, -std::conj(v));
  }
  return x;
}

ComplexVector6 embed_vector(const QVector3& x) {
  ComplexVector6 w;
  for (int r = 0; r < 3; ++r) {
    const auto& q = x[static_cast<std::size_t>(r)];
    w(r) = q.first();
    w(r + 3) = -std::conj(q.second());
  }
  return w;
}

QVector3 eigenvector_lift(const QMatrix3& a, const ComplexVector3& u, const ComplexVector3& v,
                          Complex lambda, double tol) {
  ComplexVector6 w;
  w << u, v;
  const QVector3 x = lift_vector(w);
  const QVector3 ax = a * x;
  const QVector3 xl = scale_right(x, Quaternion::from_complex(lambda));
  QVector3 diff{};
  for (std::size_t r = 0; r < 3; ++r) diff[r] = ax[r] - xl[r];
  const double scale = std::max(1e-300, std::max(1.0, a.norm()) * norm(x));
  const double res = norm(diff) / scale;
  if (!(res <= tol)) {
    throw Error(ErrorKind::LiftFailure, "lift residual " + std::to_string(res));
  }
  return x;
}

namespace {

using Dyn = Eigen::MatrixXcd;

// (u; v) -> (conj(v); -conj(u)), the adjoint image of x -> x j.
ComplexVector6 hat(const ComplexVector6& w) {
  ComplexVector6 out;
  out.head<3>() = w.tail<3>().conjugate();
  out.tail<3>() = -w.head<3>().conjugate();
  return out;
}

double smallest_singular_value(const ComplexMatrix6& m) {
  const Eigen::JacobiSVD<ComplexMatrix6> svd(m);
  return svd.singularValues()(5);
}

struct Cluster {
  std::vector<int> members;  // indices into the Schur diagonal
  Complex centroid;
  double radius = 0.0;
};

Cluster make_cluster(std::vector<int> members, const Eigen::VectorXcd& ev) {
  Cluster c;
  c.members = std::move(members);
  Complex sum = 0.0;
  for (int m : c.members) sum += ev(m);
  c.centroid = sum / static_cast<double>(c.members.size());
  for (int m : c.members) c.radius = std::max(c.radius, std::abs(ev(m) - c.centroid));
  return c;
}

double member_distance(const Cluster& a, const Cluster& b, const Eigen::VectorXcd& ev) {
  double d = std::numeric_limits<double>::infinity();
  for (int i : a.members)
    for (int j : b.members) d = std::min(d, std::abs(ev(i) - ev(j)));
  return d;
}

std::vector<int> merged_members(const Cluster& a, const Cluster& b) {
  std::vector<int> m = a.members;
  m.insert(m.end(), b.members.begin(), b.members.end());
  std::sort(m.begin(), m.end());
  return m;
}

// Eigenvalues are first grouped when they agree to tol * scale. Groups lying
// within the looser defect radius are then merged only if the adjoint is
// numerically singular at the merged centroid: a defective eigenvalue splits
// into a ring of roughly (rounding)^(1/size) around a point where
// Phi - lambda stays singular, while genuinely distinct eigenvalues leave
// Phi - centroid regular.
std::vector<Cluster> cluster_eigenvalues(const ComplexMatrix6& phi, const Eigen::VectorXcd& ev,
                                         double tight, double singular_threshold, double tol, int loose_limit,
                                         int& loose_merges) {
  std::vector<Cluster> clusters;
  for (int i = 0; i < 6; ++i) clusters.push_back(make_cluster({i}, ev));

  auto merge_pass = [&](bool gated) {
    std::set<std::pair<std::vector<int>, std::vector<int>>> rejected;
    for (;;) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t bi = 0, bj = 0;
      for (std::size_t i = 0; i < clusters.size(); ++i)
        for (std::size_t j = i + 1; j < clusters.size(); ++j) {
          if (rejected.count({clusters[i].members, clusters[j].members})) continue;
          const double d = member_distance(clusters[i], clusters[j], ev);
          const double scale = std::max({1.0, std::abs(clusters[i].centroid), std::abs(clusters[j].centroid)});
          const double radius = gated ? 10.0 * std::cbrt(tol) * scale : tight;
          if (d <= radius && d < best) {
            best = d;
            bi = i;
            bj = j;
          }
        }
      if (!std::isfinite(best) || (gated && loose_merges >= loose_limit)) return;
      Cluster merged = make_cluster(merged_members(clusters[bi], clusters[bj]), ev);
      bool accept = true;
      if (gated) {
        const ComplexMatrix6 shifted = phi - merged.centroid * ComplexMatrix6::Identity();
        accept = smallest_singular_value(shifted) <= singular_threshold;
      }
      if (accept) {
        if (gated) ++loose_merges;
        clusters[bi] = std::move(merged);
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
      } else {
        rejected.insert({clusters[bi].members, clusters[bj].members});
      }
    }
  };
  merge_pass(false);
  merge_pass(true);
  return clusters;
}

void swap_schur(Eigen::MatrixXcd& t, Eigen::MatrixXcd& u, int k) {
  const Complex a = t(k, k);
  const Complex b = t(k + 1, k + 1);
  const Complex c = t(k, k + 1);
  Eigen::Vector2cd v(c, b - a);
  const double nv = v.norm();
  if (nv == 0.0) return;
  v /= nv;
  Eigen::Matrix2cd g;
  g << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  t.middleRows(k, 2) = g.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * g;
  u.middleCols(k, 2) = u.middleCols(k, 2) * g;
  t(k + 1, k) = 0.0;
}

// Reorders the Schur form so the diagonal positions in `members` come first.
// Returns an orthonormal basis of the invariant subspace and the leading
// triangular block.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> invariant_subspace(Eigen::MatrixXcd t, Eigen::MatrixXcd u,
                                                                  const std::vector<int>& members) {
  std::vector<bool> flag(6, false);
  for (int m : members) flag[static_cast<std::size_t>(m)] = true;
  const int count = static_cast<int>(members.size());
  for (int target = 0; target < count; ++target) {
    int pos = target;
    while (!flag[static_cast<std::size_t>(pos)]) ++pos;
    for (int k = pos - 1; k >= target; --k) {
      swap_schur(t, u, k);
      std::swap(flag[static_cast<std::size_t>(k)], flag[static_cast<std::size_t>(k + 1)]);
    }
  }
  return {u.leftCols(count), t.topLeftCorner(count, count)};
}

struct ClassData {
  EigenClass info;
  Complex lambda;
  Eigen::MatrixXcd basis;  // 6 x M orthonormal basis of the generalized eigenspace
  Eigen::MatrixXcd sub;    // M x M restriction of Phi - lambda
  std::vector<int> structure;
};

struct Analysis {
  ComplexMatrix6 phi;
  std::vector<ClassData> classes;
  int loose_merges = 0;
};

std::vector<int> block_structure(int alg, int geo) {
  if (alg == 1) return {1};
  if (alg == 2) return geo >= 2 ? std::vector<int>{1, 1} : std::vector<int>{2};
  if (geo >= 3) return {1, 1, 1};
  if (geo == 2) return {2, 1};
  return {3};
}

// Moduli closer than kOrderTol (relative) count as equal so that rounding
// noise does not reorder unit-modulus classes.
constexpr double kOrderTol = 1e-6;

bool rep_order(const ClassRep& a, const ClassRep& b) {
  const double ma = a.modulus(), mb = b.modulus();
  if (std::abs(ma - mb) > kOrderTol * std::max(ma, mb)) return ma > mb;
  return a.angle() < b.angle();
}

bool class_order(const EigenClass& a, const EigenClass& b) { return rep_order(a.rep, b.rep); }

Analysis analyze(const QMatrix3& a, double tol, int loose_limit) {
  Analysis out;
  out.phi = complex_adjoint(a);
  const Eigen::ComplexSchur<Eigen::MatrixXcd> schur(Eigen::MatrixXcd(out.phi));
  if (schur.info() != Eigen::Success) throw Error(ErrorKind::SpectralFailure, "Schur decomposition failed");
  const Eigen::MatrixXcd t = schur.matrixT();
  const Eigen::MatrixXcd u = schur.matrixU();
  const Eigen::VectorXcd ev = t.diagonal();

  const double scale = std::max(1.0, out.phi.norm());
  const double tight = tol * scale;
  const double rank_threshold = tol * scale;
  const auto clusters = cluster_eigenvalues(out.phi, ev, tight, rank_threshold, tol, loose_limit, out.loose_merges);

  std::vector<bool> used(clusters.size(), false);
  int total = 0;
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    if (used[ci]) continue;
    const Cluster& c = clusters[ci];
    ClassData cd;
    const bool self_conjugate = std::abs(c.centroid.imag()) <= c.radius + tight;
    if (self_conjugate) {
      used[ci] = true;
      if (c.members.size() % 2 != 0) {
        throw Error(ErrorKind::SpectralFailure, "real eigenvalue cluster of odd size");
      }
      cd.lambda = Complex(c.centroid.real(), 0.0);
      cd.info.rep = {c.centroid.real(), 0.0};
      cd.info.alg_mult = static_cast<int>(c.members.size()) / 2;
    } else {
      // Locate the conjugate partner cluster.
      std::size_t partner = clusters.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t cj = 0; cj < clusters.size(); ++cj) {
        if (cj == ci || used[cj]) continue;
        const double d = std::abs(clusters[cj].centroid - std::conj(c.centroid));
        if (d < best) {
          best = d;
          partner = cj;
        }
      }
      if (partner == clusters.size() || clusters[partner].members.size() != c.members.size() ||
          best > c.radius + clusters[partner].radius + 10.0 * std::cbrt(tol) * std::max(1.0, std::abs(c.centroid))) {
        throw Error(ErrorKind::SpectralFailure, "adjoint eigenvalues do not pair into conjugates");
      }
      used[ci] = used[partner] = true;
      const Cluster& upper = c.centroid.imag() > 0 ? c : clusters[partner];
      const Cluster& lower = c.centroid.imag() > 0 ? clusters[partner] : c;
      // Average with the mirrored partner so the representative is symmetric.
      cd.lambda = 0.5 * (upper.centroid + std::conj(lower.centroid));
      cd.info.rep = {cd.lambda.real(), cd.lambda.imag()};
      cd.info.alg_mult = static_cast<int>(upper.members.size());
      auto [basis, block] = invariant_subspace(t, u, upper.members);
      cd.basis = std::move(basis);
      cd.sub = std::move(block);
    }
    if (self_conjugate) {
      auto [basis, block] = invariant_subspace(t, u, c.members);
      cd.basis = std::move(basis);
      cd.sub = std::move(block);
    }
    const auto m = cd.sub.rows();
    cd.sub -= cd.lambda * Eigen::MatrixXcd::Identity(m, m);

    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cd.sub);
    const auto& sv = svd.singularValues();
    int zero = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) <= rank_threshold) ++zero;
    int geo = self_conjugate ? (zero + 1) / 2 : zero;
    geo = std::clamp(geo, 1, cd.info.alg_mult);
    cd.info.geo_mult = geo;
    cd.structure = block_structure(cd.info.alg_mult, geo);
    total += cd.info.alg_mult;
    out.classes.push_back(std::move(cd));
  }
  if (total != 3) throw Error(ErrorKind::SpectralFailure, "class multiplicities do not sum to 3");
  std::stable_sort(out.classes.begin(), out.classes.end(),
                   [](const ClassData& x, const ClassData& y) { return class_order(x.info, y.info); });
  return out;
}

// Orthonormal basis (full coordinates) of ker (sub)^k with known dimension.
Eigen::MatrixXcd kernel_of_power(const ClassData& cd, int k, int dim) {
  const auto m = cd.sub.rows();
  if (dim >= m) return cd.basis;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(m, m);
  for (int i = 0; i < k; ++i) p = p * cd.sub;
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p, Eigen::ComputeFullV);
  return cd.basis * svd.matrixV().rightCols(dim);
}

// Direction of largest norm among the candidates after removing `exclude`.
ComplexVector6 leading_direction(const Eigen::MatrixXcd& candidates, const Eigen::MatrixXcd& exclude) {
  Eigen::MatrixXcd p = candidates;
  if (exclude.cols() > 0) p -= exclude * (exclude.adjoint() * candidates);
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p, Eigen::ComputeThinU);
  return svd.matrixU().col(0);
}

void append_orthonormal(Eigen::MatrixXcd& basis, ComplexVector6 v) {
  if (basis.cols() > 0) v -= basis * (basis.adjoint() * v);
  const double n = v.norm();
  if (n <= 1e-300) return;
  basis.conservativeResize(6, basis.cols() + 1);
  basis.col(basis.cols() - 1) = v / n;
}

int kernel_dim(const std::vector<int>& structure, int k, bool real_class) {
  int d = 0;
  for (int s : structure) d += std::min(s, k);
  return real_class ? 2 * d : d;
}

struct Chain {
  JordanBlock block;
  std::vector<QVector3> vectors;  // s_1 (eigenvector) .. s_size
};

void normalize_chain(Chain& chain, bool real_class) {
  auto& vs = chain.vectors;
  const QVector3& lead = vs.front();
  double biggest = 0.0;
  for (const auto& q : lead) biggest = std::max(biggest, q.norm());
  Quaternion phase(1.0);
  for (const auto& q : lead) {
    if (q.norm() <= 1e-6 * biggest) continue;
    if (real_class) {
      phase = q.conj() * (1.0 / q.norm());
    } else if (std::abs(q.first()) > 1e-6 * biggest) {
      phase = Quaternion::from_complex(std::conj(q.first()) / std::abs(q.first()));
    } else {
      phase = Quaternion::from_complex(q.second() / std::abs(q.second()));
    }
    break;
  }
  const double n = norm(lead);
  for (auto& v : vs) v = scale_right(v, phase * (n > 0 ? 1.0 / n : 1.0));
}

std::vector<Chain> build_chains(const Analysis& an) {
  std::vector<Chain> chains;
  for (const auto& cd : an.classes) {
    const bool real_class = cd.info.is_real();
    const ComplexMatrix6 n = an.phi - cd.lambda * ComplexMatrix6::Identity();
    Eigen::MatrixXcd taken(6, 0);  // H-span of eigenvectors already used
    const Eigen::MatrixXcd ker1 = kernel_of_power(cd, 1, kernel_dim(cd.structure, 1, real_class));
    for (int size : cd.structure) {
      std::vector<ComplexVector6> ws(static_cast<std::size_t>(size));
      if (size == 1) {
        ws[0] = leading_direction(ker1, taken);
      } else {
        const Eigen::MatrixXcd top = kernel_of_power(cd, size, kernel_dim(cd.structure, size, real_class));
        Eigen::MatrixXcd below = kernel_of_power(cd, size - 1, kernel_dim(cd.structure, size - 1, real_class));
        // Orthonormalize `below` before projecting.
        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(below);
        below = qr.householderQ() * Eigen::MatrixXcd::Identity(6, below.cols());
        ws[static_cast<std::size_t>(size - 1)] = leading_direction(top, below);
        for (int k = size - 1; k >= 1; --k) ws[static_cast<std::size_t>(k - 1)] = n * ws[static_cast<std::size_t>(k)];
      }
      append_orthonormal(taken, ws[0]);
      if (real_class) append_orthonormal(taken, hat(ws[0]));

      Chain chain;
      chain.block = {cd.info.rep, size};
      for (const auto& w : ws) chain.vectors.push_back(lift_vector(w));
      normalize_chain(chain, real_class);
      chains.push_back(std::move(chain));
    }
  }
  std::stable_sort(chains.begin(), chains.end(), [](const Chain& x, const Chain& y) {
    if (x.block.size != y.block.size) return x.block.size > y.block.size;
    return rep_order(x.block.rep, y.block.rep);
  });
  return chains;
}

JordanData assemble(const QMatrix3& a, const Analysis& an, double tol) {
  const auto chains = build_chains(an);

  JordanData jd;
  int col = 0;
  for (const auto& ch : chains) {
    jd.blocks.push_back(ch.block);
    for (const auto& v : ch.vectors) jd.S.set_column(col++, v);
  }
  const int mb = jd.max_block();
  jd.shape = mb == 3 ? JordanShape::J3 : (mb == 2 ? JordanShape::J2 : JordanShape::Diag);

  QMatrix3 s_inv;
  try {
    s_inv = inverse(jd.S, tol * tol);
  } catch (const Error&) {
    throw Error(ErrorKind::IllConditioned, "similarity transform is singular");
  }
  jd.residual = (a - jd.S * jd.canonical() * s_inv).norm() / std::max(1e-300, a.norm());
  if (!(jd.residual <= derived_tol(tol))) {
    throw Error(ErrorKind::IllConditioned, "Jordan reconstruction residual " + std::to_string(jd.residual));
  }
  return jd;
}

// Merges across the defect radius are made closest first and kept only as
// far as the resulting Jordan data reconstructs A.
Analysis settled_analysis(const QMatrix3& a, double tol) {
  Analysis an = analyze(a, tol, 6);
  if (an.loose_merges == 0) return an;
  for (int limit = an.loose_merges; limit >= 0; --limit) {
    try {
      Analysis candidate = limit == an.loose_merges ? an : analyze(a, tol, limit);
      (void)assemble(a, candidate, tol);
      return candidate;
    } catch (const Error&) {
    }
  }
  return an;
}

}  // namespace

std::vector<EigenClass> right_eigenvalues(const QMatrix3& a, double tol) {
  const Analysis an = settled_analysis(a, tol);
  std::vector<EigenClass> out;
  for (const auto& cd : an.classes) out.push_back(cd.info);
  return out;
}

JordanData jordan_form(const QMatrix3& a, double tol) {
  (void)inverse(a, tol);  // Singular on non-invertible input.
  return assemble(a, settled_analysis(a, tol), tol);
}

bool is_diagonalizable(const QMatrix3& a, double tol) { return jordan_form(a, tol).max_block() == 1; }

MinimalPolyStructure minimal_poly_structure(const JordanData& jd) {
  MinimalPolyStructure out;
  std::vector<std::pair<ClassRep, int>> seen;
  for (const auto& b : jd.blocks) {
    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& s) {
      return s.first.re == b.rep.re && s.first.im == b.rep.im;
    });
    if (it == seen.end()) {
      seen.emplace_back(b.rep, b.size);
    } else {
      it->second = std::max(it->second, b.size);
    }
  }
  for (const auto& [rep, power] : seen) {
    const int degree = rep.im == 0.0 ? 1 : 2;
    out.factors.push_back({degree, power});
    out.d = std::max(out.d, degree * power);
  }
  return out;
}

MinimalPolyStructure minimal_poly_structure(const QMatrix3& a, double tol) {
  return minimal_poly_structure(jordan_form(a, tol));
}

}  // namespace qproj
