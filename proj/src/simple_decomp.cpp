#include "qproj/simple_decomp.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace qproj {

double SimpleCertificate::residual(const QMatrix3& a) const {
  const QMatrix3 rebuilt = T * QMatrix3::from_real(B) * inverse(T, 1e-300);
  return (a - rebuilt).norm() / std::max(1e-300, a.norm());
}

QMatrix3 Decomposition::product() const {
  QMatrix3 p = QMatrix3::identity();
  for (const auto& f : factors) p = p * f;
  return p;
}

namespace {

Quaternion qc(Complex c) { return Quaternion::from_complex(c); }
Complex e(double t) { return std::polar(1.0, t); }

QMatrix3 cdiag(const Diag3& d) { return QMatrix3::diagonal(qc(d[0]), qc(d[1]), qc(d[2])); }

QMatrix3 permuted(const QMatrix3& s, const std::array<int, 3>& cols) {
  QMatrix3 out;
  for (int k = 0; k < 3; ++k) out.set_column(k, s.column(cols[static_cast<std::size_t>(k)]));
  return out;
}

// (C2 C1)^-1 on slots 1, 2, with C1 = diag(1, j) and C2 = [[1, 1], [i, -i]].
QMatrix3 rotation_conjugator_inverse() {
  const QMatrix3 c1 = QMatrix3::diagonal(1.0, Quaternion::j(), 1.0);
  const QMatrix3 c2{{1.0, 1.0, 0.0}, {Quaternion::i(), -Quaternion::i(), 0.0}, {0.0, 0.0, 1.0}};
  return inverse(c2 * c1, 1e-300);
}

// Certificate for a complex diagonal matrix that is simple: either all
// entries real, or two entries in one non-real class plus a real one.
SimpleCertificate diag_certificate(const Diag3& d) {
  SimpleCertificate cert;
  double scale = 0.0;
  for (const auto& v : d) scale = std::max(scale, std::abs(v));
  if (std::abs(d[0].imag()) + std::abs(d[1].imag()) + std::abs(d[2].imag()) <= 1e-15 * scale) {
    cert.T = QMatrix3::identity();
    cert.B = RealMatrix3::Zero();
    for (int k = 0; k < 3; ++k) cert.B(k, k) = d[static_cast<std::size_t>(k)].real();
    return cert;
  }
  constexpr std::array<std::array<int, 3>, 3> kChoices{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  double best = std::numeric_limits<double>::infinity();
  std::array<int, 3> pick{0, 1, 2};
  bool flip = false;
  for (const auto& c : kChoices) {
    const Complex da = d[static_cast<std::size_t>(c[0])], db = d[static_cast<std::size_t>(c[1])];
    const double same = std::abs(db - da), conj = std::abs(db - std::conj(da));
    const double cost = std::abs(d[static_cast<std::size_t>(c[2])].imag()) + std::min(same, conj);
    if (cost < best) {
      best = cost;
      pick = c;
      flip = conj < same;
    }
  }
  QMatrix3 perm;
  for (int k = 0; k < 3; ++k) perm(pick[static_cast<std::size_t>(k)], k) = 1.0;
  const QMatrix3 flip_m = QMatrix3::diagonal(1.0, flip ? Quaternion::j() : Quaternion(1.0), 1.0);
  cert.T = perm * flip_m * rotation_conjugator_inverse();
  const Complex a = d[static_cast<std::size_t>(pick[0])];
  cert.B << a.real(), a.imag(), 0.0, -a.imag(), a.real(), 0.0, 0.0, 0.0, d[static_cast<std::size_t>(pick[2])].real();
  return cert;
}

SimpleCertificate real_certificate(const QMatrix3& t, const QMatrix3& b) { return {t, b.real_part()}; }

SimpleCertificate conjugated(const QMatrix3& s, SimpleCertificate c) {
  c.T = s * c.T;
  return c;
}

struct Builder {
  QMatrix3 S;
  QMatrix3 S_inv;
  Decomposition out;

  void add(const QMatrix3& local, const SimpleCertificate& cert) {
    out.factors.push_back(S * local * S_inv);
    out.certificates.push_back(conjugated(S, cert));
  }
  void add_diag(const Diag3& d) { add(cdiag(d), diag_certificate(d)); }

  // diag(e^{i t0}, e^{i t1}, e^{i t2}) as three simple factors.
  void unit_diagonal(double t0, double t1, double t2) {
    const double phi = t1 + t2;
    const double mu = 0.5 * (t0 + phi), nu = 0.5 * (t0 - phi);
    add_diag({e(mu), e(mu), 1.0});
    add_diag({e(nu), e(-nu), 1.0});
    add_diag({1.0, e(-t2), e(t2)});
  }
};

SimpleCertificate realify_from(const QMatrix3& a, const JordanData& jd, double tol) {
  if (a.is_real(tol)) return {QMatrix3::identity(), a.real_part()};
  bool all_real = true;
  for (const auto& b : jd.blocks) all_real = all_real && b.rep.im == 0.0;
  if (all_real) return real_certificate(jd.S, jd.canonical());
  // One non-real class of multiplicity two, both blocks of size one.
  std::array<int, 3> cols{0, 1, 2};
  for (int k = 0; k < 3; ++k)
    if (jd.blocks[static_cast<std::size_t>(k)].rep.im == 0.0) {
      cols = {(k + 1) % 3, (k + 2) % 3, k};
      if (cols[0] > cols[1]) std::swap(cols[0], cols[1]);
    }
  const Complex alpha = jd.blocks[static_cast<std::size_t>(cols[0])].rep.value();
  const Complex xi = jd.blocks[static_cast<std::size_t>(cols[2])].rep.value();
  return conjugated(permuted(jd.S, cols), diag_certificate({alpha, alpha, xi}));
}

}  // namespace

bool is_simple(const JordanData& jd, double tol) {
  std::vector<ClassRep> nonreal;
  for (const auto& b : jd.blocks)
    if (b.rep.im != 0.0) nonreal.push_back(b.rep);
  if (nonreal.empty()) return true;
  return jd.max_block() == 1 && nonreal.size() == 2 && same_class(nonreal[0], nonreal[1], derived_tol(tol));
}

bool is_simple(const QMatrix3& a, double tol) {
  require_unimodular(a, tol);
  return is_simple(jordan_form(a, tol), tol);
}

SimpleCertificate realify(const QMatrix3& a, double tol) {
  const JordanData jd = jordan_form(a, tol);
  if (!is_simple(jd, tol)) throw Error(ErrorKind::NotSimple, "matrix is not conjugate to a real matrix");
  return realify_from(a, jd, tol);
}

std::pair<QMatrix3, QMatrix3> pair_rotation_split(double theta, double phi) {
  const double mu = 0.5 * (theta + phi), nu = 0.5 * (theta - phi);
  return {cdiag({e(mu), e(mu), 1.0}), cdiag({e(nu), e(-nu), 1.0})};
}

Decomposition decompose_simple(const QMatrix3& a, double tol) {
  require_unimodular(a, tol);
  const JordanData jd = jordan_form(a, tol);
  Builder bld;
  if (is_simple(jd, tol)) {
    bld.out.factors.push_back(a);
    bld.out.certificates.push_back(realify_from(a, jd, tol));
  } else {
    bld.S = jd.S;
    bld.S_inv = inverse(jd.S, tol * tol);
    const auto& bs = jd.blocks;
    const auto unit = [&](const JordanBlock& b) { return std::abs(b.rep.modulus() - 1.0) <= derived_tol(tol); };

    if (jd.shape == JordanShape::Diag) {
      if (!(unit(bs[0]) && unit(bs[1]) && unit(bs[2]))) {
        const RealMatrix3 mod = RealMatrix3(Eigen::Vector3d(bs[0].rep.modulus(), bs[1].rep.modulus(),
                                                            bs[2].rep.modulus()).asDiagonal());
        bld.add(QMatrix3::from_real(mod), {QMatrix3::identity(), mod});
      }
      bld.unit_diagonal(bs[0].rep.angle(), bs[1].rep.angle(), bs[2].rep.angle());
    } else if (jd.shape == JordanShape::J2) {
      const double t = bs[0].rep.angle(), psi = bs[1].rep.angle();
      if (unit(bs[0])) {
        const QMatrix3 w = cdiag({e(-t), e(t), 1.0});
        const QMatrix3 q{{qc(e(t)), 1.0, 0.0}, {0.0, qc(e(-t)), 0.0}, {0.0, 0.0, 1.0}};
        SimpleCertificate qcert;
        if (q.is_real(1e-14)) {
          qcert = {w, q.real_part()};
        } else {
          const QMatrix3 v{{1.0, 1.0, 0.0}, {0.0, qc(Complex(0.0, -2.0 * std::sin(t))), 0.0}, {0.0, 0.0, 1.0}};
          qcert = conjugated(w * v, diag_certificate({e(t), e(-t), 1.0}));
        }
        bld.add(w * q * inverse(w, 1e-300), qcert);
        const double mu = 0.5 * (2.0 * t + psi), nu = 0.5 * (2.0 * t - psi);
        bld.add_diag({1.0, e(mu), e(mu)});
        bld.add_diag({1.0, e(nu), e(-nu)});
      } else {
        const double r = bs[0].rep.modulus(), s = bs[1].rep.modulus();
        const QMatrix3 p{{r, qc(e(-t)), 0.0}, {0.0, r, 0.0}, {0.0, 0.0, s}};
        const QMatrix3 d_inv = cdiag({e(-t), 1.0, 1.0});
        RealMatrix3 b;
        b << r, 1.0, 0.0, 0.0, r, 0.0, 0.0, 0.0, s;
        bld.add(p, {d_inv, b});
        bld.unit_diagonal(t, t, psi);
      }
    } else {
      const double t = bs[0].rep.angle();
      bld.add_diag({e(t), e(t), 1.0});
      bld.add_diag({1.0, e(0.5 * t), e(0.5 * t)});
      bld.add_diag({1.0, e(-0.5 * t), e(0.5 * t)});
      const QMatrix3 u{{1.0, qc(e(-t)), 0.0}, {0.0, 1.0, qc(e(-t))}, {0.0, 0.0, 1.0}};
      RealMatrix3 b;
      b << 1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0;
      bld.add(u, {cdiag({e(-2.0 * t), e(-t), 1.0}), b});
    }
  }
  Decomposition& out = bld.out;
  out.residual = (out.product() - a).norm() / std::max(1e-300, a.norm());
  return out;
}

}  // namespace qproj
