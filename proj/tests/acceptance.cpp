// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "qproj/reversibility.hpp"
#include "qproj/simple_decomp.hpp"
#include "support.hpp"

using namespace qtest;

namespace {

std::uint64_t seed_base = 1000;

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double inverse_residual(const QMatrix3& a, const QMatrix3& g, double sign) {
  const QMatrix3 target = sign * inverse(a);
  return mat_dist(g * a * inverse(g), target) / target.norm();
}

double sq_residual(const QMatrix3& g, double sign) { return mat_dist(g * g, sign * QMatrix3::identity()); }

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict ac1() {
  Rng rng(seed_base + 1);
  const auto t0 = std::chrono::steady_clock::now();
  double worst_rev = 0, worst_sq = 0;
  int failures = 0;
  for (int n = 0; n < 10000; ++n) {
    const QMatrix3 a = conjugated(reversible_shape(n % 4, rng), rng);
    try {
      const QMatrix3 g = reverser(a);
      worst_rev = std::max(worst_rev, inverse_residual(a, g, 1.0));
      worst_sq = std::max(worst_sq, sq_residual(g, -1.0));
    } catch (const Error&) {
      ++failures;
    }
  }
  const double secs = elapsed(t0);
  return {failures == 0 && worst_rev < 1e-8 && worst_sq < 1e-8 && secs < 60,
          "n=10000 errors=" + std::to_string(failures) + fmt(" max_reverser=%.2e", worst_rev) +
              fmt(" max_square=%.2e", worst_sq) + fmt(" time=%.1fs", secs)};
}

// Real 36x36 matrix of g -> g A - A^-1 g on H^{3x3} = R^36.
Eigen::MatrixXd reverser_system(const QMatrix3& a) {
  const QMatrix3 ainv = inverse(a);
  Eigen::MatrixXd m(36, 36);
  const Quaternion units[4] = {Quaternion(1), Quaternion::i(), Quaternion::j(), Quaternion::k()};
  for (int col = 0; col < 36; ++col) {
    QMatrix3 e;
    e(col / 12, col / 4 % 3) = units[col % 4];
    const QMatrix3 img = e * a - ainv * e;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const Quaternion& q = img(r, c);
        const int base = 12 * r + 4 * c;
        m(base, col) = q.w;
        m(base + 1, col) = q.x;
        m(base + 2, col) = q.y;
        m(base + 3, col) = q.z;
      }
  }
  return m;
}

QMatrix3 from_coords(const Eigen::VectorXd& v) {
  QMatrix3 g;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      const int base = 12 * r + 4 * c;
      g(r, c) = Quaternion(v(base), v(base + 1), v(base + 2), v(base + 3));
    }
  return g;
}

Verdict ac2() {
  Rng rng(seed_base + 2);
  int strong_fail = 0, classifier_fail = 0, involutions = 0, empty = 0;
  double worst_rev = 0, worst_sq = 0, closest = 1e300;
  for (int shape = 0; shape < 4; ++shape) {
    for (int n = 0; n < 1000; ++n) {
      const QMatrix3 a = conjugated(strong_shape(shape, rng), rng);
      try {
        const QMatrix3 g = involution_reverser(a);
        worst_rev = std::max(worst_rev, inverse_residual(a, g, 1.0));
        worst_sq = std::max(worst_sq, sq_residual(g, 1.0));
      } catch (const Error&) {
        ++strong_fail;
      }
    }
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int shape = 0; shape < kNonStrongShapes; ++shape) {
    for (int n = 0; n < 1000; ++n) {
      const QMatrix3 a = conjugated(non_strong_shape(shape, rng), rng);
      if (is_strongly_reversible_sl(a)) ++classifier_fail;

      const Eigen::JacobiSVD<Eigen::MatrixXd> svd(reverser_system(a), Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      int nullity = 0;
      for (Eigen::Index k = 0; k < s.size(); ++k) nullity += s(k) <= 1e-8 * s(0) ? 1 : 0;
      if (nullity == 0) {
        ++empty;
        continue;
      }
      const Eigen::MatrixXd basis = svd.matrixV().rightCols(nullity);
      for (int t = 0; t < 10; ++t) {
        Eigen::VectorXd c(nullity);
        for (int k = 0; k < nullity; ++k) c(k) = normal(rng);
        const QMatrix3 g = from_coords(basis * c);
        const QMatrix3 g2 = g * g;
        const double mu = (g2(0, 0).w + g2(1, 1).w + g2(2, 2).w) / 3.0;
        const double off = mat_dist(g2, mu * QMatrix3::identity()) / std::max(1e-300, g2.norm());
        if (mu > 0) closest = std::min(closest, off);
        if (mu > 0 && off < 1e-6) ++involutions;
      }
    }
  }
  const bool pass = strong_fail == 0 && worst_rev < 1e-8 && worst_sq < 1e-8 && classifier_fail == 0 &&
                    involutions == 0 && empty == 0;
  return {pass, "strong_errors=" + std::to_string(strong_fail) + fmt(" max_reverser=%.2e", worst_rev) +
                    fmt(" max_square=%.2e", worst_sq) + " non_strong_misclassified=" +
                    std::to_string(classifier_fail) + " involutions_found=" + std::to_string(involutions) +
                    " empty_null_spaces=" + std::to_string(empty) + fmt(" closest=%.2e", closest)};
}

Verdict ac3() {
  Rng rng(seed_base + 3);
  int disagreements = 0;
  for (int n = 0; n < 10000; ++n) {
    const bool rev = n % 2 == 0;
    const QMatrix3 a = conjugated(rev ? reversible_shape(n / 2 % 4, rng) : nonreversible_shape(n / 2 % 2, rng), rng);
    const CharPoly6 p = char_poly_h(a);
    const bool coeffs = std::abs(p.c(5) - p.c(1)) < 1e-7 && std::abs(p.c(4) - p.c(2)) < 1e-7;
    if (is_reversible_sl(a) != coeffs || coeffs != rev) ++disagreements;
  }
  return {disagreements == 0, "n=10000 disagreements=" + std::to_string(disagreements)};
}

Verdict ac4() {
  Rng rng(seed_base + 4);
  int missing = 0;
  double worst_prod = 0, worst_sq = 0;
  for (int n = 0; n < 1000; ++n) {
    const QMatrix3 canonical = n % 2 == 0 ? negative_shape(n / 2 % 4, rng) : reversible_shape(n / 2 % 4, rng);
    const QMatrix3 a = conjugated(canonical, rng);
    const ReversibilityReport r = psl_report(a);
    if (!r.reversible_psl || !r.psl_involution_pair) {
      ++missing;
      continue;
    }
    const auto& [s1, s2] = *r.psl_involution_pair;
    const QMatrix3 p = s1 * s2;
    worst_prod = std::max(worst_prod, std::min(mat_dist(p, a), mat_dist(p, -a)) / a.norm());
    for (const QMatrix3* s : {&s1, &s2})
      worst_sq = std::max(worst_sq, std::min(sq_residual(*s, 1.0), sq_residual(*s, -1.0)));
  }
  return {missing == 0 && worst_prod < 1e-8 && worst_sq < 1e-8,
          "n=1000 missing=" + std::to_string(missing) + fmt(" max_product=%.2e", worst_prod) +
              fmt(" max_square=%.2e", worst_sq)};
}

Verdict ac5() {
  Rng rng(seed_base + 5);
  int bad_count = 0, bad_factor = 0;
  double worst = 0, worst_cert = 0;
  for (int fam = 0; fam < 5; ++fam) {
    for (int n = 0; n < 1000; ++n) {
      const QMatrix3 a = conjugated(family_shape(fam, rng), rng);
      const Decomposition d = decompose_simple(a);
      if (d.factors.size() != static_cast<std::size_t>(kFamilies[static_cast<std::size_t>(fam)].count)) ++bad_count;
      worst = std::max(worst, mat_dist(d.product(), a) / a.norm());
      for (const QMatrix3& f : d.factors) {
        if (!is_simple(f)) {
          ++bad_factor;
          continue;
        }
        worst_cert = std::max(worst_cert, realify(f).residual(f));
      }
    }
  }
  return {bad_count == 0 && bad_factor == 0 && worst < 1e-8 && worst_cert < 1e-8,
          "n=5000 wrong_counts=" + std::to_string(bad_count) + " non_simple=" + std::to_string(bad_factor) +
              fmt(" max_product=%.2e", worst) + fmt(" max_certificate=%.2e", worst_cert)};
}

Verdict ac6() {
  Rng rng(seed_base + 6);
  const auto minors = real_minors();
  int disagreements = 0;
  double worst_f = 0;
  for (int n = 0; n < 10000; ++n) {
    const Minor m = minors[static_cast<std::size_t>(n) % minors.size()];
    const RealSample s = generate_real(m, rng);
    const RootVerdict v = root_oracle(s.a);
    if (v.minor != m || classify_sl3r(s.a).minor != m) ++disagreements;
    const double y = static_cast<double>(s.a.cast<long double>().inverse().trace());
    const double f = discriminant_f(s.a.trace(), y);
    worst_f = std::max(worst_f, std::abs(f - v.discriminant) / std::max(1.0, std::abs(v.discriminant)));
  }
  const bool exact =
      discriminant_f(3, 3) == 0.0 && discriminant_f(3.5, 3.5) == 0.5625 && discriminant_f(0, 0) == -27.0;
  return {disagreements == 0 && worst_f < 1e-6 && exact,
          "n=10000 disagreements=" + std::to_string(disagreements) + fmt(" max_f_rel=%.2e", worst_f) +
              " exact_values=" + (exact ? "ok" : "wrong")};
}

Verdict ac7() {
  Rng rng(seed_base + 7);
  double worst_hom = 0, min_det = 1e300, worst_jordan = 0, worst_lift = 0;
  int errors = 0;
  const auto minors = all_minors();
  for (int n = 0; n < 10000; ++n) {
    const QMatrix3 a = random_matrix(rng), b = random_matrix(rng);
    const ComplexMatrix6 pab = complex_adjoint(a * b);
    worst_hom = std::max(worst_hom, (pab - complex_adjoint(a) * complex_adjoint(b)).norm() / std::max(1.0, pab.norm()));
    min_det = std::min(min_det, det_h(a));

    const Sample s = generate(minors[static_cast<std::size_t>(n) % minors.size()], rng);
    try {
      const JordanData jd = jordan_form(s.a);
      worst_jordan = std::max(worst_jordan, mat_dist(s.a, jd.S * jd.canonical() * inverse(jd.S, 1e-18)) / s.a.norm());
    } catch (const Error&) {
      ++errors;
    }

    const Eigen::ComplexEigenSolver<ComplexMatrix6> es(complex_adjoint(a));
    for (int k = 0; k < 6; ++k) {
      const Complex lambda = es.eigenvalues()(k);
      const ComplexVector6 v = es.eigenvectors().col(k);
      try {
        const QVector3 x = eigenvector_lift(a, v.head<3>(), v.tail<3>(), lambda);
        const QVector3 lhs = a * x, rhs = scale_right(x, Quaternion::from_complex(lambda));
        double r = 0;
        for (int c = 0; c < 3; ++c) r += distance(lhs[c], rhs[c]);
        worst_lift = std::max(worst_lift, r / (std::max(1.0, a.norm()) * norm(x)));
      } catch (const Error&) {
        ++errors;
      }
    }
  }
  return {worst_hom < 1e-12 && min_det >= -1e-12 && worst_jordan < 1e-8 && worst_lift < 1e-9 && errors == 0,
          "n=10000 errors=" + std::to_string(errors) + fmt(" max_homomorphism=%.2e", worst_hom) +
              fmt(" min_det_h=%.2e", min_det) + fmt(" max_jordan=%.2e", worst_jordan) +
              fmt(" max_lift=%.2e", worst_lift)};
}

Verdict ac8() {
  Rng rng(seed_base + 8);
  int disagreements = 0;
  for (int n = 0; n < 1000; ++n) {
    const QMatrix3 a = conjugated(simple_shape(rng), rng);
    if (!(classify_via_simple(a) == dynamical_type(a))) ++disagreements;
  }
  return {disagreements == 0, "n=1000 disagreements=" + std::to_string(disagreements)};
}

}  // namespace

// Usage: acceptance [ACn ...] [seed]
int main(int argc, char** argv) {
  std::vector<std::string> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("AC", 0) == 0) {
      only.push_back(arg);
    } else {
      seed_base = std::stoull(arg);
    }
  }
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},
      {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s %s\n", name, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
