#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qproj/classify.hpp"
#include "qproj/generate.hpp"
#include "qproj/reversibility.hpp"
#include "qproj/serialize.hpp"
#include "qproj/simple_decomp.hpp"

using namespace qproj;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitVerify = 4;
constexpr double kNormalizeWindow = 1e-3;

struct Options {
  std::string command;
  std::string path = "-";
  double tol = kDefaultTol;
  bool text = false;
  std::uint64_t seed = 0;
  std::string type;
};

struct Outcome {
  Json out;
  int code = 0;
  std::vector<std::string> warnings;
};

int exit_code(ErrorKind k) {
  if (k == ErrorKind::ParseError) return kExitParse;
  if (k == ErrorKind::VerificationFailure) return kExitVerify;
  return kExitPrecondition;
}

QMatrix3 unimodular_input(const Json& item, double tol, Outcome& oc) {
  QMatrix3 a = matrix_from_json(item);
  const double det = det_h(a);
  const double gap = std::abs(det - 1.0);
  if (gap <= derived_tol(tol)) return a;
  if (gap < kNormalizeWindow) {
    oc.warnings.push_back("det_h = " + std::to_string(det) + "; input normalized to SL(3,H)");
    return normalize_to_sl(a, tol);
  }
  throw Error(ErrorKind::NotUnimodular, "det_h = " + std::to_string(det));
}

Json input_field(const QMatrix3& a) { return to_json(a).at("matrix"); }

Json classify_report(const QMatrix3& a, double tol) {
  const JordanData jd = jordan_form(a, tol);
  const DynType t = dynamical_type(jd, tol);
  Json out = to_json(t);
  out["f"] = nullptr;
  out["x"] = nullptr;
  out["y"] = nullptr;
  out["d"] = minimal_poly_structure(jd).d;
  out["simple"] = is_simple(jd, tol);
  out["via_simple"] = nullptr;
  out["certificate"] = nullptr;
  if (out["simple"].get<bool>()) {
    const SimpleCertificate cert = realify(a, tol);
    RealMatrix3 b = cert.B;
    if (b.determinant() < 0) b = -b;
    const SL3RAnalysis r = analyze_sl3r(b, tol);
    out["f"] = r.f;
    out["x"] = r.x;
    out["y"] = r.y;
    out["via_simple"] = to_json(classify_via_simple(a, tol));
    out["certificate"] = to_json(cert);
  }
  out["jordan"] = to_json(jd);
  out["input"] = input_field(a);
  return out;
}

Json simple_report(const QMatrix3& a, double tol) {
  const bool simple = is_simple(a, tol);
  Json out{{"simple", simple}, {"certificate", nullptr}, {"residual", nullptr}};
  if (simple) {
    const SimpleCertificate c = realify(a, tol);
    out["certificate"] = to_json(c);
    out["residual"] = c.residual(a);
  }
  out["input"] = input_field(a);
  return out;
}

// --- verification -----------------------------------------------------------

struct Checks {
  double threshold;
  Json list = Json::array();
  bool ok = true;

  void add(const std::string& name, double value) {
    const bool pass = std::isfinite(value) && value <= threshold;
    list.push_back({{"check", name}, {"value", value}, {"pass", pass}});
    ok = ok && pass;
  }
  void expect(const std::string& name, bool pass) {
    list.push_back({{"check", name}, {"pass", pass}});
    ok = ok && pass;
  }
};

double certificate_residual(const Json& j, const QMatrix3& target) {
  return certificate_from_json(j).residual(target);
}

void verify_decomposition(const Json& r, const QMatrix3& a, Checks& c) {
  const Json& fs = r.at("factors");
  const Json& cs = r.at("certificates");
  c.expect("factor count <= 4", fs.size() <= 4 && fs.size() >= 1);
  c.expect("one certificate per factor", fs.size() == cs.size());
  QMatrix3 prod = QMatrix3::identity();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    const QMatrix3 f = matrix_from_json(fs[k]);
    prod = prod * f;
    c.add("factor " + std::to_string(k) + " det_h", std::abs(det_h(f) - 1.0));
    if (k < cs.size()) c.add("factor " + std::to_string(k) + " certificate", certificate_residual(cs[k], f));
  }
  c.add("product", (prod - a).norm() / std::max(1.0, a.norm()));
}

void verify_reversibility(const Json& r, const QMatrix3& a, double tol, Checks& c) {
  const ReversibilityReport fresh = psl_report(a, tol);
  c.expect("reversible_sl", r.at("reversible_sl").get<bool>() == fresh.reversible_sl);
  c.expect("strongly_reversible_sl", r.at("strongly_reversible_sl").get<bool>() == fresh.strongly_reversible_sl);
  c.expect("negative_reversible", r.at("negative_reversible").get<bool>() == fresh.negative_reversible);
  c.expect("reversible_psl", r.at("reversible_psl").get<bool>() == fresh.reversible_psl);
  if (!r.at("reverser").is_null()) {
    const QMatrix3 g = matrix_from_json(r.at("reverser"));
    const auto kind = r.at("reverser_kind").get<std::string>();
    const auto rel = r.at("relation").get<std::string>() == "negative_inverse" ? ReverserRelation::NegativeInverse
                                                                               : ReverserRelation::Inverse;
    c.add("reverser relation", reverser_residual(a, g, rel, tol));
    c.add("reverser square", square_residual(g, kind == "involution" ? 1.0 : -1.0));
  } else {
    c.expect("reverser present iff reversible", !fresh.reversible_psl);
  }
  const Json& pair = r.at("psl_involution_pair");
  c.expect("pair present iff reversible_psl", pair.is_null() != fresh.reversible_psl);
  if (!pair.is_null()) {
    const QMatrix3 s1 = matrix_from_json(pair.at(0)), s2 = matrix_from_json(pair.at(1));
    const QMatrix3 p = s1 * s2;
    c.add("pair product", std::min((p - a).norm(), (p + a).norm()) / std::max(1.0, a.norm()));
    for (const QMatrix3* s : {&s1, &s2}) {
      c.add("pair square", std::min(square_residual(*s, 1.0), square_residual(*s, -1.0)));
    }
  }
}

void verify_classification(const Json& r, const QMatrix3& a, double tol, Checks& c) {
  const DynType t = dynamical_type(a, tol);
  c.expect("minor", r.at("minor").get<std::string>() == to_string(t.minor));
  c.expect("major", r.at("major").get<std::string>() == to_string(t.major));
  if (r.contains("certificate") && !r.at("certificate").is_null()) {
    c.add("simple certificate", certificate_residual(r.at("certificate"), a));
  }
  if (r.contains("via_simple") && !r.at("via_simple").is_null()) {
    c.expect("via_simple agrees", r.at("via_simple").at("minor").get<std::string>() == to_string(t.minor));
  }
}

Json verify_report(const Json& r, double tol) {
  Checks c{std::max(1e-8, 10.0 * tol)};
  if (!r.is_object()) throw Error(ErrorKind::ParseError, "report must be a JSON object");
  if (r.contains("error")) throw Error(ErrorKind::ParseError, "report records an error, nothing to verify");
  const Json& input = r.contains("input") ? r.at("input") : r;
  const QMatrix3 a = matrix_from_json(input);
  c.add("input det_h", std::abs(det_h(a) - 1.0));
  if (r.contains("factors")) {
    verify_decomposition(r, a, c);
  } else if (r.contains("reversible_sl")) {
    verify_reversibility(r, a, tol, c);
  } else if (r.contains("major")) {
    verify_classification(r, a, tol, c);
  } else if (r.contains("simple")) {
    const bool fresh = is_simple(a, tol);
    c.expect("simple", r.at("simple").get<bool>() == fresh);
    if (!r.at("certificate").is_null()) c.add("simple certificate", certificate_residual(r.at("certificate"), a));
  } else if (r.contains("label")) {
    const DynType t = dynamical_type(a, tol);
    c.expect("label", r.at("label").at("minor").get<std::string>() == to_string(t.minor));
  } else {
    throw Error(ErrorKind::ParseError, "unrecognized report kind");
  }
  return Json{{"verified", c.ok}, {"checks", c.list}};
}

// --- dispatch -----------------------------------------------------------------

Outcome run_item(const Options& opt, const Json& item) {
  Outcome oc;
  try {
    if (opt.command == "verify") {
      oc.out = verify_report(item, opt.tol);
      if (!oc.out.at("verified").get<bool>()) oc.code = kExitVerify;
      return oc;
    }
    const QMatrix3 a = unimodular_input(item, opt.tol, oc);
    if (opt.command == "classify") {
      oc.out = classify_report(a, opt.tol);
    } else if (opt.command == "reversibility") {
      oc.out = to_json(psl_report(a, opt.tol));
      oc.out["input"] = input_field(a);
    } else if (opt.command == "decompose") {
      oc.out = to_json(decompose_simple(a, opt.tol));
      oc.out["input"] = input_field(a);
    } else {
      oc.out = simple_report(a, opt.tol);
    }
  } catch (const Error& e) {
    oc.code = exit_code(e.kind());
    oc.out = Json{{"error", to_string(e.kind())}, {"message", e.what()}};
  } catch (const nlohmann::json::exception& e) {
    oc.code = kExitParse;
    oc.out = Json{{"error", "ParseError"}, {"message", e.what()}};
  }
  return oc;
}

bool looks_like_matrix(const Json& j) {
  if (!j.is_array() || j.size() != 3) return false;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 3) return false;
    for (const auto& e : row) {
      if (e.is_number()) continue;
      if (!e.is_array() || e.size() != 4) return false;
      for (const auto& v : e)
        if (!v.is_number()) return false;
    }
  }
  return true;
}

bool is_batch(const Json& j) { return j.is_array() && !looks_like_matrix(j); }

void print_text(std::ostream& os, const Json& j) {
  if (!j.is_object()) {
    os << j.dump() << "\n";
    return;
  }
  for (const auto& [key, value] : j.items()) {
    os << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

void emit(const Options& opt, const Json& j) {
  if (opt.text) {
    if (j.is_array()) {
      for (std::size_t k = 0; k < j.size(); ++k) {
        std::cout << "# item " << k << "\n";
        print_text(std::cout, j[k]);
      }
    } else {
      print_text(std::cout, j);
    }
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_gen(const Options& opt) {
  if (opt.type.empty()) throw Error(ErrorKind::ParseError, "gen requires --type");
  const Minor m = minor_from_kebab(opt.type);
  Rng rng(opt.seed);
  const Sample s = generate(m, rng);
  Json out{{"type", kebab_name(m)}, {"seed", opt.seed}, {"label", to_json(make_type(m))}};
  out["matrix"] = input_field(s.a);
  out["canonical"] = to_json(s.canonical);
  out["conjugator"] = to_json(s.g);
  emit(opt, out);
  return 0;
}

int run(const Options& opt) {
  if (opt.command == "gen") return run_gen(opt);
  const Json input = parse_json(read_input(opt.path));
  if (!is_batch(input)) {
    const Outcome oc = run_item(opt, input);
    for (const auto& w : oc.warnings) std::cerr << "warning: " << w << "\n";
    if (oc.out.contains("error")) std::cerr << "error: " << oc.out.at("message").get<std::string>() << "\n";
    emit(opt, oc.out);
    return oc.code;
  }
  std::vector<std::future<Outcome>> jobs;
  for (const auto& item : input) jobs.push_back(std::async(std::launch::async, run_item, std::cref(opt), std::cref(item)));
  Json all = Json::array();
  int code = 0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    Outcome oc = jobs[k].get();
    for (const auto& w : oc.warnings) std::cerr << "warning: item " << k << ": " << w << "\n";
    if (oc.out.contains("error")) std::cerr << "error: item " << k << ": " << oc.out.at("message").get<std::string>() << "\n";
    code = std::max(code, oc.code);
    all.push_back(std::move(oc.out));
  }
  emit(opt, all);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  if (const char* env = std::getenv("QPROJ_TOL")) {
    try {
      opt.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: QPROJ_TOL is not a number\n";
      return kExitParse;
    }
  }

  CLI::App app{"Classification, reversibility and simple-factor decomposition of 3x3 quaternionic matrices"};
  app.add_option("command", opt.command, "classify | reversibility | decompose | simple-check | gen | verify")
      ->required()
      ->check(CLI::IsMember({"classify", "reversibility", "decompose", "simple-check", "gen", "verify"}));
  app.add_option("path", opt.path, "input JSON file, or - for stdin");
  app.add_option("--tol", opt.tol, "relative tolerance")->check(CLI::PositiveNumber);
  auto* json_flag = app.add_flag("--json", "JSON output (default)");
  app.add_flag("--text", opt.text, "plain text output")->excludes(json_flag);
  app.add_option("--seed", opt.seed, "generator seed");
  app.add_option("--type", opt.type, "generator type, e.g. screw-loxodromic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitParse;
  }
  if (!(opt.tol > 0.0)) {
    std::cerr << "error: tolerance must be positive\n";
    return kExitParse;
  }

  try {
    return run(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}
