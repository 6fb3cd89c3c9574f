#include "qproj/serialize.hpp"

#include <string>

namespace qproj {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(std::string("expected a number for ") + what);
  return j.get<double>();
}

}  // namespace

Json to_json(const Quaternion& q) { return Json::array({q.w, q.x, q.y, q.z}); }

Quaternion quaternion_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array() || j.size() != 4) fail("quaternion must be a number or a 4-array [w, x, y, z]");
  return {number(j[0], "w"), number(j[1], "x"), number(j[2], "y"), number(j[3], "z")};
}

Json to_json(const QMatrix3& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 3; ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return Json{{"matrix", std::move(rows)}};
}

Json to_json(const RealMatrix3& m) { return to_json(QMatrix3::from_real(m)); }

QMatrix3 matrix_from_json(const Json& j) {
  const Json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("matrix")) fail("object has no \"matrix\" field");
    rows = &j.at("matrix");
  }
  if (!rows->is_array() || rows->size() != 3) fail("matrix must have 3 rows");
  QMatrix3 m;
  for (int r = 0; r < 3; ++r) {
    const Json& row = (*rows)[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 3) fail("matrix rows must have 3 entries");
    for (int c = 0; c < 3; ++c) m(r, c) = quaternion_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

RealMatrix3 real_matrix_from_json(const Json& j) {
  const QMatrix3 m = matrix_from_json(j);
  if (m.max_imag() != 0.0) fail("expected a real matrix");
  return m.real_part();
}

Json to_json(const CharPoly6& p) {
  Json c = Json::array();
  for (double v : p.coeffs) c.push_back(v);
  return Json{{"coeffs", std::move(c)}};
}

Json to_json(const JordanData& jd) {
  Json blocks = Json::array();
  for (const auto& b : jd.blocks) blocks.push_back({{"re", b.rep.re}, {"im", b.rep.im}, {"size", b.size}});
  return Json{{"blocks", std::move(blocks)}, {"S", to_json(jd.S)}, {"shape", to_string(jd.shape)}, {"residual", jd.residual}};
}

Json to_json(const SimpleCertificate& c) { return Json{{"T", to_json(c.T)}, {"B", to_json(c.B)}}; }

SimpleCertificate certificate_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("T") || !j.contains("B")) fail("certificate needs \"T\" and \"B\"");
  return {matrix_from_json(j.at("T")), real_matrix_from_json(j.at("B"))};
}

Json to_json(const Decomposition& d) {
  Json factors = Json::array(), certs = Json::array();
  for (const auto& f : d.factors) factors.push_back(to_json(f));
  for (const auto& c : d.certificates) certs.push_back(to_json(c));
  return Json{{"factors", std::move(factors)},
              {"certificates", std::move(certs)},
              {"count", d.factors.size()},
              {"residual", d.residual}};
}

Json to_json(const ReversibilityReport& r) {
  Json out{{"reversible_sl", r.reversible_sl},
           {"strongly_reversible_sl", r.strongly_reversible_sl},
           {"negative_reversible", r.negative_reversible},
           {"reversible_psl", r.reversible_psl},
           {"reverser", r.reverser ? to_json(*r.reverser) : Json(nullptr)},
           {"reverser_kind", to_string(r.reverser_kind)},
           {"relation", to_string(r.relation)}};
  if (r.psl_involution_pair) {
    out["psl_involution_pair"] = Json::array({to_json(r.psl_involution_pair->first), to_json(r.psl_involution_pair->second)});
  } else {
    out["psl_involution_pair"] = nullptr;
  }
  out["residuals"] = {{"reverser", r.reverser_residual},
                      {"square", r.square_residual},
                      {"pair_product", r.pair_product_residual},
                      {"pair_square", r.pair_square_residual}};
  return out;
}

Json to_json(const DynType& t) { return Json{{"major", to_string(t.major)}, {"minor", to_string(t.minor)}}; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(e.what());
  }
}

}  // namespace qproj
