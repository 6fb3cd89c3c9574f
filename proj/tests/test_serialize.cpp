#include <doctest.h>

#include "qproj/serialize.hpp"
#include "support.hpp"

using namespace qtest;

TEST_CASE("quaternion and matrix round trip") {
  Rng rng(71);
  for (int n = 0; n < 100; ++n) {
    const QMatrix3 a = random_matrix(rng);
    const Json j = parse_json(to_json(a).dump());
    CHECK(mat_dist(matrix_from_json(j), a) == 0.0);
  }
  CHECK(distance(quaternion_from_json(Json(2.5)), {2.5}) == 0.0);
  const QMatrix3 bare = matrix_from_json(parse_json("[[1,0,0],[0,[0,0,1,0],0],[0,0,1]]"));
  CHECK(distance(bare(1, 1), Quaternion::j()) == 0.0);
}

TEST_CASE("malformed input raises ParseError") {
  const char* bad[] = {
      "{\"matrix\": [[1,0],[0,1]]}",
      "{\"matrix\": [[1,0,0],[0,1,0],[0,0,\"x\"]]}",
      "{\"matrix\": [[1,0,0],[0,1,0],[0,0,[1,2,3]]]}",
      "{\"nomatrix\": 1}",
      "[1, 2, 3]",
  };
  for (const char* text : bad) {
    try {
      (void)matrix_from_json(parse_json(text));
      FAIL("expected ParseError for " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }
  CHECK_THROWS_AS(parse_json("{not json"), Error);
  CHECK_THROWS_AS(real_matrix_from_json(parse_json("[[1,0,0],[0,[0,1,0,0],0],[0,0,1]]")), Error);
}

TEST_CASE("report schemas") {
  const Json jd = to_json(jordan_form(jordan2(2.0, 0.25)));
  CHECK(jd.at("shape") == "j2");
  CHECK(jd.at("blocks").size() == 2);
  CHECK(jd.at("blocks")[0].at("size") == 2);
  CHECK(jd.at("S").contains("matrix"));

  const Json cp = to_json(char_poly_h(QMatrix3::identity()));
  CHECK(cp.at("coeffs").size() == 7);

  const Json rr = to_json(psl_report(QMatrix3::identity()));
  for (const char* key : {"reversible_sl", "strongly_reversible_sl", "negative_reversible", "reversible_psl", "reverser",
                          "reverser_kind", "psl_involution_pair", "residuals"})
    CHECK(rr.contains(key));
  CHECK(rr.at("reverser_kind") == "skew-involution");

  const Json dj = to_json(decompose_simple(jordan3(Complex(0, 1))));
  CHECK(dj.at("factors").size() == 4);
  CHECK(dj.at("certificates").size() == 4);
  const SimpleCertificate c = certificate_from_json(dj.at("certificates")[0]);
  CHECK(c.residual(matrix_from_json(dj.at("factors")[0])) < 1e-12);
}
