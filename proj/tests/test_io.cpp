#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "gib/json_io.hpp"
#include "gib/report_io.hpp"
#include "gib/search.hpp"

using namespace gib;

TEST_CASE("integers: numbers when small, strings when large") {
  CHECK(integer_to_json(mpz_class(-7)).is_number_integer());
  mpz_class big("123456789012345678901234567890");
  Json j = integer_to_json(big);
  CHECK(j.is_string());
  CHECK(integer_from_json(j) == big);
  CHECK(integer_from_json(Json(42)) == 42);
  CHECK(integer_from_json(Json("-5")) == -5);
  CHECK_THROWS_AS(integer_from_json(Json("x1")), ParseError);
}

TEST_CASE("polynomials and matrices") {
  CHECK(poly_from_json(poly_to_json(fx::cubic())) == fx::cubic());
  CHECK(poly_to_json(fx::cubic()).dump() == "[-1,3,-1,1]");
  CHECK(matrix_from_json(matrix_to_json(fx::block_matrix())) == fx::block_matrix());
  CHECK(matrix_from_json(Json::parse(R"({"matrix": [[2,1],[1,1]]})")) == IntMatrix{{2, 1}, {1, 1}});
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]")), ParseError);
  CHECK_THROWS_AS(poly_from_json(Json::parse("[1,2]")), ParseError);
}

TEST_CASE("coefficient lists") {
  CHECK(parse_poly_list("-1,3,-1,1") == fx::cubic());
  CHECK(parse_poly_list(" -1, 0, 1 ") == IntPolynomial{-1, 0, 1});
  CHECK_THROWS_AS(parse_poly_list("1,-3,1,-1"), ParseError);
  bool negated = false;
  CHECK(parse_poly_list("1,-3,1,-1", &negated) == fx::cubic());
  CHECK(negated);
  CHECK(parse_poly_list("-1,3,-1,1", &negated) == fx::cubic());
  CHECK_FALSE(negated);
  CHECK_THROWS_AS(parse_poly_list("1,,2", &negated), ParseError);
  CHECK_THROWS_AS(parse_poly_list("1,2,3", &negated), ParseError);
}

TEST_CASE("certificate round trip") {
  auto cert = std::get<TwoClassCertificate>(classify_two_class(fx::cubic()));
  IntMatrix m = companion_matrix(fx::cubic());
  Json j = certificate_to_json(cert, &m);
  auto back = certificate_from_json(j);
  CHECK(back.poly == cert.poly);
  CHECK(back.class_a.lo == cert.class_a.lo);
  CHECK(back.class_b.hi == cert.class_b.hi);
  CHECK(back.class_b.multiplicity == 2);
  CHECK(certificate_matrix(j) == m);

  // certify's output wraps the certificate under "result"
  Json wrapped = {{"header", header_json("certify", Json::object(), std::nullopt, Json::object())["header"]},
                  {"result", classification_to_json(Classification(cert))}};
  CHECK(certificate_from_json(wrapped).poly == cert.poly);

  Json bad = j;
  bad["classes"][0]["mult"] = 2;
  CHECK_THROWS_AS(certificate_from_json(bad), ParseError);
}

TEST_CASE("classification round trip") {
  for (const auto& p : {fx::cubic(), IntPolynomial{-1, 0, 1}, IntPolynomial{2, 0, 1}}) {
    Classification c = classify_two_class(p);
    Classification back = classification_from_json(classification_to_json(c));
    CHECK(fx::outcome_name(back) == fx::outcome_name(c));
  }
  Classification u = Undecided{2048, "close moduli"};
  auto back = classification_from_json(classification_to_json(u));
  CHECK(std::get<Undecided>(back).precision_bits == 2048);
}

TEST_CASE("report json") {
  VerificationReport r;
  r.add("a", true, 1e-16, "ok");
  r.add("b", false, std::nullopt, "broken");
  r.info("c", 3, "note");
  Json j = report_to_json(r);
  REQUIRE(j.size() == 3);
  CHECK(j[0]["status"] == "PASS");
  CHECK(j[1]["status"] == "FAIL");
  CHECK(j[1]["residual"] == "NA");
  CHECK(j[2]["status"] == "INFO");
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("header is the first key and records seed and tolerances") {
  Tolerances t;
  Json h = header_json("build-verify", Json{{"x", 1}}, 0, tolerances_to_json(t));
  CHECK(h.begin().key() == "header");
  CHECK(h["header"]["version"] == tool_version());
  CHECK(h["header"]["seed"] == 0);
  CHECK(h["header"]["tolerances"]["gram"] == 1e-10);
}

TEST_CASE("eigen matrices and summaries") {
  Eigen::MatrixXd m(2, 3);
  m << 1, 2, 3, 4, 5, 6.5;
  CHECK(eigen_from_json(eigen_to_json(m)) == m);
  SearchSummary s;
  s.candidates = 10;
  s.certificates = 2;
  s.certificates_by_degree[3] = 2;
  s.rejections_by_reason["UnitModulusRoot"] = 8;
  s.rejections = 8;
  CHECK(summary_to_json(summary_from_json(summary_to_json(s))) == summary_to_json(s));
}
