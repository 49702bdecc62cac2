#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"
#include "gib/polyclass.hpp"

using namespace gib;

TEST_CASE("companion matrix, last-column form") {
  IntMatrix c = companion_matrix(fx::cubic());
  REQUIRE(c.dim() == 3);
  CHECK(c(0, 2) == 1);
  CHECK(c(1, 2) == -3);
  CHECK(c(2, 2) == 1);
  CHECK(c(1, 0) == 1);
  CHECK(c(2, 1) == 1);
  CHECK(c(0, 0) == 0);

  IntMatrix one = companion_matrix(IntPolynomial{-1, 1});
  REQUIRE(one.dim() == 1);
  CHECK(one(0, 0) == 1);

  CHECK(companion_matrix(fx::golden()) == IntMatrix{{0, -1}, {1, 3}});
}

TEST_CASE("characteristic polynomial") {
  CHECK(char_poly(IntMatrix::identity(2)) == IntPolynomial{1, -2, 1});
  CHECK(char_poly(IntMatrix{{2, 1}, {1, 1}}) == fx::golden());
  // product of the two 2x2 blocks, expanded by hand: X^4 - 6X^3 + 11X^2 - 6X + 1
  CHECK(char_poly(fx::block_matrix()) == IntPolynomial{1, -6, 11, -6, 1});
  CHECK(char_poly(fx::block_matrix()) == pow(fx::golden(), 2));
}

TEST_CASE("isolate: quadratic formula oracle") {
  auto cl = isolate_root_moduli(fx::golden(), 64);
  REQUIRE(cl.size() == 2);
  const double s5 = std::sqrt(5.0);
  CHECK(cl[0].multiplicity == 1);
  CHECK(cl[1].multiplicity == 1);
  CHECK(fx::to_d(cl[0].lo) <= (3 - s5) / 2 + 1e-15);
  CHECK(fx::to_d(cl[0].hi) >= (3 - s5) / 2 - 1e-15);
  CHECK(fx::to_d(cl[1].lo) <= (3 + s5) / 2 + 1e-15);
  CHECK(fx::to_d(cl[1].hi) >= (3 + s5) / 2 - 1e-15);
  CHECK(fx::to_d(cl[0].hi - cl[0].lo) < 1e-12);
}

TEST_CASE("isolate: X^n - 1 is a single unit cluster") {
  for (int n = 1; n <= 7; ++n) {
    std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1, 0);
    c[0] = -1;
    c.back() = 1;
    auto cl = isolate_root_moduli(IntPolynomial(c), 128);
    REQUIRE(cl.size() == 1);
    CHECK(cl[0].multiplicity == n);
    CHECK(cl[0].contains(1));
  }
}

TEST_CASE("isolate: cubic against the bisection root") {
  const long double r = fx::cubic_real_root();
  auto cl = isolate_root_moduli(fx::cubic(), 256);
  REQUIRE(cl.size() == 2);
  CHECK(cl[0].multiplicity == 1);
  CHECK(cl[1].multiplicity == 2);
  CHECK(std::abs(cl[0].midpoint() - static_cast<double>(r)) < 1e-15);
  CHECK(std::abs(cl[1].midpoint() - static_cast<double>(1 / std::sqrt(r))) < 1e-14);
  // r (r^-1/2)^2 = 1
  CHECK(std::abs(cl[0].midpoint() * cl[1].midpoint() * cl[1].midpoint() - 1) < 1e-14);
}

TEST_CASE("classify examples") {
  auto c = classify_two_class(fx::cubic());
  auto* cert = std::get_if<TwoClassCertificate>(&c);
  REQUIRE(cert != nullptr);
  CHECK(cert->class_a.multiplicity == 1);
  CHECK(cert->class_b.multiplicity == 2);
  CHECK(std::abs(product_relation_residual(*cert)) < 1e-12);

  auto b = classify_two_class(pow(fx::golden(), 2));
  auto* bc = std::get_if<TwoClassCertificate>(&b);
  REQUIRE(bc != nullptr);
  CHECK(bc->class_a.multiplicity == 2);
  CHECK(bc->class_b.multiplicity == 2);
  CHECK(bc->class_a.midpoint() * bc->class_b.midpoint() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(bc->class_a.semisimple);

  CHECK(fx::outcome_name(classify_two_class(IntPolynomial{-1, 0, 1})) == "UnitModulusRoot");
  CHECK(fx::outcome_name(classify_two_class(IntPolynomial{-2, 0, 0, 1})) == "NotUnimodular");
  CHECK(fx::outcome_name(classify_two_class(IntPolynomial{1, 0, 1})) == "UnitModulusRoot");
  // four distinct moduli: 2.618, 0.382, 4.236, 0.236
  IntPolynomial four = fx::golden() * IntPolynomial{-1, -4, 1};
  CHECK(fx::outcome_name(classify_two_class(four)) == "MoreThanTwoClasses");
}

TEST_CASE("classify: every quadratic in the bound-3 box agrees with the oracle") {
  for (long a0 : {-1L, 1L}) {
    for (long a1 = -3; a1 <= 3; ++a1) {
      CAPTURE(a0);
      CAPTURE(a1);
      CHECK(fx::outcome_name(classify_two_class(IntPolynomial{a0, a1, 1})) == fx::quadratic_oracle(a0, a1));
    }
  }
}

TEST_CASE("lacunary: X^4 - 3X^2 + 1 has two classes of multiplicity 2") {
  auto c = classify_two_class(IntPolynomial{1, 0, -3, 0, 1});
  auto* cert = std::get_if<TwoClassCertificate>(&c);
  REQUIRE(cert != nullptr);
  CHECK(cert->class_a.multiplicity == 2);
  CHECK(cert->class_b.multiplicity == 2);
  CHECK(cert->class_b.midpoint() == doctest::Approx(std::sqrt(fx::golden_lambda())).epsilon(1e-14));
}

TEST_CASE("factor examples") {
  auto f = factor_over_integers(pow(fx::golden(), 2));
  REQUIRE(f.size() == 1);
  CHECK(f[0].poly == fx::golden());
  CHECK(f[0].multiplicity == 2);

  auto g = factor_over_integers(fx::cubic());
  REQUIRE(g.size() == 1);
  CHECK(g[0].poly == fx::cubic());
  CHECK(g[0].multiplicity == 1);

  auto h = factor_over_integers(IntPolynomial{1, -2, 1});
  REQUIRE(h.size() == 1);
  CHECK(h[0].poly == IntPolynomial{-1, 1});
  CHECK(h[0].multiplicity == 2);

  // re-expanding the factorization gives the input back
  IntPolynomial p = IntPolynomial{1, 1, 1} * IntPolynomial{-1, 1} * IntPolynomial{-1, 1} * fx::golden();
  auto fs = factor_over_integers(p);
  CHECK(fs.size() == 3);
  IntPolynomial back = pow(fs[0].poly, fs[0].multiplicity);
  for (std::size_t i = 1; i < fs.size(); ++i) back = back * pow(fs[i].poly, fs[i].multiplicity);
  CHECK(back == p);

  std::vector<mpz_class> big(18, 0);
  big[0] = 1;
  big.back() = 1;
  CHECK_THROWS_AS(factor_over_integers(IntPolynomial(big)), DegreeTooLarge);
}

TEST_CASE("leaf closure dims") {
  auto cert = std::get<TwoClassCertificate>(classify_two_class(fx::cubic()));
  CHECK(leaf_closure_dims(cert, ClassSelector::B) == 3);
  CHECK(leaf_closure_dims(cert, ClassSelector::A) == 3);

  auto bc = std::get<TwoClassCertificate>(classify_two_class(pow(fx::golden(), 2)));
  CHECK(leaf_closure_dims(bc, ClassSelector::B) == 4);

  auto gc = std::get<TwoClassCertificate>(classify_two_class(fx::golden()));
  CHECK(leaf_closure_dims(gc, ClassSelector::A) == 2);
  CHECK(leaf_closure_dims(gc, ClassSelector::B) == 2);
}

TEST_CASE("validate_certificate catches tampering") {
  auto cert = std::get<TwoClassCertificate>(classify_two_class(fx::cubic()));
  CHECK_NOTHROW(validate_certificate(cert));

  auto swapped = cert;
  std::swap(swapped.class_a.multiplicity, swapped.class_b.multiplicity);
  CHECK_THROWS_AS(validate_certificate(swapped), std::invalid_argument);

  auto shifted = cert;
  shifted.class_b.lo *= 2;
  shifted.class_b.hi *= 2;
  CHECK_THROWS_AS(validate_certificate(shifted), std::invalid_argument);
}

TEST_CASE("polynomial construction errors") {
  CHECK_THROWS_AS((IntPolynomial{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(IntPolynomial(std::vector<mpz_class>{3}), std::invalid_argument);
  CHECK(fx::cubic().to_string() == "X^3 - X^2 + 3X - 1");
}
