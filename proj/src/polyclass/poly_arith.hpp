#pragma once

// Dense polynomial arithmetic over Z and Q used by the classification and
// factorization code. Coefficients are constant term first; the zero
// polynomial is the empty vector.

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "gib/polynomial.hpp"

namespace gib::detail {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

template <class Poly>
void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

template <class Poly>
int deg(const Poly& p) {
  return static_cast<int>(p.size()) - 1;
}

QPoly to_q(const ZPoly& p);
/// Scale to a primitive integer polynomial with positive leading coefficient.
ZPoly to_primitive_z(const QPoly& p);
ZPoly to_z(const IntPolynomial& p);
IntPolynomial to_int_polynomial(const ZPoly& p);

QPoly mul(const QPoly& a, const QPoly& b);
ZPoly mul(const ZPoly& a, const ZPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& p);
ZPoly derivative(const ZPoly& p);
/// Euclidean division over Q; returns (quotient, remainder).
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// Monic gcd over Q (empty if both inputs are zero).
QPoly gcd(QPoly a, QPoly b);
QPoly make_monic(QPoly p);

/// Exact division in Z[x]; returns false (and leaves q unspecified) when b
/// does not divide a. Requires b monic or leading coefficient +-1.
bool divides_exactly(const ZPoly& a, const ZPoly& b, ZPoly& q);

mpz_class eval(const ZPoly& p, const mpz_class& x);
mpq_class eval(const QPoly& p, const mpq_class& x);

/// Yun square-free decomposition of a monic integer polynomial: returns
/// pairs (s_k, k) with p = prod s_k^k, each s_k monic, square-free and
/// nonconstant, pairwise coprime.
std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p);

/// X^n p(1/X) without normalization.
ZPoly reversed(const ZPoly& p);

/// Number of roots of a square-free integer polynomial on the unit circle.
int unit_circle_roots_squarefree(const ZPoly& s);

/// Largest e such that p(X) = g(X^e); returns (g, e).
std::pair<ZPoly, int> lacunary_reduce(const ZPoly& p);

/// Number of distinct real roots of a square-free polynomial in the open
/// interval (lo, hi), neither endpoint being a root (Sturm sequence).
int sturm_count(const QPoly& p, const mpq_class& lo, const mpq_class& hi);

}  // namespace gib::detail
