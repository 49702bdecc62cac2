// Integer factorization for small degrees: square-free split, integer-root
// stripping, then Kronecker's method for monic factors of degree >= 2.

#include <algorithm>
#include <functional>
#include <optional>

#include "gib/polyclass.hpp"
#include "poly_arith.hpp"
#include "roots.hpp"

namespace gib {

namespace {

using detail::QPoly;
using detail::ZPoly;

// Positive divisors of |v| by trial division; empty when |v| is too large
// to factor this way.
std::optional<std::vector<mpz_class>> positive_divisors(const mpz_class& v) {
  mpz_class n = abs(v);
  if (n == 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 60) return std::nullopt;
  std::vector<std::pair<mpz_class, int>> primes;
  mpz_class m = n;
  for (mpz_class p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e > 0) primes.emplace_back(p, e);
  }
  if (m > 1) primes.emplace_back(m, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : primes) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::optional<ZPoly> integer_root_factor(const ZPoly& f) {
  if (f[0] == 0) return ZPoly{0, 1};
  auto divs = positive_divisors(f[0]);
  if (!divs) {
    // Huge constant term: fall back to the rational root bound |r| <= |a0|
    // would be hopeless; factors of degree 1 are then searched by Kronecker
    // at other points, which is equally exact.
    return std::nullopt;
  }
  for (const auto& d : *divs) {
    for (const mpz_class r : {d, mpz_class(-d)}) {
      if (detail::eval(f, r) == 0) return ZPoly{-r, 1};
    }
  }
  return std::nullopt;
}

// Search for a monic factor of exact degree d >= 1 of a monic f with no
// factor of degree < d.
std::optional<ZPoly> kronecker_factor(const ZPoly& f, int d) {
  struct Point {
    mpz_class x, fx;
    std::vector<mpz_class> divisors;
  };
  std::vector<Point> pool;
  for (long step = 0; static_cast<int>(pool.size()) < d + 6 && step < 200; ++step) {
    const long x = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
    mpz_class fx = detail::eval(f, mpz_class(x));
    if (fx == 0) continue;  // cannot happen once linear factors are gone
    auto divs = positive_divisors(fx);
    if (!divs) continue;
    pool.push_back({x, fx, std::move(*divs)});
  }
  if (static_cast<int>(pool.size()) < d) return std::nullopt;
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Point& a, const Point& b) { return a.divisors.size() < b.divisors.size(); });
  std::vector<Point> nodes(pool.begin(), pool.begin() + d);
  std::vector<Point> checks(pool.begin() + d, pool.end());

  // g = prod (X - x_i) + sum v_i l_i(X) with Lagrange basis l_i.
  QPoly node_poly{1};
  for (const auto& n : nodes) node_poly = detail::mul(node_poly, QPoly{mpq_class(-n.x), 1});
  std::vector<QPoly> basis;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    QPoly l{1};
    mpq_class den = 1;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      l = detail::mul(l, QPoly{mpq_class(-nodes[j].x), 1});
      den *= mpq_class(nodes[i].x - nodes[j].x);
    }
    for (auto& c : l) c /= den;
    basis.push_back(std::move(l));
  }

  std::vector<std::size_t> choice(nodes.size(), 0);
  std::vector<mpz_class> values(nodes.size());
  const auto candidates = [&](std::size_t i) { return 2 * nodes[i].divisors.size(); };
  while (true) {
    QPoly g = node_poly;
    g.resize(static_cast<std::size_t>(d) + 1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& dv = nodes[i].divisors[choice[i] / 2];
      values[i] = (choice[i] % 2 == 0) ? dv : mpz_class(-dv);
      for (std::size_t k = 0; k < basis[i].size(); ++k) g[k] += values[i] * basis[i][k];
    }
    bool integral = true;
    ZPoly gz(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g[k].get_den() != 1) {
        integral = false;
        break;
      }
      gz[k] = g[k].get_num();
    }
    if (integral) {
      detail::trim(gz);
      bool ok = detail::deg(gz) == d;
      for (const auto& c : checks) {
        if (!ok) break;
        mpz_class gv = detail::eval(gz, c.x);
        ok = gv != 0 && mpz_divisible_p(c.fx.get_mpz_t(), gv.get_mpz_t());
      }
      ZPoly q;
      if (ok && detail::divides_exactly(f, gz, q)) return gz;
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == candidates(i)) {
      choice[i] = 0;
      ++i;
    }
    if (i == choice.size()) return std::nullopt;
  }
}

std::vector<ZPoly> factor_squarefree(ZPoly f) {
  std::vector<ZPoly> out;
  int d = 1;
  while (detail::deg(f) >= 2 * d) {
    std::optional<ZPoly> g = (d == 1) ? integer_root_factor(f) : std::nullopt;
    if (!g) g = kronecker_factor(f, d);
    if (!g) {
      ++d;
      continue;
    }
    ZPoly q;
    detail::divides_exactly(f, *g, q);
    out.push_back(std::move(*g));
    f = std::move(q);
  }
  if (detail::deg(f) >= 1) out.push_back(std::move(f));
  return out;
}

}  // namespace

std::vector<Factor> factor_over_integers(const IntPolynomial& p, int max_degree) {
  if (p.degree() > max_degree) {
    throw DegreeTooLarge("factorization supports degree <= " + std::to_string(max_degree) + ", got " +
                         std::to_string(p.degree()));
  }
  std::vector<Factor> out;
  for (auto& [s, k] : detail::squarefree_decomposition(detail::to_z(p))) {
    for (auto& g : factor_squarefree(s)) out.push_back({IntPolynomial(std::move(g)), k});
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
    if (a.poly != b.poly) return a.poly < b.poly;
    return a.multiplicity < b.multiplicity;
  });
  return out;
}

std::vector<FactorClassSplit> split_factors_by_class(const TwoClassCertificate& cert) {
  const auto& a = cert.class_a;
  const auto& b = cert.class_b;
  std::vector<FactorClassSplit> out;
  for (auto& factor : factor_over_integers(cert.poly)) {
    auto [g, e] = detail::lacunary_reduce(detail::to_z(factor.poly));
    detail::RootEnclosure enclosure(std::move(g));
    bool assigned = false;
    FactorClassSplit split{factor};
    for (int bits = kBasePrecisionBits; bits <= 8 * kDefaultMaxPrecisionBits && !assigned; bits *= 2) {
      auto res = enclosure.certify(bits);
      if (!res.ok) continue;
      split.in_a = split.in_b = false;
      assigned = true;
      for (const auto& c : res.components) {
        auto lo = detail::root_bounds(c.modulus_lo, e, bits + 32).first;
        auto hi = detail::root_bounds(c.modulus_hi, e, bits + 32).second;
        const bool hits_a = !(hi < a.lo || a.hi < lo);
        const bool hits_b = !(hi < b.lo || b.hi < lo);
        if (hits_a == hits_b) {
          assigned = false;
          break;
        }
        split.in_a = split.in_a || hits_a;
        split.in_b = split.in_b || hits_b;
      }
    }
    if (!assigned) {
      throw PrecisionExhausted("could not place the roots of " + factor.poly.to_string() + " in a class",
                               8 * kDefaultMaxPrecisionBits);
    }
    out.push_back(std::move(split));
  }
  return out;
}

int leaf_closure_dims(const TwoClassCertificate& cert, ClassSelector e_class) {
  int dim = 0;
  for (const auto& s : split_factors_by_class(cert)) {
    const bool hit = e_class == ClassSelector::A ? s.in_a : s.in_b;
    if (hit) dim += s.factor.poly.degree() * s.factor.multiplicity;
  }
  return dim;
}

}  // namespace gib
