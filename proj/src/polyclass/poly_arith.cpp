#include "poly_arith.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

namespace gib::detail {

QPoly to_q(const ZPoly& p) {
  QPoly q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[i];
  return q;
}

ZPoly to_primitive_z(const QPoly& p) {
  if (p.empty()) return {};
  mpz_class den = 1;
  for (const auto& c : p) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  ZPoly z(p.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    mpq_class scaled = p[i] * den;
    z[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (z.back() < 0) g = -g;
  for (auto& c : z) c /= g;
  return z;
}

ZPoly to_z(const IntPolynomial& p) { return p.coeffs(); }

IntPolynomial to_int_polynomial(const ZPoly& p) { return IntPolynomial(p); }

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

QPoly derivative(const QPoly& p) {
  if (p.size() <= 1) return {};
  QPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  trim(d);
  return d;
}

ZPoly derivative(const ZPoly& p) {
  if (p.size() <= 1) return {};
  ZPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  trim(d);
  return d;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  QPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {QPoly{}, r};
  QPoly q(r.size() - b.size() + 1);
  const mpq_class& lead = b.back();
  for (int i = deg(r) - deg(b); i >= 0; --i) {
    const std::size_t top = static_cast<std::size_t>(i) + b.size() - 1;
    if (r[top] == 0) continue;
    mpq_class f = r[top] / lead;
    q[static_cast<std::size_t>(i)] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[static_cast<std::size_t>(i) + j] -= f * b[j];
  }
  trim(q);
  trim(r);
  return {q, r};
}

QPoly make_monic(QPoly p) {
  trim(p);
  if (p.empty()) return p;
  mpq_class lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = make_monic(std::move(r));
  }
  return make_monic(std::move(a));
}

bool divides_exactly(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  if (b.empty()) return false;
  ZPoly r = a;
  trim(r);
  if (r.empty()) {
    q.clear();
    return true;
  }
  if (r.size() < b.size()) return false;
  const mpz_class& lead = b.back();
  q.assign(r.size() - b.size() + 1, 0);
  for (int i = deg(r) - deg(b); i >= 0; --i) {
    const std::size_t top = static_cast<std::size_t>(i) + b.size() - 1;
    if (r[top] == 0) continue;
    if (!mpz_divisible_p(r[top].get_mpz_t(), lead.get_mpz_t())) return false;
    mpz_class f = r[top] / lead;
    q[static_cast<std::size_t>(i)] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[static_cast<std::size_t>(i) + j] -= f * b[j];
  }
  trim(r);
  trim(q);
  return r.empty();
}

mpz_class eval(const ZPoly& p, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<std::pair<ZPoly, int>> squarefree_decomposition(const ZPoly& p) {
  std::vector<std::pair<ZPoly, int>> out;
  QPoly f = make_monic(to_q(p));
  if (deg(f) < 1) return out;
  QPoly df = derivative(f);
  QPoly b = gcd(f, df);
  QPoly c = divmod(f, b).first;
  QPoly d = sub(divmod(df, b).first, derivative(c));
  for (int k = 1; deg(c) >= 1; ++k) {
    QPoly a = gcd(c, d);
    if (deg(a) >= 1) out.emplace_back(to_primitive_z(a), k);
    c = divmod(c, a).first;
    d = sub(divmod(d, a).first, derivative(c));
  }
  return out;
}

ZPoly reversed(const ZPoly& p) { return ZPoly(p.rbegin(), p.rend()); }

std::pair<ZPoly, int> lacunary_reduce(const ZPoly& p) {
  int e = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i] != 0) e = std::gcd(e, static_cast<int>(i));
  }
  if (e <= 1) return {p, 1};
  ZPoly g(p.size() / static_cast<std::size_t>(e) + 1);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = p[i * static_cast<std::size_t>(e)];
  trim(g);
  return {g, e};
}

namespace {

int sign_changes(const std::vector<QPoly>& seq, const mpq_class& x) {
  int changes = 0;
  int last = 0;
  for (const auto& s : seq) {
    const int v = sgn(eval(s, x));
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

}  // namespace

int sturm_count(const QPoly& p, const mpq_class& lo, const mpq_class& hi) {
  std::vector<QPoly> seq;
  seq.push_back(p);
  seq.push_back(derivative(p));
  while (!seq.back().empty() && deg(seq.back()) > 0) {
    QPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

int unit_circle_roots_squarefree(const ZPoly& s) {
  // A root on the unit circle satisfies 1/z = conj(z), so it is also a root
  // of the reversed polynomial; the shared part is closed under z -> 1/z.
  QPoly g = gcd(to_q(s), to_q(reversed(s)));
  int count = 0;
  for (const long r : {1L, -1L}) {
    if (deg(g) >= 1 && eval(g, mpq_class(r)) == 0) {
      g = divmod(g, QPoly{mpq_class(-r), mpq_class(1)}).first;
      ++count;
    }
  }
  if (deg(g) < 1) return count;
  // What remains pairs each root with its distinct inverse: even degree,
  // palindromic. Substitute y = x + 1/x; unit-circle pairs map to real
  // y in (-2, 2).
  const int n = deg(g);
  assert(n % 2 == 0);
  const int half = n / 2;
  // Dickson polynomials D_k(y) = x^k + x^-k.
  std::vector<QPoly> dickson{QPoly{2}, QPoly{0, 1}};
  for (int k = 2; k <= half; ++k) {
    QPoly next = sub(mul(QPoly{0, 1}, dickson[static_cast<std::size_t>(k - 1)]),
                     dickson[static_cast<std::size_t>(k - 2)]);
    dickson.push_back(std::move(next));
  }
  QPoly h{g[static_cast<std::size_t>(half)]};
  for (int k = 1; k <= half; ++k) {
    const mpq_class& c = g[static_cast<std::size_t>(half + k)];
    const QPoly& dk = dickson[static_cast<std::size_t>(k)];
    if (h.size() < dk.size()) h.resize(dk.size());
    for (std::size_t i = 0; i < dk.size(); ++i) h[i] += c * dk[i];
  }
  trim(h);
  return count + 2 * sturm_count(h, mpq_class(-2), mpq_class(2));
}

}  // namespace gib::detail
