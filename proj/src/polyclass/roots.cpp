#include "roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gib::detail {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

// Minimal complex arithmetic that works for both long double and mpf_class
// (std::complex is only specified for the built-in floating types).
template <class R>
struct Cx {
  R re, im;
};

template <class R>
struct Arith;

template <>
struct Arith<long double> {
  explicit Arith(int) {}
  long double make(long double v) const { return v; }
};

template <>
struct Arith<mpf_class> {
  explicit Arith(int bits) : prec(static_cast<mp_bitcnt_t>(bits)) {}
  mpf_class make(long v) const { return mpf_class(v, prec); }
  mp_bitcnt_t prec;
};

template <class R>
Cx<R> mul(const Cx<R>& a, const Cx<R>& b) {
  return {R(a.re * b.re - a.im * b.im), R(a.re * b.im + a.im * b.re)};
}

template <class R>
Cx<R> div(const Cx<R>& a, const Cx<R>& b) {
  R den = b.re * b.re + b.im * b.im;
  return {R((a.re * b.re + a.im * b.im) / den), R((a.im * b.re - a.re * b.im) / den)};
}

template <class R>
R abs2(const Cx<R>& a) {
  return R(a.re * a.re + a.im * a.im);
}

// Aberth-Ehrlich iteration, Gauss-Seidel updates. Returns after the largest
// relative correction falls below `tol` or `max_iter` sweeps.
template <class R>
void aberth(const std::vector<R>& coeffs, std::vector<Cx<R>>& z, const Arith<R>& ar,
            const R& tol2, int max_iter) {
  const std::size_t n = z.size();
  const R zero = ar.make(0);
  const R one = ar.make(1);
  for (int iter = 0; iter < max_iter; ++iter) {
    R worst = zero;
    for (std::size_t i = 0; i < n; ++i) {
      Cx<R> p{coeffs.back(), zero};
      Cx<R> dp{zero, zero};
      for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
        dp = mul(dp, z[i]);
        dp.re += p.re;
        dp.im += p.im;
        p = mul(p, z[i]);
        p.re += coeffs[k];
      }
      if (p.re == 0 && p.im == 0) continue;
      if (dp.re == 0 && dp.im == 0) {
        // Stationary point of p; nudge off it.
        z[i].re += tol2 + one / ar.make(1024);
        z[i].im += one / ar.make(977);
        worst = one;
        continue;
      }
      Cx<R> ratio = div(p, dp);
      Cx<R> s{zero, zero};
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Cx<R> d{R(z[i].re - z[j].re), R(z[i].im - z[j].im)};
        if (d.re == 0 && d.im == 0) continue;
        Cx<R> inv = div(Cx<R>{one, zero}, d);
        s.re += inv.re;
        s.im += inv.im;
      }
      Cx<R> rs = mul(ratio, s);
      Cx<R> den{R(one - rs.re), R(-rs.im)};
      Cx<R> w = (den.re == 0 && den.im == 0) ? ratio : div(ratio, den);
      z[i].re -= w.re;
      z[i].im -= w.im;
      R scale = abs2(z[i]);
      if (scale < one) scale = one;
      R rel = abs2(w) / scale;
      if (rel > worst) worst = rel;
    }
    if (worst <= tol2) return;
  }
}

mpz_class scaled_from_ld(long double x, int k) {
  if (x == 0.0L) return 0;
  int e = 0;
  long double m = std::frexp(x, &e);  // x = m 2^e, 0.5 <= |m| < 1
  auto mant = static_cast<long long>(std::ldexp(m, 63));
  mpz_class r(static_cast<long>(mant));
  const long shift = static_cast<long>(e) - 63 + k;
  if (shift >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  return r;
}

mpz_class scaled_from_mpf(const mpf_class& x, int k) {
  mpf_class t(0, x.get_prec() + 64);
  mpf_mul_2exp(t.get_mpf_t(), x.get_mpf_t(), static_cast<mp_bitcnt_t>(k));
  mpz_class r;
  mpz_set_f(r.get_mpz_t(), t.get_mpf_t());
  return r;
}

mpf_class mpf_from_ld(long double x, int bits) {
  mpf_class r(0, static_cast<mp_bitcnt_t>(bits));
  if (x == 0.0L) return r;
  int e = 0;
  long double m = std::frexp(x, &e);
  auto mant = static_cast<long long>(std::ldexp(m, 63));
  mpf_set_si(r.get_mpf_t(), static_cast<long>(mant));
  const long shift = static_cast<long>(e) - 63;
  if (shift >= 0) {
    mpf_mul_2exp(r.get_mpf_t(), r.get_mpf_t(), static_cast<mp_bitcnt_t>(shift));
  } else {
    mpf_div_2exp(r.get_mpf_t(), r.get_mpf_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  return r;
}

mpz_class norm2(const GaussInt& z) { return z.re * z.re + z.im * z.im; }

// Approximate log2 of |z|, for decisions that do not affect soundness.
double log2_abs(const mpz_class& v) {
  if (v == 0) return -1e300;
  long e = 0;
  double d = mpz_get_d_2exp(&e, v.get_mpz_t());
  return std::log2(std::fabs(d)) + static_cast<double>(e);
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

}  // namespace

std::pair<mpq_class, mpq_class> root_bounds(const mpq_class& x, int e, int bits) {
  if (x <= 0) return {mpq_class(0), mpq_class(0)};
  if (e == 1) return {x, x};
  // x^(1/e) scaled by 2^bits: floor/ceil of (x 2^(e bits))^(1/e).
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(e) * static_cast<mp_bitcnt_t>(bits));
  mpz_class fl, cl;
  mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpz_cdiv_q(cl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpz_class lo_root, hi_root;
  mpz_root(lo_root.get_mpz_t(), fl.get_mpz_t(), static_cast<unsigned long>(e));
  const int exact = mpz_root(hi_root.get_mpz_t(), cl.get_mpz_t(), static_cast<unsigned long>(e));
  if (!exact) hi_root += 1;
  mpz_class scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  mpq_class lo(lo_root, scale);
  mpq_class hi(hi_root, scale);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

RootEnclosure::RootEnclosure(ZPoly squarefree) : poly_(std::move(squarefree)) {}

void RootEnclosure::approximate(int bits) {
  const std::size_t n = static_cast<std::size_t>(degree());
  if (ld_re_.empty()) {
    std::vector<long double> c(poly_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<long double>(poly_[i].get_d());
    // Initial circle: radius from the Fujiwara-type bound max |a_k|^(1/(n-k)).
    long double radius = 0.0L;
    for (std::size_t k = 0; k < n; ++k) {
      const long double a = std::fabs(c[k]);
      if (a == 0.0L) continue;
      radius = std::max(radius, std::pow(a, 1.0L / static_cast<long double>(n - k)));
    }
    if (radius == 0.0L) radius = 1.0L;
    std::vector<Cx<long double>> z(n);
    for (std::size_t k = 0; k < n; ++k) {
      const long double angle = 2.0L * kPi * static_cast<long double>(k) / static_cast<long double>(n) + 0.7L;
      z[k] = {radius * std::cos(angle), radius * std::sin(angle)};
    }
    const long double eps = std::numeric_limits<long double>::epsilon();
    aberth<long double>(c, z, Arith<long double>(64), 16.0L * eps * eps, 2000);
    ld_re_.resize(n);
    ld_im_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      ld_re_[k] = z[k].re;
      ld_im_[k] = z[k].im;
    }
  }
  if (bits <= 64) {
    last_bits_ = std::max(last_bits_, 64);
    return;
  }
  Arith<mpf_class> ar(bits);
  std::vector<mpf_class> c;
  c.reserve(poly_.size());
  for (const auto& a : poly_) c.emplace_back(a, static_cast<mp_bitcnt_t>(bits));
  std::vector<Cx<mpf_class>> z;
  z.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!mp_re_.empty()) {
      z.push_back({mpf_class(mp_re_[k], static_cast<mp_bitcnt_t>(bits)),
                   mpf_class(mp_im_[k], static_cast<mp_bitcnt_t>(bits))});
    } else {
      z.push_back({mpf_from_ld(ld_re_[k], bits), mpf_from_ld(ld_im_[k], bits)});
    }
  }
  mpf_class tol2 = ar.make(1);
  mpf_div_2exp(tol2.get_mpf_t(), tol2.get_mpf_t(), static_cast<mp_bitcnt_t>(2 * (bits - 6)));
  aberth<mpf_class>(c, z, ar, tol2, 200);
  mp_re_.clear();
  mp_im_.clear();
  for (auto& v : z) {
    mp_re_.push_back(v.re);
    mp_im_.push_back(v.im);
  }
  last_bits_ = bits;
}

InclusionResult RootEnclosure::certify(int bits) {
  InclusionResult out;
  approximate(bits);
  const std::size_t n = static_cast<std::size_t>(degree());
  const int grid = std::max(bits, 64) + 8;

  std::vector<GaussInt> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (bits > 64 && !mp_re_.empty()) {
      z[k] = {scaled_from_mpf(mp_re_[k], grid), scaled_from_mpf(mp_im_[k], grid)};
    } else {
      z[k] = {scaled_from_ld(ld_re_[k], grid), scaled_from_ld(ld_im_[k], grid)};
    }
  }

  // Conjugate-symmetric centers: nearly real approximations become real,
  // the rest are paired and one member of each pair is mirrored exactly.
  const int working = std::max(bits, 64);
  std::vector<int> partner(n, -1);
  std::vector<std::size_t> upper, lower;
  for (std::size_t k = 0; k < n; ++k) {
    const double mag = std::max(0.0, 0.5 * log2_abs(norm2(z[k])) - grid);
    const double im = log2_abs(z[k].im) - grid;
    if (z[k].im == 0 || im < mag - working / 2.0) {
      z[k].im = 0;
    } else if (z[k].im > 0) {
      upper.push_back(k);
    } else {
      lower.push_back(k);
    }
  }
  if (upper.size() != lower.size()) return out;
  std::vector<bool> used(lower.size(), false);
  for (std::size_t u : upper) {
    std::size_t best = lower.size();
    mpz_class best_d;
    for (std::size_t l = 0; l < lower.size(); ++l) {
      if (used[l]) continue;
      GaussInt d{z[u].re - z[lower[l]].re, z[u].im + z[lower[l]].im};
      mpz_class dist = norm2(d);
      if (best == lower.size() || dist < best_d) {
        best = l;
        best_d = dist;
      }
    }
    used[best] = true;
    const std::size_t l = lower[best];
    z[l] = {z[u].re, -z[u].im};
    partner[u] = static_cast<int>(l);
    partner[l] = static_cast<int>(u);
  }

  // Exact Weierstrass corrections on the scaled grid:
  //   P_i = 2^(nK) p(z_i),  Q_i = 2^((n-1)K) prod (z_i - z_j),
  //   W_i = P_i / (Q_i 2^K),  r_i^2 = n^2 |W_i|^2.
  std::vector<mpq_class> r2(n);
  std::vector<mpq_class> c2(n);
  mpz_class four_k = 1;
  mpz_mul_2exp(four_k.get_mpz_t(), four_k.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * grid));
  for (std::size_t i = 0; i < n; ++i) {
    GaussInt acc{poly_.back(), 0};
    mpz_class pow_k = 1;
    for (std::size_t k = poly_.size() - 1; k-- > 0;) {
      mpz_mul_2exp(pow_k.get_mpz_t(), pow_k.get_mpz_t(), static_cast<mp_bitcnt_t>(grid));
      GaussInt next{acc.re * z[i].re - acc.im * z[i].im, acc.re * z[i].im + acc.im * z[i].re};
      next.re += poly_[k] * pow_k;
      acc = std::move(next);
    }
    GaussInt q{1, 0};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      GaussInt d{z[i].re - z[j].re, z[i].im - z[j].im};
      if (d.re == 0 && d.im == 0) return out;
      GaussInt next{q.re * d.re - q.im * d.im, q.re * d.im + q.im * d.re};
      q = std::move(next);
    }
    mpz_class num = norm2(acc) * static_cast<long>(n * n);
    mpz_class den = norm2(q) * four_k;
    r2[i] = mpq_class(num, den);
    r2[i].canonicalize();
    c2[i] = mpq_class(norm2(z[i]), four_k);
    c2[i].canonicalize();
  }

  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      GaussInt d{z[i].re - z[j].re, z[i].im - z[j].im};
      mpq_class d2(norm2(d), four_k);
      d2.canonicalize();
      mpq_class slack = d2 - r2[i] - r2[j];
      // |z_i - z_j| <= r_i + r_j  <=>  d2 - r_i^2 - r_j^2 <= 2 r_i r_j
      const bool overlap = slack < 0 || slack * slack <= 4 * r2[i] * r2[j];
      if (overlap) uf.unite(i, j);
    }
  }

  const int sqrt_bits = working + 32;
  std::vector<int> comp_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = uf.find(i);
    if (comp_of[root] < 0) {
      comp_of[root] = static_cast<int>(out.components.size());
      out.components.emplace_back();
    }
    comp_of[i] = comp_of[root];
    InclusionComponent& c = out.components[static_cast<std::size_t>(comp_of[i])];
    auto [clo, chi] = root_bounds(c2[i], 2, sqrt_bits);
    auto [rlo, rhi] = root_bounds(r2[i], 2, sqrt_bits);
    mpq_class lo = clo - rhi;
    if (lo < 0) lo = 0;
    mpq_class hi = chi + rhi;
    if (c.roots == 0 || lo < c.modulus_lo) c.modulus_lo = lo;
    if (c.roots == 0 || hi > c.modulus_hi) c.modulus_hi = hi;
    c.roots += 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    InclusionComponent& c = out.components[static_cast<std::size_t>(comp_of[i])];
    if (c.roots != 1) continue;
    if (z[i].im == 0) {
      c.structural = true;
    } else if (partner[i] >= 0) {
      const int other = comp_of[static_cast<std::size_t>(partner[i])];
      if (out.components[static_cast<std::size_t>(other)].roots == 1 && other != comp_of[i]) {
        c.structural = true;
        c.partner = other;
      }
    }
  }
  out.ok = true;
  return out;
}

}  // namespace gib::detail
