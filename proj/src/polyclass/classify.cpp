#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "gib/polyclass.hpp"
#include "poly_arith.hpp"
#include "roots.hpp"

namespace gib {

namespace {

using detail::InclusionComponent;
using detail::RootEnclosure;
using detail::ZPoly;

double to_double(const mpq_class& q) { return q.get_d(); }

mpq_class qpow(const mpq_class& x, int k) {
  mpq_class r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

struct Unit {
  mpq_class lo, hi;
  int multiplicity = 0;
  bool semisimple = true;
};

struct TierOutcome {
  bool resolved = false;
  std::vector<ModulusCluster> clusters;
  /// Lower bound on the number of distinct root moduli (pairwise disjoint
  /// enclosures), valid even when unresolved.
  int distinct_lower_bound = 0;
  std::string detail;
};

// Per square-free factor s_k of p (p = prod s_k^k), with s_k(X) = g(X^e).
struct FactorState {
  int k = 1;
  int e = 1;
  int unit_roots_g = 0;
  std::unique_ptr<RootEnclosure> enclosure;
};

class ModulusAnalyzer {
 public:
  explicit ModulusAnalyzer(const IntPolynomial& p) {
    for (auto& [s, k] : detail::squarefree_decomposition(detail::to_z(p))) {
      auto [g, e] = detail::lacunary_reduce(s);
      FactorState f;
      f.k = k;
      f.e = e;
      f.unit_roots_g = detail::unit_circle_roots_squarefree(g);
      f.enclosure = std::make_unique<RootEnclosure>(std::move(g));
      factors_.push_back(std::move(f));
    }
  }

  /// Roots of modulus exactly 1, with multiplicity.
  int unit_circle_roots() const {
    int u = 0;
    for (const auto& f : factors_) u += f.unit_roots_g * f.e * f.k;
    return u;
  }

  TierOutcome run(int bits) {
    TierOutcome out;
    const int map_bits = std::max(bits, kBasePrecisionBits) + 32;
    std::vector<Unit> units;
    std::vector<std::pair<mpq_class, mpq_class>> hulls;
    int unit_circle = 0;
    bool unit_circle_semisimple = true;
    bool resolved = true;
    std::ostringstream why;

    for (auto& f : factors_) {
      detail::InclusionResult res = f.enclosure->certify(bits);
      if (!res.ok) {
        resolved = false;
        why << "approximations for a degree-" << f.enclosure->degree() << " factor were unusable; ";
        continue;
      }
      const mpq_class one(1);
      int touching = 0;
      for (const auto& c : res.components) {
        auto lo = detail::root_bounds(c.modulus_lo, f.e, map_bits).first;
        auto hi = detail::root_bounds(c.modulus_hi, f.e, map_bits).second;
        hulls.emplace_back(lo, hi);
        if (c.modulus_lo <= one && one <= c.modulus_hi) touching += c.roots;
      }
      if (touching != f.unit_roots_g) {
        resolved = false;
        why << "enclosures near modulus 1 not separated; ";
        continue;
      }
      if (f.unit_roots_g > 0) {
        unit_circle += f.unit_roots_g * f.e * f.k;
        if (f.k > 1) unit_circle_semisimple = false;
      }
      for (std::size_t ci = 0; ci < res.components.size(); ++ci) {
        const InclusionComponent& c = res.components[ci];
        if (c.modulus_lo <= one && one <= c.modulus_hi) continue;
        if (!c.structural) {
          resolved = false;
          why << "overlapping root enclosures; ";
          continue;
        }
        if (c.partner >= 0 && static_cast<std::size_t>(c.partner) < ci) continue;
        const int roots = c.partner >= 0 ? 2 : 1;
        const auto& h = hulls[hulls.size() - res.components.size() + ci];
        units.push_back({h.first, h.second, roots * f.e * f.k, f.k == 1});
      }
    }

    out.distinct_lower_bound = greedy_disjoint(hulls);
    if (unit_circle > 0) ++out.distinct_lower_bound;

    if (resolved) {
      std::sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) { return a.lo < b.lo; });
      for (std::size_t i = 0; i + 1 < units.size(); ++i) {
        if (!(units[i].hi < units[i + 1].lo)) {
          resolved = false;
          why << "root moduli from distinct roots could not be separated; ";
          break;
        }
      }
    }
    if (!resolved) {
      out.detail = why.str();
      if (!out.detail.empty()) out.detail.resize(out.detail.size() - 2);
      return out;
    }
    for (const auto& u : units) out.clusters.push_back({u.lo, u.hi, u.multiplicity, u.semisimple});
    if (unit_circle > 0) {
      out.clusters.push_back({mpq_class(1), mpq_class(1), unit_circle, unit_circle_semisimple});
    }
    std::sort(out.clusters.begin(), out.clusters.end(),
              [](const ModulusCluster& a, const ModulusCluster& b) { return a.lo < b.lo; });
    out.resolved = true;
    out.distinct_lower_bound = static_cast<int>(out.clusters.size());
    return out;
  }

 private:
  static int greedy_disjoint(std::vector<std::pair<mpq_class, mpq_class>> hulls) {
    std::sort(hulls.begin(), hulls.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    int count = 0;
    bool have = false;
    mpq_class last;
    for (const auto& [lo, hi] : hulls) {
      if (lo <= 1 && 1 <= hi) continue;  // the unit circle is counted separately
      if (!have || lo > last) {
        ++count;
        last = hi;
        have = true;
      }
    }
    return count;
  }

  std::vector<FactorState> factors_;
};

std::vector<int> tiers_up_to(int max_bits) {
  std::vector<int> t;
  for (int b = kBasePrecisionBits; b <= std::max(max_bits, kBasePrecisionBits); b *= 2) t.push_back(b);
  return t;
}

void require_nonzero_constant(const IntPolynomial& p) {
  if (p.constant_term() == 0) throw std::invalid_argument("polynomial has a zero root");
}

}  // namespace

double ModulusCluster::midpoint() const { return to_double((lo + hi) / 2); }

std::string_view to_string(RejectionReason r) {
  switch (r) {
    case RejectionReason::NotUnimodular: return "NotUnimodular";
    case RejectionReason::OneClass: return "OneClass";
    case RejectionReason::MoreThanTwoClasses: return "MoreThanTwoClasses";
    case RejectionReason::UnitModulusRoot: return "UnitModulusRoot";
  }
  return "?";
}

RejectionReason rejection_reason_from_string(std::string_view s) {
  for (auto r : {RejectionReason::NotUnimodular, RejectionReason::OneClass,
                 RejectionReason::MoreThanTwoClasses, RejectionReason::UnitModulusRoot}) {
    if (to_string(r) == s) return r;
  }
  throw ParseError("unknown rejection reason: " + std::string(s));
}

int unit_circle_root_count(const IntPolynomial& p) {
  require_nonzero_constant(p);
  int count = 0;
  for (const auto& [s, k] : detail::squarefree_decomposition(detail::to_z(p))) {
    count += k * detail::unit_circle_roots_squarefree(s);
  }
  return count;
}

std::vector<ModulusCluster> isolate_root_moduli(const IntPolynomial& p, int precision_bits) {
  require_nonzero_constant(p);
  ModulusAnalyzer analyzer(p);
  std::vector<ModulusCluster> best;
  std::string last_detail;
  for (int bits : tiers_up_to(precision_bits)) {
    TierOutcome t = analyzer.run(bits);
    if (!t.resolved) {
      last_detail = t.detail;
      continue;
    }
    if (best.empty()) {
      best = std::move(t.clusters);
      continue;
    }
    if (t.clusters.size() != best.size()) continue;
    for (std::size_t i = 0; i < best.size(); ++i) {
      if (t.clusters[i].multiplicity != best[i].multiplicity) continue;
      if (t.clusters[i].lo > best[i].lo) best[i].lo = t.clusters[i].lo;
      if (t.clusters[i].hi < best[i].hi) best[i].hi = t.clusters[i].hi;
    }
  }
  if (best.empty()) {
    throw PrecisionExhausted("root moduli of " + p.to_string() + " not separated at " +
                                 std::to_string(precision_bits) + " bits: " + last_detail,
                             precision_bits);
  }
  return best;
}

Classification classify_two_class(const IntPolynomial& p, int max_precision_bits) {
  if (abs(p.constant_term()) != 1) {
    return Rejection{RejectionReason::NotUnimodular,
                     "|constant term| = " + mpz_class(abs(p.constant_term())).get_str()};
  }
  ModulusAnalyzer analyzer(p);
  if (const int u = analyzer.unit_circle_roots(); u > 0) {
    return Rejection{RejectionReason::UnitModulusRoot, std::to_string(u) + " root(s) of modulus 1"};
  }
  std::string last_detail;
  int last_bits = kBasePrecisionBits;
  for (int bits : tiers_up_to(max_precision_bits)) {
    last_bits = bits;
    TierOutcome t = analyzer.run(bits);
    if (!t.resolved) {
      if (t.distinct_lower_bound > 2) {
        return Rejection{RejectionReason::MoreThanTwoClasses,
                         "at least " + std::to_string(t.distinct_lower_bound) + " distinct moduli"};
      }
      last_detail = t.detail;
      continue;
    }
    if (t.clusters.size() == 1) {
      return Rejection{RejectionReason::OneClass, "all roots share one modulus"};
    }
    if (t.clusters.size() > 2) {
      return Rejection{RejectionReason::MoreThanTwoClasses,
                       std::to_string(t.clusters.size()) + " distinct moduli"};
    }
    TwoClassCertificate cert{p, t.clusters[0], t.clusters[1], bits};
    return cert;
  }
  return Undecided{last_bits, last_detail};
}

void validate_certificate(const TwoClassCertificate& cert) {
  const auto& a = cert.class_a;
  const auto& b = cert.class_b;
  auto fail = [](const std::string& msg) { throw std::invalid_argument("invalid certificate: " + msg); };
  if (a.multiplicity < 1 || b.multiplicity < 1) fail("multiplicities must be positive");
  if (a.multiplicity + b.multiplicity != cert.poly.degree()) fail("multiplicities do not sum to the degree");
  if (!(mpq_class(0) < a.lo) || a.lo > a.hi || !(mpq_class(0) < b.lo) || b.lo > b.hi) {
    fail("interval bounds out of order");
  }
  if (!(a.hi < b.lo) && !(b.hi < a.lo)) fail("class intervals overlap");
  if (a.contains(1) || b.contains(1)) fail("an interval contains modulus 1");
  if (abs(cert.poly.constant_term()) != 1) fail("constant term is not +-1");
  const mpq_class lo = qpow(a.lo, a.multiplicity) * qpow(b.lo, b.multiplicity);
  const mpq_class hi = qpow(a.hi, a.multiplicity) * qpow(b.hi, b.multiplicity);
  if (lo > 1 || hi < 1) fail("product relation lambda^a mu^b = 1 violated");
}

double product_relation_residual(const TwoClassCertificate& cert) {
  return cert.class_a.multiplicity * std::log(cert.class_a.midpoint()) +
         cert.class_b.multiplicity * std::log(cert.class_b.midpoint());
}

}  // namespace gib
