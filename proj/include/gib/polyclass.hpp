#pragma once

// Exact classification of integer polynomials by root modulus.
//
// Every interval reported here is a proof: the true common modulus of the
// cluster lies in [lo, hi]. Moduli are declared equal only when forced by
// structure (complex conjugation, repeated factors, p(X) = g(X^e) rotation
// symmetry, or exact unit-circle detection); anything else that cannot be
// separated is reported as undecided.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gib/errors.hpp"
#include "gib/polynomial.hpp"

namespace gib {

inline constexpr int kBasePrecisionBits = 64;
inline constexpr int kDefaultMaxPrecisionBits = 1024;
inline constexpr int kDefaultFactorDegreeBound = 16;

struct ModulusCluster {
  mpq_class lo;
  mpq_class hi;
  int multiplicity = 0;
  /// Every root of the cluster is a simple root of the polynomial.
  bool semisimple = true;

  double midpoint() const;
  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
};

struct TwoClassCertificate {
  IntPolynomial poly;
  ModulusCluster class_a;  // smaller modulus
  ModulusCluster class_b;  // larger modulus
  int precision_bits = 0;
};

enum class RejectionReason { NotUnimodular, OneClass, MoreThanTwoClasses, UnitModulusRoot };

std::string_view to_string(RejectionReason r);
RejectionReason rejection_reason_from_string(std::string_view s);

struct Rejection {
  RejectionReason reason;
  std::string detail;
};

struct Undecided {
  int precision_bits = 0;
  std::string detail;
};

using Classification = std::variant<TwoClassCertificate, Rejection, Undecided>;

/// Disjoint certified modulus intervals, sorted by modulus, multiplicities
/// summing to the degree. Starts at 64 bits and doubles up to
/// `precision_bits`, intersecting the enclosures of successive tiers.
/// Throws PrecisionExhausted when some cluster cannot be separated.
std::vector<ModulusCluster> isolate_root_moduli(const IntPolynomial& p, int precision_bits);

Classification classify_two_class(const IntPolynomial& p,
                                  int max_precision_bits = kDefaultMaxPrecisionBits);

/// Number of roots (with multiplicity) of modulus exactly 1.
int unit_circle_root_count(const IntPolynomial& p);

/// Throws std::invalid_argument when a certificate's invariants fail:
/// multiplicities, disjointness, unit modulus excluded, product relation
/// lo_a^a lo_b^b <= 1 <= hi_a^a hi_b^b.
void validate_certificate(const TwoClassCertificate& cert);

/// a log(mid A) + b log(mid B); zero up to the interval widths.
double product_relation_residual(const TwoClassCertificate& cert);

struct Factor {
  IntPolynomial poly;
  int multiplicity = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Factorization into monic irreducible factors over Z, sorted canonically.
/// Throws DegreeTooLarge above `max_degree`.
std::vector<Factor> factor_over_integers(const IntPolynomial& p,
                                         int max_degree = kDefaultFactorDegreeBound);

enum class ClassSelector { A, B };

/// Dimension of the smallest rational A-invariant subspace containing the
/// selected class: total degree (with multiplicity) of the irreducible
/// factors that have a root in that class.
int leaf_closure_dims(const TwoClassCertificate& cert, ClassSelector e_class);

/// Which class each irreducible factor's roots fall in (a factor may
/// straddle both).
struct FactorClassSplit {
  Factor factor;
  bool in_a = false;
  bool in_b = false;
};
std::vector<FactorClassSplit> split_factors_by_class(const TwoClassCertificate& cert);

}  // namespace gib
