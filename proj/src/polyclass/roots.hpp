#pragma once

// Certified root-modulus enclosures for square-free integer polynomials.
//
// Approximate roots come from Aberth iteration (long double for the 64-bit
// tier, GMP floats above). Enclosures are certified in exact arithmetic:
// with z_i on a 2^-K grid and W_i = p(z_i) / prod_{j!=i} (z_i - z_j), the
// discs |z - z_i| <= n |W_i| contain all roots and every connected
// component made of m discs contains exactly m roots (Gerschgorin applied to
// the Weierstrass companion pencil).

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "poly_arith.hpp"

namespace gib::detail {

struct GaussInt {
  mpz_class re, im;
};

/// One connected component of the inclusion discs.
struct InclusionComponent {
  int roots = 0;
  mpq_class modulus_lo;  // >= 0
  mpq_class modulus_hi;
  /// Roots of the component provably share one modulus: a single disc with
  /// a real center, or one of two single-disc components that are exact
  /// complex conjugates (both are flagged; `partner` links them).
  bool structural = false;
  int partner = -1;
};

struct InclusionResult {
  std::vector<InclusionComponent> components;
  bool ok = false;  // false when the approximations were unusable
};

/// Holds root approximations for one square-free polynomial and refines
/// them tier by tier.
class RootEnclosure {
 public:
  explicit RootEnclosure(ZPoly squarefree);

  const ZPoly& poly() const { return poly_; }
  int degree() const { return deg(poly_); }

  /// Recompute approximations at `bits` working precision (refining the
  /// previous tier) and certify the inclusion components.
  InclusionResult certify(int bits);

 private:
  void approximate(int bits);

  ZPoly poly_;
  int last_bits_ = 0;
  std::vector<long double> ld_re_, ld_im_;
  std::vector<mpf_class> mp_re_, mp_im_;
};

/// Rational bounds lo <= x^(1/e) <= hi with absolute precision 2^-bits.
std::pair<mpq_class, mpq_class> root_bounds(const mpq_class& x, int e, int bits);

}  // namespace gib::detail
