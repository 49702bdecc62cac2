#pragma once

// Shared inputs and independent oracles. Nothing here calls into the
// library's root finding; oracles use closed forms or plain bisection.

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "gib/polyclass.hpp"

namespace fx {

// X^3 - X^2 + 3X - 1
inline gib::IntPolynomial cubic() { return gib::IntPolynomial{-1, 3, -1, 1}; }

// two copies of [[2,1],[1,1]] on the diagonal
inline gib::IntMatrix block_matrix() {
  return gib::IntMatrix{{2, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 1}};
}

inline gib::IntPolynomial golden() { return gib::IntPolynomial{1, -3, 1}; }  // X^2 - 3X + 1

// real root of the cubic in (0, 1) by bisection; the cubic is increasing
// there (derivative 3x^2 - 2x + 3 > 0 everywhere)
inline long double cubic_real_root() {
  long double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    long double mid = (lo + hi) / 2;
    long double v = ((mid - 1) * mid + 3) * mid - 1;
    (v < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

inline double golden_lambda() { return (3.0 + std::sqrt(5.0)) / 2.0; }

// Quadratic X^2 + a1 X + a0 by the quadratic formula:
// "certificate", "UnitModulusRoot", "NotUnimodular" or "OneClass".
inline std::string quadratic_oracle(long a0, long a1) {
  if (a0 != 1 && a0 != -1) return "NotUnimodular";
  const long double disc = static_cast<long double>(a1) * a1 - 4.0L * a0;
  if (disc < 0) {
    // complex pair, |z|^2 = a0
    return std::abs(static_cast<long double>(a0) - 1) < 1e-15L ? "UnitModulusRoot" : "OneClass";
  }
  const long double s = std::sqrt(disc);
  const long double r1 = std::abs((-a1 + s) / 2), r2 = std::abs((-a1 - s) / 2);
  if (std::abs(r1 - 1) < 1e-12L || std::abs(r2 - 1) < 1e-12L) return "UnitModulusRoot";
  if (std::abs(r1 - r2) < 1e-12L) return "OneClass";
  return "certificate";
}

inline std::string outcome_name(const gib::Classification& c) {
  if (std::holds_alternative<gib::TwoClassCertificate>(c)) return "certificate";
  if (const auto* r = std::get_if<gib::Rejection>(&c)) return std::string(gib::to_string(r->reason));
  return "Undecided";
}

inline double to_d(const mpq_class& q) { return q.get_d(); }

}  // namespace fx
