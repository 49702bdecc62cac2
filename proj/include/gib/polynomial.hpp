#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gib {

/// Monic polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored constant term first, so coeffs()[i] multiplies
/// X^i and coeffs().back() == 1. The constructor rejects non-monic input and
/// degree 0.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<mpz_class> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial from_longs(std::span<const long> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  const mpz_class& operator[](std::size_t i) const { return coeffs_[i]; }
  const mpz_class& constant_term() const { return coeffs_.front(); }

  /// Human-readable form, leading term first: "X^3 - X^2 + 3X - 1".
  std::string to_string() const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }
  /// Canonical order: degree, then coefficients lexicographically
  /// (constant term first).
  friend std::strong_ordering operator<=>(const IntPolynomial& a,
                                          const IntPolynomial& b);

 private:
  std::vector<mpz_class> coeffs_;
};

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial pow(const IntPolynomial& p, int k);

/// X^n p(1/X), normalized monic. Requires |a0| = 1.
IntPolynomial reciprocal(const IntPolynomial& p);
/// (-1)^n p(-X), which is monic with negated roots.
IntPolynomial negate_variable(const IntPolynomial& p);

/// Dense square matrix over Z, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int dim);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);
  static IntMatrix identity(int dim);

  int dim() const { return dim_; }
  mpz_class& operator()(int i, int j) { return entries_[idx(i, j)]; }
  const mpz_class& operator()(int i, int j) const { return entries_[idx(i, j)]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  /// Exact determinant (Bareiss fraction-free elimination).
  mpz_class determinant() const;
  /// Rank over Q.
  int rank() const;

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
           static_cast<std::size_t>(j);
  }
  int dim_ = 0;
  std::vector<mpz_class> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(std::span<const IntMatrix> blocks);

/// Companion matrix in last-column form: ones on the subdiagonal and
/// -a0, ..., -a_{n-1} down the last column.
IntMatrix companion_matrix(const IntPolynomial& p);

/// Characteristic polynomial det(X I - M), computed exactly with the
/// Faddeev-LeVerrier recurrence (all divisions are exact in Z).
IntPolynomial char_poly(const IntMatrix& m);

/// Evaluate p(M) exactly.
IntMatrix evaluate(const IntPolynomial& p, const IntMatrix& m);

}  // namespace gib
