#include "gib/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "poly_arith.hpp"

namespace gib {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw std::invalid_argument("polynomial degree must be at least 1");
  if (coeffs_.back() != 1) {
    throw std::invalid_argument("polynomial must be monic (leading coefficient 1)");
  }
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
    : IntPolynomial(std::vector<mpz_class>(coeffs.begin(), coeffs.end())) {}

IntPolynomial IntPolynomial::from_longs(std::span<const long> coeffs) {
  return IntPolynomial(std::vector<mpz_class>(coeffs.begin(), coeffs.end()));
}

std::string IntPolynomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) os << "X";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::strong_ordering operator<=>(const IntPolynomial& a, const IntPolynomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  return IntPolynomial(detail::mul(a.coeffs(), b.coeffs()));
}

IntPolynomial pow(const IntPolynomial& p, int k) {
  if (k < 1) throw std::invalid_argument("pow: exponent must be positive");
  IntPolynomial r = p;
  for (int i = 1; i < k; ++i) r = r * p;
  return r;
}

IntPolynomial reciprocal(const IntPolynomial& p) {
  const mpz_class& a0 = p.constant_term();
  if (abs(a0) != 1) throw std::invalid_argument("reciprocal: constant term must be +-1");
  std::vector<mpz_class> c(p.coeffs().rbegin(), p.coeffs().rend());
  for (auto& x : c) x *= a0;  // a0 = +-1, so this divides by the new leading term
  return IntPolynomial(std::move(c));
}

IntPolynomial negate_variable(const IntPolynomial& p) {
  std::vector<mpz_class> c = p.coeffs();
  const int n = p.degree();
  for (int i = 0; i <= n; ++i) {
    if ((n - i) % 2 == 1) c[static_cast<std::size_t>(i)] = -c[static_cast<std::size_t>(i)];
  }
  return IntPolynomial(std::move(c));
}

// ---------------------------------------------------------------------------

IntMatrix::IntMatrix(int dim)
    : dim_(dim), entries_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
  if (dim < 0) throw std::invalid_argument("negative matrix dimension");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : IntMatrix(static_cast<int>(rows.size())) {
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim_) throw std::invalid_argument("matrix must be square");
    int j = 0;
    for (long v : row) (*this)(i, j++) = v;
    ++i;
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  IntMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.dim_; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != m.dim_) throw std::invalid_argument("matrix must be square");
    for (int j = 0; j < m.dim_; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

IntMatrix IntMatrix::identity(int dim) {
  IntMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

mpz_class IntMatrix::determinant() const {
  if (dim_ == 0) return 1;
  IntMatrix a = *this;
  int sign = 1;
  mpz_class prev = 1;
  const int n = dim_;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int swap = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a(i, k) != 0) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

int IntMatrix::rank() const {
  const int n = dim_;
  std::vector<mpq_class> a(entries_.begin(), entries_.end());
  auto at = [&](int i, int j) -> mpq_class& { return a[idx(i, j)]; };
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int pivot = -1;
    for (int i = rank; i < n; ++i) {
      if (at(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(at(rank, j), at(pivot, j));
    for (int i = rank + 1; i < n; ++i) {
      if (at(i, col) == 0) continue;
      mpq_class f = at(i, col) / at(rank, col);
      for (int j = col; j < n; ++j) at(i, j) -= f * at(rank, j);
    }
    ++rank;
  }
  return rank;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
  const int n = a.dim();
  IntMatrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < n; ++j) r(i, j) += a(i, k) * b(k, j);
    }
  }
  return r;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix r = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) += b(i, j);
  return r;
}

IntMatrix block_diagonal(std::span<const IntMatrix> blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.dim();
  IntMatrix r(n);
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.dim(); ++i)
      for (int j = 0; j < b.dim(); ++j) r(off + i, off + j) = b(i, j);
    off += b.dim();
  }
  return r;
}

IntMatrix companion_matrix(const IntPolynomial& p) {
  const int n = p.degree();
  IntMatrix m(n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -p[static_cast<std::size_t>(i)];
  return m;
}

IntPolynomial char_poly(const IntMatrix& m) {
  const int n = m.dim();
  if (n < 1) throw std::invalid_argument("char_poly: empty matrix");
  // Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(A M_k) / k,
  // M_{k+1} = A M_k + c_{n-k} I.
  std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1;
  IntMatrix mk = IntMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    IntMatrix amk = m * mk;
    mpz_class tr = 0;
    for (int i = 0; i < n; ++i) tr += amk(i, i);
    mpz_class ck = -tr / k;  // exact
    c[static_cast<std::size_t>(n - k)] = ck;
    mk = amk;
    for (int i = 0; i < n; ++i) mk(i, i) += ck;
  }
  return IntPolynomial(std::move(c));
}

IntMatrix evaluate(const IntPolynomial& p, const IntMatrix& m) {
  const int n = m.dim();
  IntMatrix acc(n);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * m;
    for (int d = 0; d < n; ++d) acc(d, d) += p[static_cast<std::size_t>(i)];
  }
  return acc;
}

}  // namespace gib
