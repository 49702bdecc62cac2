#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gib/simstruct.hpp"

namespace gib {

namespace {

// Orthonormal (Frobenius) basis of symmetric k x k matrices.
std::vector<Eigen::MatrixXd> symmetric_basis(int k) {
  std::vector<Eigen::MatrixXd> out;
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      Eigen::MatrixXd s = Eigen::MatrixXd::Zero(k, k);
      if (i == j) {
        s(i, i) = 1;
      } else {
        s(i, j) = s(j, i) = 1 / std::sqrt(2.0);
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

double coord(const Eigen::MatrixXd& m, const Eigen::MatrixXd& basis_elem) { return (m.array() * basis_elem.array()).sum(); }

// Cesaro mean of (M^j)^T M^j, j < N, with M = A / lambda and N doubling.
Eigen::MatrixXd cesaro_average(const Eigen::MatrixXd& a, double lambda) {
  const int k = static_cast<int>(a.rows());
  Eigen::MatrixXd mn = a / lambda;
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(k, k);
  double n = 1;
  Eigen::MatrixXd prev = s;
  for (int it = 0; it < 40; ++it) {
    s = s + mn.transpose() * s * mn;
    mn = mn * mn;
    n *= 2;
    Eigen::MatrixXd avg = s / n;
    if (it > 4 && (avg - prev).norm() <= 1e-15 * avg.norm()) return avg;
    prev = avg;
    if (!s.allFinite()) break;
  }
  return prev;
}

}  // namespace

GramForm similarity_gram(const Eigen::MatrixXd& a, double lambda, double tol) {
  const int k = static_cast<int>(a.rows());
  if (k == 0 || a.cols() != k || !(lambda > 0)) {
    throw std::invalid_argument("similarity_gram needs a non-empty square matrix and lambda > 0");
  }
  GramForm out;
  out.lambda = lambda;
  const double l2 = lambda * lambda;

  if (k == 1) {
    out.g = Eigen::MatrixXd::Ones(1, 1);
  } else {
    const auto basis = symmetric_basis(k);
    const int s = static_cast<int>(basis.size());
    Eigen::MatrixXd op(s, s);
    for (int c = 0; c < s; ++c) {
      const Eigen::MatrixXd img = a.transpose() * basis[c] * a - l2 * basis[c];
      for (int r = 0; r < s; ++r) op(r, c) = coord(img, basis[r]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(op, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = std::max(l2, a.squaredNorm());
    int kernel = 0;
    for (int i = s - 1; i >= 0 && sv(i) <= 1e-8 * scale; --i) ++kernel;
    if (kernel == 0) {
      std::ostringstream os;
      os << "similarity operator has no kernel (smallest singular value " << sv(s - 1) / scale << ")";
      throw NoPositiveDefiniteSolution(os.str());
    }
    const Eigen::MatrixXd kb = svd.matrixV().rightCols(kernel);
    Eigen::VectorXd v;
    if (kernel == 1) {
      v = kb.col(0);
    } else {
      // Degenerate kernel: pick the averaged form, projected onto the kernel.
      const Eigen::MatrixXd avg = cesaro_average(a, lambda);
      Eigen::VectorXd w(s);
      for (int r = 0; r < s; ++r) w(r) = coord(avg, basis[r]);
      v = kb * (kb.transpose() * w);
      out.averaged = true;
    }
    out.g = Eigen::MatrixXd::Zero(k, k);
    for (int r = 0; r < s; ++r) out.g += v(r) * basis[r];
    if (out.g.trace() < 0) out.g = -out.g;
  }

  out.g = (out.g + out.g.transpose()) / 2;
  if (!(out.g.trace() > 0)) throw NoPositiveDefiniteSolution("invariant form has non-positive trace");
  out.g *= k / out.g.trace();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(out.g, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues()(0);
  out.residual = (a.transpose() * out.g * a - l2 * out.g).norm() / out.g.norm();
  if (!(out.min_eigenvalue > 1e-8)) {  // trace is k, so eigenvalues are O(1)
    std::ostringstream os;
    os << "invariant form is not positive definite (min eigenvalue " << out.min_eigenvalue << ")";
    throw NoPositiveDefiniteSolution(os.str());
  }
  if (!(out.residual <= tol)) {
    std::ostringstream os;
    os << "similarity residual " << out.residual << " exceeds " << tol;
    throw NoPositiveDefiniteSolution(os.str());
  }
  return out;
}

}  // namespace gib
