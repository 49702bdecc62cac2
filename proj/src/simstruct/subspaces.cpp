#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gib/simstruct.hpp"

namespace gib {

namespace {

const char* class_name(ClassSelector c) { return c == ClassSelector::A ? "A" : "B"; }

Eigen::MatrixXd null_space(const Eigen::MatrixXd& p, int dim, double tol, const char* what) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const int n = static_cast<int>(p.cols());
  const double top = std::max(s(0), 1e-300);
  // Kernel values must be tiny, the rest bounded away from zero.
  const double kernel = n - dim < n ? s(n - dim) / top : 0.0;
  const double gap = n - dim - 1 >= 0 ? s(n - dim - 1) / top : 1.0;
  if (kernel > tol || gap < 1e3 * std::max(kernel, tol * 1e-3)) {
    std::ostringstream os;
    os << "spectral gap too small for the " << what << " subspace (kernel " << kernel << ", gap " << gap << ")";
    throw IllConditioned(os.str());
  }
  return svd.matrixV().rightCols(dim);
}

}  // namespace

Eigen::MatrixXd to_eigen(const IntMatrix& m) {
  Eigen::MatrixXd out(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out(i, j) = m(i, j).get_d();
  }
  return out;
}

ClassSelector other(ClassSelector cls) { return cls == ClassSelector::A ? ClassSelector::B : ClassSelector::A; }

double class_modulus(const TwoClassCertificate& cert, ClassSelector cls) {
  return (cls == ClassSelector::A ? cert.class_a : cert.class_b).midpoint();
}

int class_multiplicity(const TwoClassCertificate& cert, ClassSelector cls) {
  return (cls == ClassSelector::A ? cert.class_a : cert.class_b).multiplicity;
}

IntMatrix semisimple_matrix(const TwoClassCertificate& cert) {
  const auto factors = factor_over_integers(cert.poly);
  const bool squarefree =
      std::all_of(factors.begin(), factors.end(), [](const Factor& f) { return f.multiplicity == 1; });
  if (squarefree) return companion_matrix(cert.poly);
  std::vector<IntMatrix> blocks;
  for (const auto& f : factors) {
    for (int k = 0; k < f.multiplicity; ++k) blocks.push_back(companion_matrix(f.poly));
  }
  return block_diagonal(blocks);
}

void check_semisimple_on_class(const IntMatrix& a, const TwoClassCertificate& cert, ClassSelector cls) {
  const int n = a.dim();
  for (const auto& split : split_factors_by_class(cert)) {
    const bool touches = cls == ClassSelector::A ? split.in_a : split.in_b;
    if (!touches) continue;
    const auto& f = split.factor;
    const int expected = n - f.poly.degree() * f.multiplicity;
    const int rank = evaluate(f.poly, a).rank();
    if (rank != expected) {
      throw NotSemisimpleOnClass("A is not semisimple on class " + std::string(class_name(cls)) + ": rank of (" +
                                 f.poly.to_string() + ")(A) is " + std::to_string(rank) + ", expected " +
                                 std::to_string(expected));
    }
  }
}

double SubspacePair::max_residual() const {
  double r = 0;
  for (double x : residuals_e) r = std::max(r, x);
  for (double x : residuals_f) r = std::max(r, x);
  return r;
}

SubspacePair invariant_subspaces(const IntMatrix& a, const TwoClassCertificate& cert, ClassSelector e_class,
                                 const Tolerances& tol) {
  if (char_poly(a) != cert.poly) {
    throw std::invalid_argument("certificate polynomial is not the characteristic polynomial of A");
  }
  check_semisimple_on_class(a, cert, e_class);
  check_semisimple_on_class(a, cert, other(e_class));

  const int n = a.dim();
  const Eigen::MatrixXd am = to_eigen(a);
  const double norm = am.norm();
  Eigen::EigenSolver<Eigen::MatrixXd> es(am, false);
  const Eigen::VectorXcd ev = es.eigenvalues();

  const double le = std::log(class_modulus(cert, e_class));
  const double lf = std::log(class_modulus(cert, other(e_class)));
  const int q = class_multiplicity(cert, e_class);
  const int m = class_multiplicity(cert, other(e_class));

  // Real class polynomials P_E(A), P_F(A); conjugate pairs become real
  // quadratics, each factor scaled to unit size.
  Eigen::MatrixXd pe = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd pf = Eigen::MatrixXd::Identity(n, n);
  int count_e = 0;
  int count_f = 0;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    const std::complex<double> mu = ev(i);
    const double mod = std::abs(mu);
    const bool in_e = std::abs(std::log(mod) - le) < std::abs(std::log(mod) - lf);
    Eigen::MatrixXd& p = in_e ? pe : pf;
    int& count = in_e ? count_e : count_f;
    const double scale = norm + mod;
    if (std::abs(mu.imag()) <= 1e-9 * std::max(1.0, mod)) {
      p = p * ((am - mu.real() * id) / scale);
      ++count;
    } else if (mu.imag() > 0) {
      p = p * ((am * am - 2 * mu.real() * am + mod * mod * id) / (scale * scale));
      count += 2;
    }
  }
  if (count_e != q || count_f != m) {
    throw IllConditioned("numeric eigenvalues do not match the certified class multiplicities");
  }

  SubspacePair out;
  out.q = q;
  out.m = m;
  out.basis_e = null_space(pe, q, std::sqrt(tol.subspace) * 1e-2, "E");
  out.basis_f = null_space(pf, m, std::sqrt(tol.subspace) * 1e-2, "F");

  auto residuals = [&](const Eigen::MatrixXd& basis) {
    std::vector<double> r;
    for (int j = 0; j < basis.cols(); ++j) {
      const Eigen::VectorXd av = am * basis.col(j);
      r.push_back((av - basis * (basis.transpose() * av)).norm());
    }
    return r;
  };
  out.residuals_e = residuals(out.basis_e);
  out.residuals_f = residuals(out.basis_f);
  if (out.max_residual() > tol.subspace) {
    std::ostringstream os;
    os << "invariant subspace residual " << out.max_residual() << " exceeds " << tol.subspace;
    throw IllConditioned(os.str());
  }

  out.transform.resize(n, n);
  out.transform << out.basis_e, out.basis_f;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.transform);
  out.conditioning = svd.singularValues()(n - 1);
  if (out.conditioning < 1e-8) throw IllConditioned("E and F are numerically dependent");
  out.transform_inv = out.transform.inverse();
  const Eigen::MatrixXd b = out.transform_inv * am * out.transform;
  out.a_e = b.topLeftCorner(q, q);
  out.a_f = b.bottomRightCorner(m, m);
  return out;
}

}  // namespace gib
