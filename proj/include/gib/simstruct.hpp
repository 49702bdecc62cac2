#pragma once

// Geometric package of a two-class matrix: invariant subspaces E/F,
// invariant scalar products, the glide and lattice generators of the
// model R^q x H^{m+1}, and the algebraic identity checks.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "gib/polyclass.hpp"
#include "gib/report.hpp"

namespace gib {

struct Tolerances {
  double subspace = 1e-8;
  double gram = 1e-10;
  double pullback = 1e-9;
  double bieberbach = 1e-12;
};

Eigen::MatrixXd to_eigen(const IntMatrix& m);

/// Matrix realizing the certificate that is semisimple on both classes:
/// the companion matrix when the polynomial is square-free, otherwise the
/// block-diagonal sum of companions of the irreducible factors, each
/// repeated by its multiplicity.
IntMatrix semisimple_matrix(const TwoClassCertificate& cert);

/// Throws NotSemisimpleOnClass unless rank f(A) = n - deg(f) k for every
/// irreducible factor f^k of the characteristic polynomial touching the
/// class (exact).
void check_semisimple_on_class(const IntMatrix& a, const TwoClassCertificate& cert, ClassSelector cls);

struct SubspacePair {
  Eigen::MatrixXd basis_e;  // n x q, orthonormal columns
  Eigen::MatrixXd basis_f;  // n x m
  int q = 0;
  int m = 0;
  std::vector<double> residuals_e;  // |A v - P_E A v| per basis vector
  std::vector<double> residuals_f;
  /// T = [basis_e basis_f]; T^-1 A T has diagonal blocks a_e, a_f.
  Eigen::MatrixXd transform;
  Eigen::MatrixXd transform_inv;
  Eigen::MatrixXd a_e;
  Eigen::MatrixXd a_f;
  double conditioning = 0;  // smallest singular value of transform
  double max_residual() const;
};

/// Throws NotSemisimpleOnClass, IllConditioned.
SubspacePair invariant_subspaces(const IntMatrix& a, const TwoClassCertificate& cert, ClassSelector e_class,
                                 const Tolerances& tol = {});

struct GramForm {
  Eigen::MatrixXd g;
  double lambda = 0;
  double residual = 0;  // |A^T G A - lambda^2 G| / |G| (Frobenius)
  double min_eigenvalue = 0;
  bool averaged = false;  // built from the Cesaro average
};

/// Symmetric positive definite G with A^T G A = lambda^2 G, trace(G) = dim.
/// Throws NoPositiveDefiniteSolution.
GramForm similarity_gram(const Eigen::MatrixXd& a, double lambda, double tol = 1e-10);

/// Affine map x -> linear x + offset on coordinates (x_1..x_n, t).
struct AffineMap {
  Eigen::MatrixXd linear;
  Eigen::VectorXd offset;
  Eigen::VectorXd apply(const Eigen::VectorXd& p) const { return linear * p + offset; }
};

struct GIBData {
  IntMatrix a;
  TwoClassCertificate cert;
  ClassSelector e_class = ClassSelector::B;
  SubspacePair subspaces;
  GramForm gram_e;
  GramForm gram_f;
  double lambda_e = 0;
  double lambda_f = 0;
  double t_scale = 0;
  int q = 0;
  int m = 0;
  Tolerances tol;

  int ambient() const { return q + m; }
  /// (x, t) -> (A x, t_scale t)
  AffineMap glide() const;
  /// (x, t) -> (x + e_i, t)
  AffineMap translation(int i) const;
  /// Example scaling lambda_E^-1 of the t coordinate.
  double literal_t_scale() const { return 1.0 / lambda_e; }
};

/// Class modulus as a double, from the certificate's interval.
double class_modulus(const TwoClassCertificate& cert, ClassSelector cls);
int class_multiplicity(const TwoClassCertificate& cert, ClassSelector cls);
ClassSelector other(ClassSelector cls);

GIBData build_gib_data(const IntMatrix& a, const TwoClassCertificate& cert, ClassSelector e_class,
                       const Tolerances& tol = {});

/// |log rho + (1/q) log phi| with rho the Gram-measured ratio of A on E and
/// phi = |det A|_F|, plus |det A| = 1 exactly.
VerificationReport bieberbach_ratio_check(const GIBData& data);
double bieberbach_residual(double rho, double phi, int q);

/// With f(x, t) = t: (i) f o glide / f = lambda_F, (ii) glide is a
/// similarity of ratio t_scale for b_F + dt^2, (iii) lattice translations
/// fix f.
VerificationReport conformal_factor_check(const GIBData& data, int samples, std::uint64_t seed);

}  // namespace gib
