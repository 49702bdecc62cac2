#include "gib/simstruct.hpp"

namespace gib {

GIBData build_gib_data(const IntMatrix& a, const TwoClassCertificate& cert, ClassSelector e_class,
                       const Tolerances& tol) {
  GIBData d{a, cert, e_class, {}, {}, {}, 0, 0, 0, 0, 0, tol};
  d.subspaces = invariant_subspaces(a, cert, e_class, tol);
  d.q = d.subspaces.q;
  d.m = d.subspaces.m;
  d.lambda_e = class_modulus(cert, e_class);
  d.lambda_f = class_modulus(cert, other(e_class));
  d.gram_e = similarity_gram(d.subspaces.a_e, d.lambda_e, tol.gram);
  d.gram_f = similarity_gram(d.subspaces.a_f, d.lambda_f, tol.gram);
  // lambda_F = lambda_E^(-q/m): the value that makes the glide an isometry
  // of the hyperbolic factor.
  d.t_scale = d.lambda_f;
  return d;
}

AffineMap GIBData::glide() const {
  const int n = ambient();
  AffineMap g{Eigen::MatrixXd::Zero(n + 1, n + 1), Eigen::VectorXd::Zero(n + 1)};
  g.linear.topLeftCorner(n, n) = to_eigen(a);
  g.linear(n, n) = t_scale;
  return g;
}

AffineMap GIBData::translation(int i) const {
  const int n = ambient();
  AffineMap g{Eigen::MatrixXd::Identity(n + 1, n + 1), Eigen::VectorXd::Zero(n + 1)};
  g.offset(i) = 1;
  return g;
}

}  // namespace gib
