#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "gib/geomver.hpp"

namespace gib {

JacobiReport jacobi_contraction(const Eigen::MatrixXd& a, double alpha, const Eigen::VectorXd& direction,
                                int steps_per_unit) {
  if (!(alpha >= 0)) throw std::invalid_argument("alpha must be non-negative");
  if (steps_per_unit < 1) throw std::invalid_argument("steps_per_unit must be positive");
  const int k = static_cast<int>(a.rows());
  if (direction.size() != k) throw std::invalid_argument("direction must lie in the horosphere (dimension k)");
  const double dn = direction.norm();
  if (!(dn > 0)) throw std::invalid_argument("direction must be nonzero");
  const Eigen::VectorXd d = direction / dn;

  const HeintzeAlgebra alg(a);
  const int n = alg.dim();
  const Eigen::MatrixXd gt = alg.gamma_t();
  const Eigen::VectorXd tangent = Eigen::VectorXd::Unit(n, 0);  // gamma' = T

  // State (j, w): components of J and of its covariant derivative in the
  // left-invariant frame. j' = w - Gamma_T j, w' = -Gamma_T w - R(j, T) T.
  auto rhs = [&](const Eigen::VectorXd& j, const Eigen::VectorXd& w, Eigen::VectorXd& dj, Eigen::VectorXd& dw) {
    dj = w - gt * j;
    dw = -gt * w - alg.curvature(j, tangent, tangent);
  };

  Eigen::VectorXd j = Eigen::VectorXd::Zero(n);
  j.tail(k) = d;
  Eigen::VectorXd dj0 = Eigen::VectorXd::Zero(n);
  dj0.tail(k) = -a * d;  // horospherical field: j(u) = e^{-uA} d
  Eigen::VectorXd w = dj0 + gt * j;

  JacobiReport r;
  r.alpha = alpha;
  r.steps = alpha > 0 ? static_cast<int>(std::ceil(alpha * steps_per_unit)) : 0;
  const double h = r.steps > 0 ? alpha / r.steps : 0;
  r.norms.reserve(static_cast<std::size_t>(r.steps) + 1);
  r.norms.push_back(j.norm());
  r.min_decrease = std::numeric_limits<double>::infinity();
  Eigen::VectorXd k1j, k1w, k2j, k2w, k3j, k3w, k4j, k4w;
  for (int s = 1; s <= r.steps; ++s) {
    rhs(j, w, k1j, k1w);
    rhs(j + 0.5 * h * k1j, w + 0.5 * h * k1w, k2j, k2w);
    rhs(j + 0.5 * h * k2j, w + 0.5 * h * k2w, k3j, k3w);
    rhs(j + h * k3j, w + h * k3w, k4j, k4w);
    j += h / 6 * (k1j + 2 * k2j + 2 * k3j + k4j);
    w += h / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
    const double nrm = j.norm();
    const double drop = r.norms.back() - nrm;
    r.min_decrease = std::min(r.min_decrease, drop);
    if (!(drop > 0)) r.strictly_decreasing = false;
    r.norms.push_back(nrm);
    if (s % 100 == 0 || s == r.steps) {
      Eigen::VectorXd exact = Eigen::VectorXd::Zero(n);
      exact.tail(k) = (-(s * h) * a).exp() * d;
      r.max_closed_form_error = std::max(r.max_closed_form_error, (j - exact).norm());
    }
  }
  if (r.steps == 0) r.min_decrease = 0;
  r.ratio = r.norms.back() / r.norms.front();
  const Eigen::MatrixXd decay = (-alpha * a).exp();
  r.closed_form = (decay * d).norm();
  return r;
}

JacobiReport jacobi_contraction(const MetricModel& model, double alpha, const Eigen::VectorXd& direction,
                                int steps_per_unit) {
  switch (model.kind()) {
    case ModelKind::UpperHalfSpace:
      return jacobi_contraction(Eigen::MatrixXd::Identity(model.dim() - 1, model.dim() - 1), alpha, direction,
                                steps_per_unit);
    case ModelKind::Heintze:
      return jacobi_contraction(model.heintze_matrix(), alpha, direction, steps_per_unit);
    case ModelKind::ProductGIB:
      break;
  }
  throw std::invalid_argument("Jacobi contraction needs an upper half-space or Heintze model");
}

}  // namespace gib
