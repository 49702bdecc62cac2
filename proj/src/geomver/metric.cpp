#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "gib/geomver.hpp"

namespace gib {

MetricModel MetricModel::upper_half_space(int k) {
  if (k < 1) throw std::invalid_argument("upper half-space needs at least one horizontal coordinate");
  MetricModel m;
  m.kind_ = ModelKind::UpperHalfSpace;
  m.dim_ = k + 1;
  return m;
}

MetricModel MetricModel::heintze(Eigen::MatrixXd a) {
  if (a.rows() < 1 || a.rows() != a.cols()) throw std::invalid_argument("Heintze model needs a square matrix");
  MetricModel m;
  m.kind_ = ModelKind::Heintze;
  m.dim_ = static_cast<int>(a.rows()) + 1;
  m.a_ = std::move(a);
  return m;
}

MetricModel MetricModel::product(const GIBData& data) {
  MetricModel m;
  m.kind_ = ModelKind::ProductGIB;
  m.dim_ = data.ambient() + 1;
  m.q_ = data.q;
  m.t_ = data.subspaces.transform;
  m.t_inv_ = data.subspaces.transform_inv;
  m.ge_ = data.gram_e.g;
  m.gf_ = data.gram_f.g;
  return m;
}

bool MetricModel::in_domain(const Eigen::VectorXd& p) const {
  if (p.size() != dim_ || !p.allFinite()) return false;
  return kind_ == ModelKind::Heintze || p(dim_ - 1) > 0;
}

Eigen::MatrixXd MetricModel::metric_matrix(const Eigen::VectorXd& p) const {
  if (!in_domain(p)) throw OutOfDomain("point outside the model's domain");
  const int k = dim_ - 1;
  const double t = p(k);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim_, dim_);
  switch (kind_) {
    case ModelKind::UpperHalfSpace:
      g = Eigen::MatrixXd::Identity(dim_, dim_) / (t * t);
      break;
    case ModelKind::Heintze: {
      const Eigen::MatrixXd s = (t * a_).exp();
      g.topLeftCorner(k, k) = s.transpose() * s;
      g(k, k) = 1;
      break;
    }
    case ModelKind::ProductGIB: {
      const int m = k - q_;
      Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(k, k);
      inner.topLeftCorner(q_, q_) = ge_;
      inner.bottomRightCorner(m, m) = gf_ / (t * t);
      g.topLeftCorner(k, k) = t_inv_.transpose() * inner * t_inv_;
      g(k, k) = 1 / (t * t);
      break;
    }
  }
  return g;
}

std::vector<TangentBlock> MetricModel::blocks() const {
  const int k = dim_ - 1;
  if (kind_ != ModelKind::ProductGIB) return {{"all", Eigen::MatrixXd::Identity(dim_, dim_)}};
  const int m = k - q_;
  TangentBlock e{"E", Eigen::MatrixXd::Zero(dim_, q_)};
  e.span.topRows(k) = t_.leftCols(q_);
  TangentBlock n{"N", Eigen::MatrixXd::Zero(dim_, m + 1)};
  n.span.topLeftCorner(k, m) = t_.rightCols(m);
  n.span(k, m) = 1;
  return {e, n};
}

double metric_eval(const MetricModel& model, const Eigen::VectorXd& p, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v) {
  if (u.size() != model.dim() || v.size() != model.dim()) throw std::invalid_argument("tangent dimension mismatch");
  return u.dot(model.metric_matrix(p) * v);
}

}  // namespace gib
