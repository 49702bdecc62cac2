#pragma once

// Metric models on coordinates (x_1..x_k, t), t last:
//   UpperHalfSpace  (|dx|^2 + dt^2) / t^2, t > 0
//   Heintze(A)      |e^{tA} dx|^2 + dt^2
//   ProductGIB      a^T G_E a + (b^T G_F b + dt^2) / t^2, (a; b) = T^-1 dx, t > 0
// Heintze(I) is the upper half-space under t_uhs = exp(-t).

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gib/report.hpp"
#include "gib/simstruct.hpp"

namespace gib {

enum class ModelKind { UpperHalfSpace, Heintze, ProductGIB };

struct TangentBlock {
  std::string name;
  Eigen::MatrixXd span;  // columns span the block in coordinates
};

class MetricModel {
 public:
  static MetricModel upper_half_space(int k);
  static MetricModel heintze(Eigen::MatrixXd a);
  static MetricModel product(const GIBData& data);

  ModelKind kind() const { return kind_; }
  /// Number of coordinates including t.
  int dim() const { return dim_; }
  const Eigen::MatrixXd& heintze_matrix() const { return a_; }

  bool in_domain(const Eigen::VectorXd& p) const;
  /// Gram matrix of the metric at p in coordinates. Throws OutOfDomain.
  Eigen::MatrixXd metric_matrix(const Eigen::VectorXd& p) const;
  /// Blocks of the tangent space that the pullback report treats separately.
  std::vector<TangentBlock> blocks() const;

 private:
  ModelKind kind_ = ModelKind::UpperHalfSpace;
  int dim_ = 0;
  Eigen::MatrixXd a_;
  int q_ = 0;
  Eigen::MatrixXd t_, t_inv_, ge_, gf_;
};

/// g_p(u, v). Throws OutOfDomain.
double metric_eval(const MetricModel& model, const Eigen::VectorXd& p, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v);

/// Samples points and tangent vectors per block and reports the similarity
/// ratio sqrt(g(d phi u, d phi u) / g(u, u)): median and max deviation from
/// the median; when `expected` names a block its median must match too. For
/// products also checks that the E/N splitting stays orthogonal.
VerificationReport pullback_ratio_report(const MetricModel& model, const AffineMap& map, int samples,
                                         std::uint64_t seed, const std::map<std::string, double>& expected = {},
                                         double tol = 1e-9);

/// Left-invariant metric on R x_A R^k at the identity, orthonormal algebra
/// basis {T, X_1..X_k} with [T, X] = A X. Vectors are (T, X_1..X_k).
class HeintzeAlgebra {
 public:
  explicit HeintzeAlgebra(Eigen::MatrixXd a);

  int dim() const { return n_; }
  /// <nabla_{e_i} e_j, e_k>
  double connection(int i, int j, int k) const { return conn_[idx(i, j, k)]; }
  Eigen::VectorXd bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  Eigen::VectorXd nabla(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  /// R(u, v) w = nabla_u nabla_v w - nabla_v nabla_u w - nabla_[u,v] w
  Eigen::VectorXd curvature(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;
  /// <R(u, v) w, z>
  double riemann(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                 const Eigen::VectorXd& z) const;
  /// <R(u, v) v, u> / |u ^ v|^2
  double sectional(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  /// (Gamma_T)_{lk} = <nabla_T e_k, e_l>
  Eigen::MatrixXd gamma_t() const;

  /// Coordinate tangent vector (v_x, v_t) at height t, written in the
  /// algebra frame: T = -d/dt, X_i = e^{-tA} e_i.
  Eigen::VectorXd from_coordinates(double t, const Eigen::VectorXd& v) const;

 private:
  std::size_t idx(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(k);
  }
  Eigen::MatrixXd a_;
  int n_;
  std::vector<double> conn_;
};

struct PlaneSample {
  Eigen::VectorXd u, v;  // orthonormal, algebra frame
  double curvature = 0;
  bool coordinate = false;
};

struct CurvatureReport {
  double min = 0;
  double max = 0;
  int resampled = 0;  // degenerate random planes replaced
  std::vector<PlaneSample> planes;
};

/// `plane_samples` random planes plus every coordinate plane.
CurvatureReport heintze_curvature(const Eigen::MatrixXd& a, int plane_samples, std::uint64_t seed);
/// Columns: kind, u_0..u_{n-1}, v_0..v_{n-1}, curvature.
std::string curvature_csv(const CurvatureReport& r);

/// Sectional curvature of the coordinate plane span(u, v) at p from finite
/// differences (step h) of the coordinate metric.
double fd_sectional_curvature(const MetricModel& model, const Eigen::VectorXd& p, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& v, double h = 1e-3);

struct JacobiReport {
  double alpha = 0;
  int steps = 0;
  double ratio = 1;            // |J(alpha)| / |J(0)|
  double closed_form = 1;      // |e^{-alpha A} d| / |d|
  double max_closed_form_error = 0;
  bool strictly_decreasing = true;
  double min_decrease = 0;     // smallest |J_i| - |J_{i+1}|
  std::vector<double> norms;   // |J| at every step
};

/// Jacobi field along the vertical geodesic moving a distance alpha toward
/// the fixed point at infinity, started from the horospherical field with
/// J(0) = direction (a vector in R^k, normalized). RK4 with
/// steps_per_unit steps per unit length.
JacobiReport jacobi_contraction(const Eigen::MatrixXd& a, double alpha, const Eigen::VectorXd& direction,
                                int steps_per_unit = 10000);
/// UpperHalfSpace or Heintze model.
JacobiReport jacobi_contraction(const MetricModel& model, double alpha, const Eigen::VectorXd& direction,
                                int steps_per_unit = 10000);

/// Full check list for a built structure: subspace and Gram residuals, glide
/// and lattice pullbacks on the product model, Bieberbach and conformal
/// checks, and the leaf closure dimension as INFO.
VerificationReport verify_gib_data(const GIBData& data, int samples, std::uint64_t seed);

}  // namespace gib
