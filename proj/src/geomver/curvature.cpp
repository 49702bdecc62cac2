#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "gib/geomver.hpp"

namespace gib {

HeintzeAlgebra::HeintzeAlgebra(Eigen::MatrixXd a) : a_(std::move(a)), n_(static_cast<int>(a_.rows()) + 1) {
  if (a_.rows() < 1 || a_.rows() != a_.cols()) throw std::invalid_argument("Heintze algebra needs a square matrix");
  // c(i, j, l) = <[e_i, e_j], e_l>; only [T, X_j] = sum_l A_lj X_l is nonzero.
  auto c = [&](int i, int j, int l) -> double {
    if (l == 0) return 0;
    if (i == 0 && j > 0) return a_(l - 1, j - 1);
    if (j == 0 && i > 0) return -a_(l - 1, i - 1);
    return 0;
  };
  conn_.assign(static_cast<std::size_t>(n_) * n_ * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int l = 0; l < n_; ++l) conn_[idx(i, j, l)] = 0.5 * (c(i, j, l) - c(j, l, i) + c(l, i, j));
    }
  }
}

Eigen::VectorXd HeintzeAlgebra::bracket(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
  out.tail(n_ - 1) = u(0) * (a_ * v.tail(n_ - 1)) - v(0) * (a_ * u.tail(n_ - 1));
  return out;
}

Eigen::VectorXd HeintzeAlgebra::nabla(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    if (u(i) == 0) continue;
    for (int j = 0; j < n_; ++j) {
      const double w = u(i) * v(j);
      if (w == 0) continue;
      for (int l = 0; l < n_; ++l) out(l) += w * conn_[idx(i, j, l)];
    }
  }
  return out;
}

Eigen::VectorXd HeintzeAlgebra::curvature(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                                          const Eigen::VectorXd& w) const {
  return nabla(u, nabla(v, w)) - nabla(v, nabla(u, w)) - nabla(bracket(u, v), w);
}

double HeintzeAlgebra::riemann(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                               const Eigen::VectorXd& z) const {
  return curvature(u, v, w).dot(z);
}

double HeintzeAlgebra::sectional(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  const double area = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
  if (!(area > 1e-14 * u.squaredNorm() * v.squaredNorm())) throw std::invalid_argument("degenerate plane");
  return riemann(u, v, v, u) / area;
}

Eigen::MatrixXd HeintzeAlgebra::gamma_t() const {
  Eigen::MatrixXd g(n_, n_);
  for (int l = 0; l < n_; ++l) {
    for (int k = 0; k < n_; ++k) g(l, k) = conn_[idx(0, k, l)];
  }
  return g;
}

Eigen::VectorXd HeintzeAlgebra::from_coordinates(double t, const Eigen::VectorXd& v) const {
  const int k = n_ - 1;
  Eigen::VectorXd out(n_);
  out(0) = -v(k);
  out.tail(k) = (t * a_).exp() * v.head(k);
  return out;
}

CurvatureReport heintze_curvature(const Eigen::MatrixXd& a, int plane_samples, std::uint64_t seed) {
  const HeintzeAlgebra alg(a);
  const int n = alg.dim();
  CurvatureReport r;
  r.min = std::numeric_limits<double>::infinity();
  r.max = -std::numeric_limits<double>::infinity();
  auto record = [&](Eigen::VectorXd u, Eigen::VectorXd v, bool coordinate) {
    PlaneSample s{std::move(u), std::move(v), 0, coordinate};
    s.curvature = alg.sectional(s.u, s.v);
    r.min = std::min(r.min, s.curvature);
    r.max = std::max(r.max, s.curvature);
    r.planes.push_back(std::move(s));
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) record(Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j), true);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < plane_samples;) {
    Eigen::VectorXd u(n), v(n);
    for (int i = 0; i < n; ++i) u(i) = gauss(rng);
    for (int i = 0; i < n; ++i) v(i) = gauss(rng);
    const double nu = u.norm();
    if (nu < 1e-6) {
      ++r.resampled;
      continue;
    }
    u /= nu;
    v -= v.dot(u) * u;
    const double nv = v.norm();
    if (nv < 1e-6) {
      ++r.resampled;
      continue;
    }
    v /= nv;
    record(u, v, false);
    ++s;
  }
  return r;
}

std::string curvature_csv(const CurvatureReport& r) {
  std::ostringstream os;
  os.precision(17);
  const int n = r.planes.empty() ? 0 : static_cast<int>(r.planes.front().u.size());
  os << "kind";
  for (int i = 0; i < n; ++i) os << ",u" << i;
  for (int i = 0; i < n; ++i) os << ",v" << i;
  os << ",curvature\n";
  for (const auto& p : r.planes) {
    os << (p.coordinate ? "coordinate" : "random");
    for (int i = 0; i < n; ++i) os << ',' << p.u(i);
    for (int i = 0; i < n; ++i) os << ',' << p.v(i);
    os << ',' << p.curvature << '\n';
  }
  return os.str();
}

namespace {

// Christoffel symbols Gamma[a](b, c) = Gamma^a_{bc} by central differences.
std::vector<Eigen::MatrixXd> christoffel(const MetricModel& model, const Eigen::VectorXd& p, double h) {
  const int n = model.dim();
  std::vector<Eigen::MatrixXd> dg(static_cast<std::size_t>(n));  // dg[c](a, b) = d_c g_ab
  for (int c = 0; c < n; ++c) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n, c) * h;
    dg[static_cast<std::size_t>(c)] = (model.metric_matrix(p + e) - model.metric_matrix(p - e)) / (2 * h);
  }
  const Eigen::MatrixXd ginv = model.metric_matrix(p).inverse();
  std::vector<Eigen::MatrixXd> gamma(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        double s = 0;
        for (int l = 0; l < n; ++l) {
          s += ginv(a, l) * (dg[static_cast<std::size_t>(b)](c, l) + dg[static_cast<std::size_t>(c)](b, l) -
                             dg[static_cast<std::size_t>(l)](b, c));
        }
        gamma[static_cast<std::size_t>(a)](b, c) = 0.5 * s;
      }
    }
  }
  return gamma;
}

}  // namespace

double fd_sectional_curvature(const MetricModel& model, const Eigen::VectorXd& p, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& v, double h) {
  const int n = model.dim();
  const auto gamma = christoffel(model, p, h);
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(static_cast<std::size_t>(n));  // dgamma[c][a](b, d)
  for (int c = 0; c < n; ++c) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(n, c) * h;
    const auto plus = christoffel(model, p + e, h);
    const auto minus = christoffel(model, p - e, h);
    for (int a = 0; a < n; ++a) {
      dgamma[static_cast<std::size_t>(c)].push_back((plus[static_cast<std::size_t>(a)] - minus[static_cast<std::size_t>(a)]) / (2 * h));
    }
  }
  // R(d_c, d_d) d_b = R^a_{bcd} d_a with
  // R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
  auto R = [&](int a, int b, int c, int d) {
    const auto A = static_cast<std::size_t>(a);
    double s = dgamma[static_cast<std::size_t>(c)][A](d, b) - dgamma[static_cast<std::size_t>(d)][A](c, b);
    for (int e = 0; e < n; ++e) {
      const auto E = static_cast<std::size_t>(e);
      s += gamma[A](c, e) * gamma[E](d, b) - gamma[A](d, e) * gamma[E](c, b);
    }
    return s;
  };
  Eigen::VectorXd ruvv = Eigen::VectorXd::Zero(n);
  for (int a = 0; a < n; ++a) {
    double s = 0;
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) s += u(c) * v(d) * v(b) * R(a, b, c, d);
      }
    }
    ruvv(a) = s;
  }
  const Eigen::MatrixXd g = model.metric_matrix(p);
  const double area = u.dot(g * u) * v.dot(g * v) - std::pow(u.dot(g * v), 2);
  return ruvv.dot(g * u) / area;
}

}  // namespace gib
