#include <cmath>
#include <random>
#include <sstream>

#include "gib/simstruct.hpp"

namespace gib {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

double bieberbach_residual(double rho, double phi, int q) { return std::abs(std::log(rho) + std::log(phi) / q); }

VerificationReport bieberbach_ratio_check(const GIBData& data) {
  VerificationReport r;
  const auto& s = data.subspaces;
  const Eigen::MatrixXd& g = data.gram_e.g;
  // Ratio of A on (E, b_E), measured through the Gram form.
  const double rho = std::sqrt((g.inverse() * s.a_e.transpose() * g * s.a_e).trace() / data.q);
  const double phi = std::abs(s.a_f.determinant());
  const double res = bieberbach_residual(rho, phi, data.q);
  r.add("bieberbach_ratio", res <= data.tol.bieberbach, res,
        "rho = " + fmt(rho) + ", phi = |det A_F| = " + fmt(phi) + ", q = " + std::to_string(data.q));

  const mpz_class det = data.a.determinant();
  r.add("lattice_determinant", abs(det) == 1, std::abs(det.get_d()) - 1.0,
        "|det A| = " + mpz_class(abs(det)).get_str() + " (exact)");

  const double rel = std::abs(rho / data.lambda_e - 1);
  r.add("ratio_matches_certificate", rel <= data.tol.gram, rel,
        "rho vs certified lambda_E = " + fmt(data.lambda_e));

  const double expo = data.q * std::log(data.lambda_e) + data.m * std::log(data.lambda_f);
  bool exact = true;
  try {
    validate_certificate(data.cert);
  } catch (const std::invalid_argument&) {
    exact = false;
  }
  r.add("exponent_relation", exact, std::abs(expo), "|q log lambda_E + m log lambda_F|; exact interval product contains 1");
  return r;
}

VerificationReport conformal_factor_check(const GIBData& data, int samples, std::uint64_t seed) {
  VerificationReport r;
  const int n = data.ambient();
  const Eigen::MatrixXd& gf = data.gram_f.g;
  const Eigen::MatrixXd& af = data.subspaces.a_f;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> height(0.5, 2.0);

  const AffineMap glide = data.glide();
  double dev_equiv = 0;
  double dev_flat = 0;
  double dev_trans = 0;
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd p(n + 1);
    for (int i = 0; i < n; ++i) p(i) = coord(rng);
    p(n) = height(rng);
    // (i) f o glide = rho f with rho = lambda_F
    const double ratio = glide.apply(p)(n) / p(n);
    dev_equiv = std::max(dev_equiv, std::abs(ratio / data.lambda_f - 1));

    // (ii) flat metric b_F + dt^2 on F x R_+
    Eigen::VectorXd b(data.m);
    for (int i = 0; i < data.m; ++i) b(i) = coord(rng);
    const double tau = coord(rng);
    const Eigen::VectorXd ab = af * b;
    const double before = b.dot(gf * b) + tau * tau;
    const double after = ab.dot(gf * ab) + data.t_scale * data.t_scale * tau * tau;
    dev_flat = std::max(dev_flat, std::abs(std::sqrt(after / before) / data.t_scale - 1));

    // (iii) translations leave f unchanged
    for (int i = 0; i < n; ++i) dev_trans = std::max(dev_trans, std::abs(data.translation(i).apply(p)(n) - p(n)));
  }
  const double tol = data.tol.pullback;
  r.add("conformal_equivariance", dev_equiv <= tol, dev_equiv,
        "max |f(glide p) / (lambda_F f(p)) - 1| over " + std::to_string(samples) + " points, t_scale = " +
            fmt(data.t_scale) + ", lambda_F = " + fmt(data.lambda_f));
  r.add("flat_similarity", dev_flat <= tol, dev_flat,
        "glide on (F x R_+, b_F + dt^2) has constant ratio t_scale (max relative deviation)");
  r.add("translation_invariance", dev_trans == 0, dev_trans, "f(x + e_i, t) - f(x, t), all i");
  if (data.q != data.m) {
    r.info("literal_scaling", data.literal_t_scale(),
           "q != m: lambda_E^-1 = " + fmt(data.literal_t_scale()) + " differs from lambda_F = " + fmt(data.lambda_f) +
               "; only lambda_F makes the glide isometric on the hyperbolic factor");
  }
  return r;
}

}  // namespace gib
