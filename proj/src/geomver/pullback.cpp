#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gib/geomver.hpp"

namespace gib {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

VerificationReport pullback_ratio_report(const MetricModel& model, const AffineMap& map, int samples,
                                         std::uint64_t seed, const std::map<std::string, double>& expected,
                                         double tol) {
  VerificationReport report;
  const int n = model.dim();
  if (map.linear.rows() != n || map.linear.cols() != n || map.offset.size() != n) {
    throw std::invalid_argument("map dimension does not match the model");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> height(0.5, 2.0);
  std::normal_distribution<double> gauss;
  const auto blocks = model.blocks();
  std::vector<std::vector<double>> ratios(blocks.size());
  double split = 0;
  int outside = 0;

  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n - 1; ++i) p(i) = coord(rng);
    p(n - 1) = model.kind() == ModelKind::Heintze ? coord(rng) : height(rng);
    const Eigen::VectorXd fp = map.apply(p);
    if (!model.in_domain(fp)) {
      ++outside;
      continue;
    }
    const Eigen::MatrixXd g0 = model.metric_matrix(p);
    const Eigen::MatrixXd g1 = model.metric_matrix(fp);
    std::vector<Eigen::VectorXd> images;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      Eigen::VectorXd c(blocks[b].span.cols());
      for (int i = 0; i < c.size(); ++i) c(i) = gauss(rng);
      const Eigen::VectorXd u = blocks[b].span * c;
      const Eigen::VectorXd du = map.linear * u;
      ratios[b].push_back(std::sqrt(du.dot(g1 * du) / u.dot(g0 * u)));
      images.push_back(du);
    }
    for (std::size_t b = 1; b < images.size(); ++b) {
      const double cross = images[0].dot(g1 * images[b]);
      split = std::max(split, std::abs(cross) / std::sqrt(images[0].dot(g1 * images[0]) * images[b].dot(g1 * images[b])));
    }
  }

  if (outside > 0) {
    report.add("domain", false, outside, std::to_string(outside) + " sample images left the domain");
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string name = "pullback[" + blocks[b].name + "]";
    if (ratios[b].empty()) {
      report.add(name, false, std::nullopt, "no samples");
      continue;
    }
    const double med = median(ratios[b]);
    double dev = 0;
    for (double r : ratios[b]) dev = std::max(dev, std::abs(r - med));
    std::ostringstream os;
    os.precision(15);
    os << "median ratio " << med << ", max deviation " << dev << " over " << ratios[b].size() << " samples";
    bool ok = dev <= tol;
    double residual = dev;
    if (auto it = expected.find(blocks[b].name); it != expected.end()) {
      const double off = std::abs(med - it->second);
      os << ", expected " << it->second << " (off by " << off << ")";
      ok = ok && off <= tol;
      residual = std::max(dev, off);
    }
    report.add(name, ok, residual, os.str());
  }
  if (blocks.size() > 1) {
    report.add("splitting", split <= tol, split, "max |cos| between image E and N vectors");
  }
  return report;
}

}  // namespace gib
