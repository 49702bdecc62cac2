// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "gib/geomver.hpp"
#include "gib/search.hpp"
#include "gib/simstruct.hpp"

using namespace gib;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

TwoClassCertificate certify(const IntPolynomial& p) { return std::get<TwoClassCertificate>(classify_two_class(p)); }

GIBData cubic_data(ClassSelector e = ClassSelector::B) {
  return build_gib_data(companion_matrix(fx::cubic()), certify(fx::cubic()), e);
}

GIBData block_data(ClassSelector e = ClassSelector::B) {
  IntMatrix a = fx::block_matrix();
  return build_gib_data(a, certify(char_poly(a)), e);
}

double residual_of(const VerificationReport& r, const std::string& check) {
  const auto* e = r.find(check);
  return e && e->residual ? *e->residual : INFINITY;
}

bool passed(const VerificationReport& r, const std::string& check) {
  const auto* e = r.find(check);
  return e && e->status == CheckStatus::Pass;
}

// 1
Outcome cubic_certification() {
  auto t0 = std::chrono::steady_clock::now();
  Classification c = classify_two_class(fx::cubic());
  const double secs = seconds_since(t0);
  auto* cert = std::get_if<TwoClassCertificate>(&c);
  if (!cert) return {false, "no certificate"};
  const double rel = std::log(cert->class_a.midpoint()) + 2 * std::log(cert->class_b.midpoint());
  const bool mult = cert->class_a.multiplicity == 1 && cert->class_b.multiplicity == 2;
  return {mult && std::abs(rel) < 1e-12 && secs < 1.0,
          fmt("multiplicities (%.0f, %.0f), |log l + 2 log m| = %.2e", cert->class_a.multiplicity,
              cert->class_b.multiplicity, std::abs(rel)) +
              fmt(", %.3f s", secs)};
}

// 2
Outcome block_certification() {
  Classification c = classify_two_class(char_poly(fx::block_matrix()));
  auto* cert = std::get_if<TwoClassCertificate>(&c);
  if (!cert) return {false, "no certificate"};
  const mpq_class lo = cert->class_a.lo * cert->class_b.lo;
  const mpq_class hi = cert->class_a.hi * cert->class_b.hi;
  const bool contains = lo <= 1 && 1 <= hi;
  const double width = mpq_class(hi - lo).get_d();
  const bool mult = cert->class_a.multiplicity == 2 && cert->class_b.multiplicity == 2;
  return {mult && contains && width < 1e-12, std::string("multiplicities (2, 2): ") + (mult ? "yes" : "no") +
                                                 ", product interval contains 1: " + (contains ? "yes" : "no") +
                                                 fmt(", width %.2e", width)};
}

// 3
Outcome search_reproduction() {
  SearchSpec s;
  s.degree_min = s.degree_max = 3;
  s.coeff_bound = 3;
  s.class_pattern = std::make_pair(1, 2);
  std::string dumps[2];
  double worst = 0;
  bool found = false;
  int k = 0;
  for (int w : {1, 8}) {
    SearchOptions o;
    o.workers = w;
    auto t0 = std::chrono::steady_clock::now();
    SearchResult r = search_certificates(s, o);
    worst = std::max(worst, seconds_since(t0));
    for (const auto& rec : r.records) {
      dumps[k] += record_to_json(rec, false).dump() + "\n";
      if (rec.poly == fx::cubic() && matches_pattern(rec.outcome, s.class_pattern)) found = true;
    }
    ++k;
  }
  const bool same = dumps[0] == dumps[1];
  return {found && same && worst < 10.0, std::string("cubic found: ") + (found ? "yes" : "no") +
                                             ", 1 vs 8 workers identical: " + (same ? "yes" : "no") +
                                             fmt(", slowest run %.2f s", worst)};
}

// 4
Outcome exponent_scan() {
  SearchOptions o;
  o.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto t0 = std::chrono::steady_clock::now();
  ScanReport r = single_exponent_scan(4, 5, 5, o);
  const double secs = seconds_since(t0);
  int hits = 0, undecided = 0;
  for (const auto& [d, n] : r.hits_by_degree) hits += n;
  for (const auto& [d, n] : r.undecided_by_degree) undecided += n;
  return {hits == 0 && secs < 60.0,
          fmt("certificates %.0f (undecided %.0f), %.1f s", hits, undecided, secs) +
              fmt(" on %.0f workers", o.workers)};
}

// 5
Outcome gram_soundness() {
  double worst_res = 0, min_eig = INFINITY;
  for (auto e : {ClassSelector::A, ClassSelector::B}) {
    for (const GIBData& d : {cubic_data(e), block_data(e)}) {
      for (const GramForm* g : {&d.gram_e, &d.gram_f}) {
        worst_res = std::max(worst_res, g->residual);
        min_eig = std::min(min_eig, g->min_eigenvalue);
      }
    }
  }
  return {min_eig > 0 && worst_res < 1e-10, fmt("8 forms, min eigenvalue %.3g, max residual %.2e", min_eig, worst_res)};
}

// 6
Outcome gib_membership() {
  GIBData d = cubic_data();
  VerificationReport r = verify_gib_data(d, 100, 0);
  bool ok = passed(r, "glide.pullback[E]") && passed(r, "glide.pullback[N]");
  double worst = std::max(residual_of(r, "glide.pullback[E]"), residual_of(r, "glide.pullback[N]"));
  for (int i = 0; i < d.ambient(); ++i) {
    for (const char* b : {"pullback[E]", "pullback[N]"}) {
      const std::string name = "translation" + std::to_string(i) + "." + b;
      ok = ok && passed(r, name);
      worst = std::max(worst, residual_of(r, name));
    }
  }
  return {ok && worst <= 1e-9, fmt("glide ratios (lambda_E = %.6f, 1), lattice ratios 1; max deviation %.2e over 100 samples",
                                   d.lambda_e, worst)};
}

// 7
Outcome bieberbach() {
  double worst = 0;
  bool ok = true;
  for (const GIBData& d : {cubic_data(), block_data()}) {
    VerificationReport r = bieberbach_ratio_check(d);
    ok = ok && r.all_pass();
    worst = std::max(worst, residual_of(r, "bieberbach_ratio"));
  }
  return {ok && worst < 1e-12, fmt("|log rho + (1/q) log phi| max %.2e", worst)};
}

// 8
Outcome conformal() {
  double worst = 0;
  bool ok = true;
  for (const GIBData& d : {cubic_data(), block_data()}) {
    VerificationReport r = conformal_factor_check(d, 100, 0);
    for (const char* k : {"conformal_equivariance", "flat_similarity", "translation_invariance"}) {
      ok = ok && passed(r, k);
      worst = std::max(worst, residual_of(r, k));
    }
  }
  return {ok && worst <= 1e-9, fmt("equivariance, flat similarity, translation invariance: max %.2e", worst)};
}

// 9
Outcome leaf_closures() {
  const int a = leaf_closure_dims(certify(fx::cubic()), ClassSelector::B);
  const int b = leaf_closure_dims(certify(char_poly(fx::block_matrix())), ClassSelector::B);
  return {a == 3 && b == 4, fmt("cubic %.0f, block matrix %.0f", a, b)};
}

// 10
Outcome curvature() {
  auto i2 = heintze_curvature(Eigen::MatrixXd::Identity(2, 2), 100, 0);
  double dev = std::max(std::abs(i2.min + 1), std::abs(i2.max + 1));
  bool ok = dev <= 1e-9;
  double dev_c = 0;
  for (double c : {0.5, 2.0}) {
    auto r = heintze_curvature(c * Eigen::MatrixXd::Identity(2, 2), 100, 1);
    dev_c = std::max({dev_c, std::abs(r.min + c * c), std::abs(r.max + c * c)});
  }
  ok = ok && dev_c <= 1e-8;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  double fd_dev = 0;
  Eigen::MatrixXd d12 = Eigen::Vector2d(1, 2).asDiagonal();
  for (const Eigen::MatrixXd& a : {Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2)), d12}) {
    HeintzeAlgebra alg(a);
    MetricModel m = MetricModel::heintze(a);
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::Vector3d p(0.5 * g(rng), 0.5 * g(rng), 0.5 * g(rng)), u(g(rng), g(rng), g(rng)), v(g(rng), g(rng), g(rng));
      const double fd = fd_sectional_curvature(m, p, u, v);
      const double ex = alg.sectional(alg.from_coordinates(p(2), u), alg.from_coordinates(p(2), v));
      fd_dev = std::max(fd_dev, std::abs(fd - ex));
    }
  }
  ok = ok && fd_dev <= 1e-4;
  return {ok, fmt("I2 deviation %.2e, cI deviation %.2e, finite differences %.2e", dev, dev_c, fd_dev)};
}

// 11
Outcome jacobi() {
  Eigen::VectorXd e1 = Eigen::VectorXd::Ones(1);
  auto h = jacobi_contraction(MetricModel::upper_half_space(1), 1.0, e1);
  const double dh = std::abs(h.ratio - std::exp(-1.0));
  Eigen::MatrixXd d12 = Eigen::Vector2d(1, 2).asDiagonal();
  auto d = jacobi_contraction(d12, 1.0, Eigen::Vector2d(0, 1));
  const double dd = std::abs(d.ratio - std::exp(-2.0));
  return {dh <= 1e-6 && h.strictly_decreasing && dd <= 1e-6 && d.strictly_decreasing,
          fmt("plane: |ratio - e^-1| = %.2e, diag(1,2) along e2: |ratio - e^-2| = %.2e", dh, dd) +
              (h.strictly_decreasing ? ", strictly decreasing" : ", NOT strictly decreasing")};
}

// 12
Outcome literal_scaling() {
  GIBData d = cubic_data();
  VerificationReport consistent = verify_gib_data(d, 100, 0);
  d.t_scale = d.literal_t_scale();
  VerificationReport literal = verify_gib_data(d, 100, 0);
  const bool lit_fails = !passed(literal, "glide.pullback[N]");
  const bool cons_passes = passed(consistent, "glide.pullback[N]") && consistent.all_pass();
  return {lit_fails && cons_passes,
          fmt("q = %.0f, m = %.0f; N-block spread with 1/lambda_E: %.3g", d.q, d.m,
              residual_of(literal, "glide.pullback[N]")) +
              (cons_passes ? ", with lambda_E^(-q/m): PASS" : ", with lambda_E^(-q/m): FAIL")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cubic certification", cubic_certification},
      {"block matrix certification", block_certification},
      {"search reproduction", search_reproduction},
      {"single exponent scan, degrees 4-5", exponent_scan},
      {"Gram soundness", gram_soundness},
      {"pullback membership", gib_membership},
      {"Bieberbach ratio", bieberbach},
      {"conformal factor", conformal},
      {"leaf closures", leaf_closures},
      {"curvature", curvature},
      {"Jacobi contraction", jacobi},
      {"literal vs consistent scaling", literal_scaling},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %2d %s: %s\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failures, n);
  return failures == 0 ? 0 : 1;
}
