// gibtool: certify | search | build-verify | geometry
//
// Exit codes: 0 pass, 1 usage or I/O error, 2 negative result, 3 undecided.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gib/geomver.hpp"
#include "gib/report_io.hpp"
#include "gib/search.hpp"
#include "gib/simstruct.hpp"

using namespace gib;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNegative = 2;
constexpr int kExitUndecided = 3;

struct UsageError : Error {
  using Error::Error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw Error("cannot write " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + tok + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------- certify

struct CertifyArgs {
  std::string poly;
  std::string matrix;
  int degree = -1;
  int precision = kDefaultMaxPrecisionBits;
  std::string out;
};

int cmd_certify(const CertifyArgs& a) {
  if (a.poly.empty() == a.matrix.empty()) throw UsageError("give exactly one of --poly or --matrix");
  std::optional<IntMatrix> matrix;
  bool negated = false;
  std::optional<IntPolynomial> parsed;
  if (!a.matrix.empty()) {
    matrix = matrix_from_json(read_json_file(a.matrix));
    parsed = char_poly(*matrix);
  } else {
    parsed = parse_poly_list(a.poly, &negated);
    if (negated) std::cerr << "gibtool: leading coefficient -1, certifying the negated (monic) polynomial\n";
  }
  const IntPolynomial& p = *parsed;
  if (a.degree >= 0 && a.degree != p.degree()) {
    throw UsageError("degree echo mismatch: --degree " + std::to_string(a.degree) + " but the input has degree " +
                     std::to_string(p.degree()) + " (coefficients are constant term first)");
  }
  const Classification c = classify_two_class(p, a.precision);

  Json config;
  config["poly"] = poly_to_json(p);
  config["poly_text"] = p.to_string();
  config["source"] = matrix ? a.matrix : "--poly";
  config["negated_input"] = negated;
  config["max_precision_bits"] = a.precision;
  Json doc = header_json("certify", config, std::nullopt, Json::object());
  Json result = classification_to_json(c);
  int code = kExitPass;
  if (const auto* cert = std::get_if<TwoClassCertificate>(&c)) {
    result["certificate"] = certificate_to_json(*cert, matrix ? &*matrix : nullptr);
    result["product_relation_residual"] = product_relation_residual(*cert);
  } else if (std::holds_alternative<Rejection>(c)) {
    code = kExitNegative;
  } else {
    code = kExitUndecided;
  }
  doc["result"] = result;
  write_text(a.out, dump(doc));
  if (!a.out.empty() && a.out != "-") std::cout << result.value("outcome", "") << "\n";
  return code;
}

// ----------------------------------------------------------------- search

struct SearchArgs {
  std::string spec;
  std::string out;
  std::string store;
  int workers = 0;
  bool scan = false;
};

int cmd_search(const SearchArgs& a) {
  const SearchSpec spec = read_spec_file(a.spec);
  ResultStore store(a.store.empty() ? ResultStore::default_dir() : std::filesystem::path(a.store));
  SearchOptions opts;
  opts.workers = a.workers > 0 ? a.workers : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  opts.store = &store;

  // Worker count is not part of the header so result files compare equal
  // across worker counts.
  Json config = spec_to_json(spec);
  config["scan"] = a.scan;
  std::string body = header_json("search", config, std::nullopt, Json::object()).dump() + "\n";

  int certificates = 0;
  int undecided = 0;
  if (a.scan) {
    for (int d = spec.degree_min; d <= spec.degree_max; ++d) {
      SearchSpec one = spec;
      one.degree_min = one.degree_max = d;
      one.class_pattern = std::make_pair(1, d - 1);
      const SearchResult r = search_certificates(one, opts);
      for (const auto& rec : r.records) body += record_to_json(rec, false).dump() + "\n";
      certificates += r.summary.certificates;
      undecided += r.summary.undecided;
      std::cout << "degree " << d << ": " << r.summary.certificates << " certificate(s) with pattern (1," << d - 1
                << "), " << r.summary.undecided << " undecided" << (r.cached ? " [cached]" : "") << "\n";
    }
  } else {
    const SearchResult r = search_certificates(spec, opts);
    for (const auto& rec : r.records) body += record_to_json(rec, false).dump() + "\n";
    certificates = r.summary.certificates;
    undecided = r.summary.undecided;
    std::cout << (r.cached ? "cached " : "") << "summary " << summary_to_json(r.summary).dump() << "\n";
    for (int d = spec.degree_min; d <= spec.degree_max; ++d) {
      auto it = r.summary.certificates_by_degree.find(d);
      std::cout << "degree " << d << ": " << (it == r.summary.certificates_by_degree.end() ? 0 : it->second)
                << " certificate(s)\n";
    }
  }
  if (!a.out.empty()) write_text(a.out, body);
  if (certificates > 0) return kExitPass;
  return undecided > 0 ? kExitUndecided : kExitNegative;
}

// ----------------------------------------------------------- build-verify

struct BuildArgs {
  std::string cert;
  std::string matrix;
  std::string e_class = "auto";
  int samples = 100;
  std::uint64_t seed = 0;
  double t_scale = 0;
  bool literal_glide = false;
  std::string out_data;
  std::string out_report;
};

int cmd_build_verify(const BuildArgs& a) {
  const Json cj = read_json_file(a.cert);
  const TwoClassCertificate cert = certificate_from_json(cj);
  IntMatrix m = !a.matrix.empty() ? matrix_from_json(read_json_file(a.matrix))
                                  : certificate_matrix(cj).value_or(semisimple_matrix(cert));
  ClassSelector e = ClassSelector::B;
  if (a.e_class == "A" || a.e_class == "a") {
    e = ClassSelector::A;
  } else if (a.e_class != "B" && a.e_class != "b" && a.e_class != "auto") {
    throw UsageError("--e-class must be A, B or auto");
  }
  if (a.literal_glide && a.t_scale != 0) throw UsageError("--literal-glide and --t-scale are exclusive");

  Tolerances tol;
  Json config;
  config["certificate"] = a.cert;
  config["e_class"] = e == ClassSelector::A ? "A" : "B";
  config["samples"] = a.samples;
  config["t_scale_override"] = a.t_scale != 0 ? Json(a.t_scale) : Json(nullptr);
  config["literal_glide"] = a.literal_glide;
  const Json header = header_json("build-verify", config, a.seed, tolerances_to_json(tol));

  VerificationReport report;
  Json data_doc = header;
  try {
    GIBData d = build_gib_data(m, cert, e, tol);
    if (a.literal_glide) d.t_scale = d.literal_t_scale();
    if (a.t_scale != 0) d.t_scale = a.t_scale;
    report = verify_gib_data(d, a.samples, a.seed);
    data_doc["data"] = gib_data_to_json(d);
  } catch (const NotSemisimpleOnClass& ex) {
    report.add("construction", false, std::nullopt, ex.what());
  } catch (const IllConditioned& ex) {
    report.add("construction", false, std::nullopt, ex.what());
  } catch (const NoPositiveDefiniteSolution& ex) {
    report.add("construction", false, std::nullopt, ex.what());
  }
  Json report_doc = header;
  report_doc["all_pass"] = report.all_pass();
  report_doc["report"] = report_to_json(report);
  if (!a.out_data.empty()) write_text(a.out_data, dump(data_doc));
  if (!a.out_report.empty()) write_text(a.out_report, dump(report_doc));
  for (const auto& en : report.entries) {
    std::cout << to_string(en.status) << "  " << en.check;
    if (en.residual) std::cout << "  " << *en.residual;
    std::cout << "\n";
  }
  return report.all_pass() ? kExitPass : kExitNegative;
}

// --------------------------------------------------------------- geometry

struct GeometryArgs {
  std::string matrix;
  std::string model = "heintze";
  int dim = 1;
  std::string mode = "curvature";
  int planes = 100;
  std::uint64_t seed = 0;
  double alpha = 1.0;
  std::string direction;
  int steps = 10000;
  std::string csv;
  std::string out;
};

int cmd_geometry(const GeometryArgs& a) {
  Eigen::MatrixXd am;
  if (a.model == "uhs") {
    if (a.dim < 1) throw UsageError("--dim must be at least 1");
    am = Eigen::MatrixXd::Identity(a.dim, a.dim);
  } else if (a.model == "heintze") {
    if (a.matrix.empty()) throw UsageError("--matrix is required for the heintze model");
    am = eigen_from_json(read_json_file(a.matrix));
    if (am.rows() != am.cols()) throw UsageError("matrix must be square");
  } else {
    throw UsageError("--model must be heintze or uhs");
  }
  const int k = static_cast<int>(am.rows());

  Json config;
  config["mode"] = a.mode;
  config["model"] = a.model;
  config["matrix"] = eigen_to_json(am);
  Json doc;
  int code = kExitPass;
  if (a.mode == "curvature") {
    config["planes"] = a.planes;
    doc = header_json("geometry", config, a.seed, Json{{"fd_step", 1e-3}, {"fd_agreement", 1e-4}});
    const CurvatureReport cr = heintze_curvature(am, a.planes, a.seed);
    VerificationReport rep;
    rep.add("negative_curvature", cr.max < 0, cr.max, "max sampled sectional curvature");
    // Finite-difference cross-check on a few random planes at a random point.
    const HeintzeAlgebra alg(am);
    const MetricModel mm = MetricModel::heintze(am);
    std::mt19937_64 rng(a.seed);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd p(k + 1);
    for (int i = 0; i <= k; ++i) p(i) = 0.3 * gauss(rng);
    double worst = 0;
    for (int s = 0; s < 3 && k >= 1; ++s) {
      Eigen::VectorXd u(k + 1), v(k + 1);
      for (int i = 0; i <= k; ++i) u(i) = gauss(rng);
      for (int i = 0; i <= k; ++i) v(i) = gauss(rng);
      const double fd = fd_sectional_curvature(mm, p, u, v);
      const double ex = alg.sectional(alg.from_coordinates(p(k), u), alg.from_coordinates(p(k), v));
      worst = std::max(worst, std::abs(fd - ex));
    }
    rep.add("finite_difference_agreement", worst <= 1e-4, worst, "Koszul vs finite differences, step 1e-3");
    doc["curvature"] = curvature_to_json(cr);
    doc["report"] = report_to_json(rep);
    if (!a.csv.empty()) write_text(a.csv, curvature_csv(cr));
    std::cout << "min " << cr.min << " max " << cr.max << " over " << cr.planes.size() << " planes\n";
    code = cr.max < 0 ? kExitPass : kExitNegative;
  } else if (a.mode == "jacobi") {
    Eigen::VectorXd d = Eigen::VectorXd::Unit(k, k - 1);
    if (!a.direction.empty()) {
      const auto v = parse_doubles(a.direction);
      if (static_cast<int>(v.size()) != k) throw UsageError("--direction needs " + std::to_string(k) + " components");
      d = Eigen::Map<const Eigen::VectorXd>(v.data(), k);
    }
    config["alpha"] = a.alpha;
    config["direction"] = std::vector<double>(d.data(), d.data() + d.size());
    config["steps_per_unit"] = a.steps;
    doc = header_json("geometry", config, std::nullopt, Json{{"closed_form", 1e-6}});
    const JacobiReport jr = jacobi_contraction(am, a.alpha, d, a.steps);
    VerificationReport rep;
    rep.add("strictly_decreasing", jr.strictly_decreasing || jr.steps == 0, jr.min_decrease,
            "smallest per-step decrease of |J|");
    rep.add("closed_form", std::abs(jr.ratio - jr.closed_form) <= 1e-6, std::abs(jr.ratio - jr.closed_form),
            "|J(alpha)|/|J(0)| vs |exp(-alpha A) d|");
    doc["jacobi"] = jacobi_to_json(jr);
    doc["report"] = report_to_json(rep);
    std::cout << "ratio " << jr.ratio << " closed form " << jr.closed_form
              << (jr.strictly_decreasing ? " strictly decreasing" : " NOT strictly decreasing") << "\n";
    code = rep.all_pass() ? kExitPass : kExitNegative;
  } else {
    throw UsageError("--mode must be curvature or jacobi");
  }
  if (!a.out.empty()) write_text(a.out, dump(doc));
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-modulus-class certification, GIB construction and geometric verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Classify a polynomial or integer matrix by root moduli");
  certify->add_option("--poly", ca.poly, "Coefficients, constant term first: \"-1,3,-1,1\" is X^3 - X^2 + 3X - 1; a list ending in -1 is negated");
  certify->add_option("--matrix", ca.matrix, "JSON integer matrix (array of rows or {\"matrix\": ...})");
  certify->add_option("--degree", ca.degree, "Expected degree (checked against the input)");
  certify->add_option("--precision", ca.precision, "Maximum precision in bits")->check(CLI::Range(64, 1 << 16));
  certify->add_option("-o,--out", ca.out, "Output file (default stdout)");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Exhaustive coefficient-box search");
  search->add_option("--spec", sa.spec, "Spec file (degrees, bound, pattern, precision, blocks)")->required();
  search->add_option("-o,--out", sa.out, "Canonical JSONL result file");
  search->add_option("--store", sa.store, "Store directory (default $GIB_STORE_DIR or ./gib_store)");
  search->add_option("-j,--workers", sa.workers, "Worker threads (default: hardware concurrency)");
  search->add_flag("--scan", sa.scan, "Single-exponent scan: pattern (1, d-1) for each degree d");

  BuildArgs ba;
  auto* build = app.add_subcommand("build-verify", "Build GIB data from a certificate and verify it");
  build->add_option("--cert", ba.cert, "Certificate JSON (certify output or bare certificate)")->required();
  build->add_option("--matrix", ba.matrix, "Integer matrix JSON (default: from the certificate)");
  build->add_option("--e-class", ba.e_class, "Class playing E: A (smaller modulus), B or auto");
  build->add_option("--samples", ba.samples, "Sample count")->check(CLI::PositiveNumber);
  build->add_option("--seed", ba.seed, "Random seed");
  build->add_option("--t-scale", ba.t_scale, "Override the glide's t scaling");
  build->add_flag("--literal-glide", ba.literal_glide, "Scale t by lambda_E^-1 instead of lambda_F");
  build->add_option("--out-data", ba.out_data, "GIB data JSON output");
  build->add_option("--out-report", ba.out_report, "Verification report JSON output");

  GeometryArgs ga;
  auto* geometry = app.add_subcommand("geometry", "Curvature or Jacobi contraction of a Heintze model");
  geometry->add_option("--matrix", ga.matrix, "Real square matrix A (JSON)");
  geometry->add_option("--model", ga.model, "heintze or uhs");
  geometry->add_option("--dim", ga.dim, "Horizontal dimension for --model uhs");
  geometry->add_option("--mode", ga.mode, "curvature or jacobi");
  geometry->add_option("--planes", ga.planes, "Random planes besides the coordinate planes");
  geometry->add_option("--seed", ga.seed, "Random seed");
  geometry->add_option("--alpha", ga.alpha, "Horosphere gap");
  geometry->add_option("--direction", ga.direction, "Horospherical direction, comma separated");
  geometry->add_option("--steps", ga.steps, "RK4 steps per unit length");
  geometry->add_option("--csv", ga.csv, "Curvature table output");
  geometry->add_option("-o,--out", ga.out, "Report JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*certify) return cmd_certify(ca);
    if (*search) return cmd_search(sa);
    if (*build) return cmd_build_verify(ba);
    if (*geometry) return cmd_geometry(ga);
  } catch (const std::exception& e) {
    std::cerr << "gibtool: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
