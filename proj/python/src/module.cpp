// Python bindings. Structured results cross the boundary as JSON text (the
// same documents the CLI writes); the wrapper in gib/__init__.py decodes them.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "gib/geomver.hpp"
#include "gib/report_io.hpp"
#include "gib/search.hpp"

namespace py = pybind11;
using namespace gib;

namespace {

// Python ints of any size, through their decimal text
IntPolynomial poly_arg(const std::vector<py::int_>& coeffs) {
  std::vector<mpz_class> c;
  c.reserve(coeffs.size());
  for (const auto& x : coeffs) c.emplace_back(std::string(py::repr(x)));
  return IntPolynomial(std::move(c));
}

IntMatrix matrix_arg(const std::vector<std::vector<py::int_>>& rows) {
  std::vector<std::vector<mpz_class>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (const auto& x : row) r.back().emplace_back(std::string(py::repr(x)));
  }
  return IntMatrix::from_rows(r);
}

ClassSelector selector(const std::string& s) {
  if (s == "A" || s == "a") return ClassSelector::A;
  if (s == "B" || s == "b" || s == "auto") return ClassSelector::B;
  throw std::invalid_argument("e_class must be 'A', 'B' or 'auto'");
}

std::string classify_json(const std::vector<py::int_>& coeffs, int bits) {
  IntPolynomial p = poly_arg(coeffs);
  const Classification c = [&] {
    py::gil_scoped_release nogil;
    return classify_two_class(p, bits);
  }();
  return classification_to_json(c).dump();
}

std::string search_json(const std::string& spec_text, int workers, std::optional<std::string> store_dir) {
  SearchSpec spec = parse_spec_text(spec_text);
  std::optional<ResultStore> store;
  if (store_dir) store.emplace(*store_dir);
  SearchOptions o;
  o.workers = workers;
  o.store = store ? &*store : nullptr;
  SearchResult r;
  {
    py::gil_scoped_release nogil;
    r = search_certificates(spec, o);
  }
  Json j;
  j["spec"] = spec_to_json(spec);
  j["cached"] = r.cached;
  j["summary"] = summary_to_json(r.summary);
  j["records"] = Json::array();
  for (const auto& rec : r.records) j["records"].push_back(record_to_json(rec, false));
  return j.dump();
}

std::string build_verify_json(const std::string& cert_text, std::optional<std::vector<std::vector<py::int_>>> matrix,
                              const std::string& e_class, int samples, std::uint64_t seed,
                              std::optional<double> t_scale, bool literal_glide) {
  const Json cj = Json::parse(cert_text);
  const TwoClassCertificate cert = certificate_from_json(cj);
  const IntMatrix a = matrix ? matrix_arg(*matrix) : certificate_matrix(cj).value_or(semisimple_matrix(cert));
  GIBData d = build_gib_data(a, cert, selector(e_class));
  if (literal_glide) d.t_scale = d.literal_t_scale();
  if (t_scale) d.t_scale = *t_scale;
  VerificationReport r = verify_gib_data(d, samples, seed);
  Json j;
  j["all_pass"] = r.all_pass();
  j["report"] = report_to_json(r);
  j["data"] = gib_data_to_json(d);
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "two-class integer polynomials, GIB data and Heintze geometry";
  m.attr("__version__") = tool_version();

  // base first: the most recently registered translator is tried first
  py::register_exception<Error>(m, "GibError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NotSemisimpleOnClass>(m, "NotSemisimpleOnClass", PyExc_ValueError);
  py::register_exception<NoPositiveDefiniteSolution>(m, "NoPositiveDefiniteSolution", PyExc_ValueError);
  py::register_exception<IllConditioned>(m, "IllConditioned", PyExc_ArithmeticError);
  py::register_exception<OutOfDomain>(m, "OutOfDomain", PyExc_ValueError);

  m.def("classify", &classify_json, py::arg("coeffs"), py::arg("max_precision_bits") = kDefaultMaxPrecisionBits,
        "Classification JSON for a monic polynomial, coefficients constant term first.");

  m.def(
      "char_poly",
      [](const std::vector<std::vector<py::int_>>& rows) { return poly_to_json(char_poly(matrix_arg(rows))).dump(); },
      py::arg("matrix"));
  m.def(
      "companion_matrix",
      [](const std::vector<py::int_>& c) { return matrix_to_json(companion_matrix(poly_arg(c))).dump(); },
      py::arg("coeffs"));
  m.def(
      "factor",
      [](const std::vector<py::int_>& c) {
        Json j = Json::array();
        for (const auto& f : factor_over_integers(poly_arg(c))) {
          j.push_back({{"poly", poly_to_json(f.poly)}, {"multiplicity", f.multiplicity}});
        }
        return j.dump();
      },
      py::arg("coeffs"));
  m.def(
      "leaf_closure_dim",
      [](const std::string& cert_text, const std::string& e_class) {
        return leaf_closure_dims(certificate_from_json(Json::parse(cert_text)), selector(e_class));
      },
      py::arg("certificate"), py::arg("e_class") = "B");

  m.def("search", &search_json, py::arg("spec_text"), py::arg("workers") = 1, py::arg("store_dir") = py::none());

  m.def("build_verify", &build_verify_json, py::arg("certificate"), py::arg("matrix") = py::none(),
        py::arg("e_class") = "B", py::arg("samples") = 100, py::arg("seed") = 0, py::arg("t_scale") = py::none(),
        py::arg("literal_glide") = false);

  m.def(
      "curvature",
      [](const Eigen::MatrixXd& a, int planes, std::uint64_t seed) {
        CurvatureReport r = heintze_curvature(a, planes, seed);
        Json j = curvature_to_json(r);
        j["csv"] = curvature_csv(r);
        return j.dump();
      },
      py::arg("a"), py::arg("planes") = 100, py::arg("seed") = 0);

  m.def(
      "jacobi",
      [](const Eigen::MatrixXd& a, double alpha, const Eigen::VectorXd& direction, int steps) {
        return jacobi_to_json(jacobi_contraction(a, alpha, direction, steps)).dump();
      },
      py::arg("a"), py::arg("alpha") = 1.0, py::arg("direction"), py::arg("steps_per_unit") = 10000);

  m.def(
      "metric_eval",
      [](const std::string& model, const Eigen::MatrixXd& a, const Eigen::VectorXd& p, const Eigen::VectorXd& u,
         const Eigen::VectorXd& v) {
        const MetricModel mm = model == "uhs" ? MetricModel::upper_half_space(static_cast<int>(a.rows()))
                                              : MetricModel::heintze(a);
        return metric_eval(mm, p, u, v);
      },
      py::arg("model"), py::arg("a"), py::arg("p"), py::arg("u"), py::arg("v"));
}
