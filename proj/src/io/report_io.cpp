#include "gib/report_io.hpp"

namespace gib {

Json eigen_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

Eigen::MatrixXd eigen_from_json(const Json& in) {
  const Json& j = (in.is_object() && in.contains("matrix")) ? in.at("matrix") : in;
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<int>(j.size());
  const auto cols = static_cast<int>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) throw ParseError("ragged matrix rows");
    for (int c = 0; c < cols; ++c) {
      const Json& e = j[i][c];
      if (e.is_number()) {
        m(i, c) = e.get<double>();
      } else if (e.is_string()) {
        try {
          m(i, c) = std::stod(e.get<std::string>());
        } catch (const std::exception&) {
          throw ParseError("not a number: " + e.dump());
        }
      } else {
        throw ParseError("not a number: " + e.dump());
      }
    }
  }
  return m;
}

Json tolerances_to_json(const Tolerances& t) {
  Json j;
  j["subspace"] = t.subspace;
  j["gram"] = t.gram;
  j["pullback"] = t.pullback;
  j["bieberbach"] = t.bieberbach;
  return j;
}

Json gib_data_to_json(const GIBData& d) {
  Json j;
  j["matrix"] = matrix_to_json(d.a);
  j["certificate"] = certificate_to_json(d.cert);
  j["e_class"] = d.e_class == ClassSelector::A ? "A" : "B";
  j["q"] = d.q;
  j["m"] = d.m;
  j["model"] = "R^" + std::to_string(d.q) + " x H^" + std::to_string(d.m + 1) +
               ", h = b_E + (b_F + dt^2) / t^2 (upper half-space)";
  j["lambda_e"] = d.lambda_e;
  j["lambda_f"] = d.lambda_f;
  j["t_scale"] = d.t_scale;
  j["literal_t_scale"] = d.literal_t_scale();
  j["basis_e"] = eigen_to_json(d.subspaces.basis_e);
  j["basis_f"] = eigen_to_json(d.subspaces.basis_f);
  j["subspace_residual"] = d.subspaces.max_residual();
  j["gram_e"] = {{"g", eigen_to_json(d.gram_e.g)},
                 {"lambda", d.gram_e.lambda},
                 {"residual", d.gram_e.residual},
                 {"min_eigenvalue", d.gram_e.min_eigenvalue},
                 {"averaged", d.gram_e.averaged}};
  j["gram_f"] = {{"g", eigen_to_json(d.gram_f.g)},
                 {"lambda", d.gram_f.lambda},
                 {"residual", d.gram_f.residual},
                 {"min_eigenvalue", d.gram_f.min_eigenvalue},
                 {"averaged", d.gram_f.averaged}};
  j["generators"] = {{"translations", "standard basis of Z^" + std::to_string(d.ambient())},
                     {"glide", "(x, t) -> (A x, t_scale t)"}};
  j["tolerances"] = tolerances_to_json(d.tol);
  return j;
}

Json curvature_to_json(const CurvatureReport& r) {
  Json j;
  j["min"] = r.min;
  j["max"] = r.max;
  j["planes"] = r.planes.size();
  j["coordinate_planes"] = std::count_if(r.planes.begin(), r.planes.end(), [](const PlaneSample& p) { return p.coordinate; });
  j["resampled"] = r.resampled;
  return j;
}

Json jacobi_to_json(const JacobiReport& r, int max_trace) {
  Json j;
  j["alpha"] = r.alpha;
  j["steps"] = r.steps;
  j["ratio"] = r.ratio;
  j["closed_form"] = r.closed_form;
  j["max_closed_form_error"] = r.max_closed_form_error;
  j["strictly_decreasing"] = r.strictly_decreasing;
  j["min_decrease"] = r.min_decrease;
  Json trace = Json::array();
  const std::size_t n = r.norms.size();
  const std::size_t stride = std::max<std::size_t>(1, (n + static_cast<std::size_t>(max_trace) - 2) /
                                                          static_cast<std::size_t>(std::max(1, max_trace - 1)));
  for (std::size_t i = 0; i < n; i += stride) trace.push_back({{"step", i}, {"norm", r.norms[i]}});
  if (n > 0 && (n - 1) % stride != 0) trace.push_back({{"step", n - 1}, {"norm", r.norms[n - 1]}});
  j["norm_trace"] = trace;
  return j;
}

}  // namespace gib
