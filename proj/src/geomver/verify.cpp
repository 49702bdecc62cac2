#include <string>

#include "gib/geomver.hpp"

namespace gib {

VerificationReport verify_gib_data(const GIBData& d, int samples, std::uint64_t seed) {
  VerificationReport r;
  r.add("subspace_residual", d.subspaces.max_residual() <= d.tol.subspace, d.subspaces.max_residual());
  for (const auto* g : {&d.gram_e, &d.gram_f}) {
    const std::string name = g == &d.gram_e ? "gram_e" : "gram_f";
    r.add(name, g->min_eigenvalue > 0 && g->residual <= d.tol.gram, g->residual,
          "min eigenvalue " + std::to_string(g->min_eigenvalue) + (g->averaged ? ", averaged" : ""));
  }
  const MetricModel model = MetricModel::product(d);
  r.append(pullback_ratio_report(model, d.glide(), samples, seed, {{"E", d.lambda_e}, {"N", 1.0}}, d.tol.pullback),
           "glide.");
  for (int i = 0; i < d.ambient(); ++i) {
    r.append(pullback_ratio_report(model, d.translation(i), samples, seed + 1 + static_cast<std::uint64_t>(i),
                                   {{"E", 1.0}, {"N", 1.0}}, d.tol.pullback),
             "translation" + std::to_string(i) + ".");
  }
  r.append(bieberbach_ratio_check(d));
  r.append(conformal_factor_check(d, samples, seed));
  r.info("leaf_closure_dim", leaf_closure_dims(d.cert, d.e_class),
         "dimension of the closure of an E-leaf in the fiber torus");
  return r;
}

}  // namespace gib
