#pragma once

#include "gib/geomver.hpp"
#include "gib/json_io.hpp"
#include "gib/simstruct.hpp"

namespace gib {

Json eigen_to_json(const Eigen::MatrixXd& m);  // row-major array of rows
Eigen::MatrixXd eigen_from_json(const Json& j);
Json tolerances_to_json(const Tolerances& t);

/// Matrix, certificate, bases, Grams (row-major), ratios and tolerances.
Json gib_data_to_json(const GIBData& d);
Json curvature_to_json(const CurvatureReport& r);
/// Norm trace is subsampled to at most `max_trace` points.
Json jacobi_to_json(const JacobiReport& r, int max_trace = 101);

}  // namespace gib
