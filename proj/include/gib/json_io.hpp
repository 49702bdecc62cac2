#pragma once

// JSON forms of the polyclass objects and of verification reports.
// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; readers accept either. Rationals are always
// numerator/denominator strings.

#include <optional>
#include <string>
#include <string_view>

#include "gib/polyclass.hpp"
#include "gib/report.hpp"
#include "json.hpp"

namespace gib {

using Json = nlohmann::ordered_json;

std::string tool_version();

Json integer_to_json(const mpz_class& z);
mpz_class integer_from_json(const Json& j);

Json poly_to_json(const IntPolynomial& p);
IntPolynomial poly_from_json(const Json& j);
/// "-1,3,-1,1" -> X^3 - X^2 + 3X - 1 (constant term first). When `negated`
/// is given, a leading coefficient of -1 is accepted and the whole list is
/// negated (same roots); *negated reports whether that happened.
IntPolynomial parse_poly_list(std::string_view text, bool* negated = nullptr);

Json matrix_to_json(const IntMatrix& m);
/// Accepts a bare array of rows or an object with a "matrix" field.
IntMatrix matrix_from_json(const Json& j);

Json cluster_to_json(const ModulusCluster& c);
ModulusCluster cluster_from_json(const Json& j);

/// {poly, classes: [A, B], precision_bits} plus "matrix" when given.
Json certificate_to_json(const TwoClassCertificate& cert, const IntMatrix* matrix = nullptr);
TwoClassCertificate certificate_from_json(const Json& j);
std::optional<IntMatrix> certificate_matrix(const Json& j);

/// {"outcome": "certificate" | "rejection" | "undecided", ...}
Json classification_to_json(const Classification& c);
Classification classification_from_json(const Json& j);

Json report_to_json(const VerificationReport& r);

/// Header object that opens every output file.
Json header_json(std::string_view command, Json config, std::optional<std::uint64_t> seed, Json tolerances);

Json read_json_file(const std::string& path);

}  // namespace gib
