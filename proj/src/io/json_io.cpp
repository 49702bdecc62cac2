#include "gib/json_io.hpp"

#include <cmath>
#include <fstream>

namespace gib {

namespace {

mpq_class rational(const Json& num, const Json& den) {
  mpq_class q(integer_from_json(num), integer_from_json(den));
  if (q.get_den() == 0) throw ParseError("zero denominator");
  q.canonicalize();
  return q;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

std::string tool_version() { return GIB_VERSION; }

Json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<long long>(z.get_si());
  return z.get_str();
}

mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    mpz_class z;
    std::string s = j.get<std::string>();
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    if (s.empty() || z.set_str(s, 10) != 0) throw ParseError("not an integer: '" + j.get<std::string>() + "'");
    return z;
  }
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9e15) return mpz_class(d);
  }
  throw ParseError("not an integer: " + j.dump());
}

Json poly_to_json(const IntPolynomial& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(integer_to_json(c));
  return a;
}

IntPolynomial poly_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("polynomial must be an array of coefficients");
  std::vector<mpz_class> c;
  for (const auto& e : j) c.push_back(integer_from_json(e));
  try {
    return IntPolynomial(std::move(c));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

IntPolynomial parse_poly_list(std::string_view text, bool* negated) {
  std::vector<mpz_class> c;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string tok(text.substr(pos, comma - pos));
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) throw ParseError("empty coefficient in '" + std::string(text) + "'");
    c.push_back(integer_from_json(Json(tok)));
    pos = comma + 1;
  }
  if (negated) *negated = false;
  if (negated && !c.empty() && c.back() == -1) {
    // -p has the same roots; accept it and report the normalization.
    for (auto& x : c) x = -x;
    *negated = true;
  }
  try {
    return IntPolynomial(std::move(c));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json r = Json::array();
    for (int j = 0; j < m.dim(); ++j) r.push_back(integer_to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? member(j, "matrix") : j;
  if (!rows.is_array() || rows.empty()) throw ParseError("matrix must be a non-empty array of rows");
  std::vector<std::vector<mpz_class>> out;
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != rows.size()) throw ParseError("matrix must be square");
    std::vector<mpz_class> row;
    for (const auto& e : r) row.push_back(integer_from_json(e));
    out.push_back(std::move(row));
  }
  return IntMatrix::from_rows(out);
}

Json cluster_to_json(const ModulusCluster& c) {
  Json j;
  j["lo_num"] = c.lo.get_num().get_str();
  j["lo_den"] = c.lo.get_den().get_str();
  j["hi_num"] = c.hi.get_num().get_str();
  j["hi_den"] = c.hi.get_den().get_str();
  j["mult"] = c.multiplicity;
  j["semisimple"] = c.semisimple;
  return j;
}

ModulusCluster cluster_from_json(const Json& j) {
  ModulusCluster c;
  c.lo = rational(member(j, "lo_num"), member(j, "lo_den"));
  c.hi = rational(member(j, "hi_num"), member(j, "hi_den"));
  c.multiplicity = field<int>(j, "mult");
  c.semisimple = j.value("semisimple", true);
  return c;
}

Json certificate_to_json(const TwoClassCertificate& cert, const IntMatrix* matrix) {
  Json j;
  j["poly"] = poly_to_json(cert.poly);
  j["classes"] = Json::array({cluster_to_json(cert.class_a), cluster_to_json(cert.class_b)});
  j["precision_bits"] = cert.precision_bits;
  if (matrix) j["matrix"] = matrix_to_json(*matrix);
  return j;
}

namespace {
// Accepts a bare certificate, {"certificate": ...} or certify's {"result": {...}}.
const Json& unwrap_certificate(const Json& in) {
  const Json* j = &in;
  if (j->is_object() && j->contains("result")) j = &j->at("result");
  if (j->is_object() && j->contains("certificate")) j = &j->at("certificate");
  return *j;
}
}  // namespace

TwoClassCertificate certificate_from_json(const Json& in) {
  const Json& j = unwrap_certificate(in);
  TwoClassCertificate cert{poly_from_json(member(j, "poly")), {}, {}, 0};
  const Json& cls = member(j, "classes");
  if (!cls.is_array() || cls.size() != 2) throw ParseError("a certificate has exactly two classes");
  cert.class_a = cluster_from_json(cls[0]);
  cert.class_b = cluster_from_json(cls[1]);
  if (cert.class_b.hi < cert.class_a.lo) std::swap(cert.class_a, cert.class_b);
  cert.precision_bits = field<int>(j, "precision_bits");
  try {
    validate_certificate(cert);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return cert;
}

std::optional<IntMatrix> certificate_matrix(const Json& in) {
  const Json& j = unwrap_certificate(in);
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  return std::nullopt;
}

Json classification_to_json(const Classification& c) {
  Json j;
  if (const auto* cert = std::get_if<TwoClassCertificate>(&c)) {
    j["outcome"] = "certificate";
    j["certificate"] = certificate_to_json(*cert);
    j["multiplicities"] = Json::array({cert->class_a.multiplicity, cert->class_b.multiplicity});
    j["moduli"] = Json::array({cert->class_a.midpoint(), cert->class_b.midpoint()});
  } else if (const auto* rej = std::get_if<Rejection>(&c)) {
    j["outcome"] = "rejection";
    j["reason"] = std::string(to_string(rej->reason));
    j["detail"] = rej->detail;
  } else {
    const auto& u = std::get<Undecided>(c);
    j["outcome"] = "undecided";
    j["precision_bits"] = u.precision_bits;
    j["detail"] = u.detail;
  }
  return j;
}

Classification classification_from_json(const Json& j) {
  const auto outcome = field<std::string>(j, "outcome");
  if (outcome == "certificate") return certificate_from_json(member(j, "certificate"));
  if (outcome == "rejection") {
    return Rejection{rejection_reason_from_string(field<std::string>(j, "reason")), j.value("detail", "")};
  }
  if (outcome == "undecided") return Undecided{field<int>(j, "precision_bits"), j.value("detail", "")};
  throw ParseError("unknown outcome '" + outcome + "'");
}

Json report_to_json(const VerificationReport& r) {
  Json a = Json::array();
  for (const auto& e : r.entries) {
    Json j;
    j["check"] = e.check;
    j["status"] = to_string(e.status);
    if (e.residual && std::isfinite(*e.residual)) {
      j["residual"] = *e.residual;
    } else {
      j["residual"] = "NA";
    }
    j["detail"] = e.detail;
    a.push_back(std::move(j));
  }
  return a;
}

Json header_json(std::string_view command, Json config, std::optional<std::uint64_t> seed, Json tolerances) {
  Json h;
  h["tool"] = "gibtool";
  h["version"] = tool_version();
  h["command"] = std::string(command);
  h["config"] = std::move(config);
  if (seed) {
    h["seed"] = *seed;
  } else {
    h["seed"] = nullptr;
  }
  h["tolerances"] = std::move(tolerances);
  Json wrapper;
  wrapper["header"] = std::move(h);
  return wrapper;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace gib
