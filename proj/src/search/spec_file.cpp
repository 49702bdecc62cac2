#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "gib/search.hpp"

namespace gib {

namespace {

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

int to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int out = 0;
  try {
    out = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ParseError(key + ": expected an integer, got '" + v + "'");
  return out;
}

// "[a, b]", "a-b", "a..b" or "a"
std::pair<int, int> int_pair(const std::string& key, std::string v, bool allow_single) {
  v = unquote(v);
  static const std::regex list(R"(^\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]$)");
  static const std::regex range(R"(^(\d+)\s*(?:-|\.\.)\s*(\d+)$)");
  static const std::regex single(R"(^\[?\s*(\d+)\s*\]?$)");
  std::smatch m;
  if (std::regex_match(v, m, list) || std::regex_match(v, m, range)) {
    return {to_int(key, m[1]), to_int(key, m[2])};
  }
  if (allow_single && std::regex_match(v, m, single)) {
    const int d = to_int(key, m[1]);
    return {d, d};
  }
  throw ParseError(key + ": cannot parse '" + v + "'");
}

bool to_bool(const std::string& key, std::string v) {
  v = unquote(v);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError(key + ": expected true or false, got '" + v + "'");
}

}  // namespace

std::string canonical_string(const SearchSpec& spec) {
  std::ostringstream os;
  os << "degrees=" << spec.degree_min << '-' << spec.degree_max << ";bound=" << spec.coeff_bound
     << ";pattern=";
  if (spec.class_pattern) {
    os << spec.class_pattern->first << ',' << spec.class_pattern->second;
  } else {
    os << "any";
  }
  os << ";precision=" << spec.max_precision_bits << ";blocks=" << (spec.include_block_products ? 1 : 0);
  return os.str();
}

std::string spec_hash(const SearchSpec& spec) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : canonical_string(spec)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json spec_to_json(const SearchSpec& spec) {
  Json j;
  j["degrees"] = Json::array({spec.degree_min, spec.degree_max});
  j["bound"] = spec.coeff_bound;
  if (spec.class_pattern) {
    j["pattern"] = Json::array({spec.class_pattern->first, spec.class_pattern->second});
  } else {
    j["pattern"] = nullptr;
  }
  j["precision"] = spec.max_precision_bits;
  j["blocks"] = spec.include_block_products;
  j["spec_hash"] = spec_hash(spec);
  return j;
}

SearchSpec parse_spec_text(const std::string& text) {
  SearchSpec spec;
  bool have_degrees = false;
  bool have_bound = false;
  std::istringstream in(text);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;  // blank, comment or [table] header
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "degrees" || key == "degree") {
      auto [lo, hi] = int_pair(key, value, true);
      spec.degree_min = lo;
      spec.degree_max = hi;
      have_degrees = true;
    } else if (key == "bound" || key == "coeff_bound") {
      spec.coeff_bound = to_int(key, unquote(value));
      have_bound = true;
    } else if (key == "pattern" || key == "class_pattern") {
      if (unquote(value) == "none" || unquote(value) == "any") {
        spec.class_pattern.reset();
      } else {
        spec.class_pattern = int_pair(key, value, false);
      }
    } else if (key == "precision" || key == "max_precision_bits") {
      spec.max_precision_bits = to_int(key, unquote(value));
    } else if (key == "blocks" || key == "include_block_products") {
      spec.include_block_products = to_bool(key, value);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_degrees) throw ParseError("spec is missing 'degrees'");
  if (!have_bound) throw ParseError("spec is missing 'bound'");
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return spec;
}

SearchSpec read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

}  // namespace gib
