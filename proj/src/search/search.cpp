#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>
#include <thread>

#include "gib/search.hpp"

namespace gib {

namespace {

bool in_box(const IntPolynomial& p, int bound) {
  if (abs(p.constant_term()) != 1) return false;
  for (int i = 1; i < p.degree(); ++i) {
    if (abs(p[static_cast<std::size_t>(i)]) > bound) return false;
  }
  return true;
}

// Certified two-class polynomials of one degree in the box.
std::vector<IntPolynomial> certified_in_box(int degree, int bound, int bits) {
  std::vector<IntPolynomial> out;
  for (int v = -bound; v <= bound; ++v) {
    for_each_box_candidate(degree, bound, v, [&](const IntPolynomial& p) {
      if (std::holds_alternative<TwoClassCertificate>(classify_two_class(p, bits))) out.push_back(p);
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

void tally(SearchSummary& s, const SearchRecord& r, const std::optional<std::pair<int, int>>& pattern) {
  ++s.candidates;
  if (std::holds_alternative<TwoClassCertificate>(r.outcome)) {
    if (matches_pattern(r.outcome, pattern)) {
      ++s.certificates;
      ++s.certificates_by_degree[r.poly.degree()];
    } else {
      ++s.filtered;
    }
  } else if (const auto* rej = std::get_if<Rejection>(&r.outcome)) {
    ++s.rejections;
    ++s.rejections_by_reason[std::string(to_string(rej->reason))];
  } else {
    ++s.undecided;
  }
}

}  // namespace

void validate(const SearchSpec& spec) {
  if (spec.degree_min < 2 || spec.degree_max > 16 || spec.degree_min > spec.degree_max) {
    throw std::invalid_argument("degrees must form a range inside [2, 16]");
  }
  if (spec.coeff_bound < 1) throw std::invalid_argument("coefficient bound must be at least 1");
  if (spec.max_precision_bits < kBasePrecisionBits) {
    throw std::invalid_argument("precision must be at least " + std::to_string(kBasePrecisionBits) + " bits");
  }
  if (spec.class_pattern && (spec.class_pattern->first < 1 || spec.class_pattern->second < 1)) {
    throw std::invalid_argument("pattern multiplicities must be positive");
  }
}

bool matches_pattern(const Classification& c, const std::optional<std::pair<int, int>>& pattern) {
  const auto* cert = std::get_if<TwoClassCertificate>(&c);
  if (!cert) return false;
  if (!pattern) return true;
  const int a = cert->class_a.multiplicity;
  const int b = cert->class_b.multiplicity;
  return (a == pattern->first && b == pattern->second) || (a == pattern->second && b == pattern->first);
}

void for_each_box_candidate(int degree, int bound, int leading_free,
                            const std::function<void(const IntPolynomial&)>& fn) {
  if (degree < 2) throw std::invalid_argument("box candidates need degree >= 2");
  const auto d = static_cast<std::size_t>(degree);
  std::vector<mpz_class> c(d + 1, 0);
  c[d] = 1;
  c[d - 1] = leading_free;
  // a_0 outermost, then an odometer over a_1..a_{d-2} with a_{d-2} fastest.
  const std::size_t free = d - 2;
  for (const int a0 : {-1, 1}) {
    c[0] = a0;
    std::vector<int> digit(free, -bound);
    while (true) {
      for (std::size_t i = 0; i < free; ++i) c[i + 1] = digit[i];
      fn(IntPolynomial(c));
      std::size_t i = free;
      while (i > 0 && digit[i - 1] == bound) digit[--i] = -bound;
      if (i == 0) break;
      ++digit[i - 1];
    }
  }
}

std::vector<IntPolynomial> block_products(int degree, int bound, int max_precision_bits) {
  std::vector<IntPolynomial> base;
  for (int d = 2; d <= degree - 2; ++d) {
    auto c = certified_in_box(d, bound, max_precision_bits);
    base.insert(base.end(), c.begin(), c.end());
  }
  std::set<IntPolynomial> out;
  // Multisets of base polynomials (non-decreasing index) with degrees summing
  // to `degree`, at least two factors.
  std::function<void(std::size_t, int, std::optional<IntPolynomial>, int)> rec =
      [&](std::size_t start, int remaining, std::optional<IntPolynomial> acc, int count) {
        if (remaining == 0) {
          if (count >= 2 && !in_box(*acc, bound)) out.insert(*acc);
          return;
        }
        for (std::size_t i = start; i < base.size(); ++i) {
          const int d = base[i].degree();
          if (d > remaining) continue;
          rec(i, remaining - d, acc ? *acc * base[i] : base[i], count + 1);
        }
      };
  rec(0, degree, std::nullopt, 0);
  return {out.begin(), out.end()};
}

void enumerate_candidates(const SearchSpec& spec, const std::function<void(const IntPolynomial&)>& fn) {
  validate(spec);
  for (int d = spec.degree_min; d <= spec.degree_max; ++d) {
    for (int v = -spec.coeff_bound; v <= spec.coeff_bound; ++v) for_each_box_candidate(d, spec.coeff_bound, v, fn);
    if (spec.include_block_products) {
      for (const auto& p : block_products(d, spec.coeff_bound, spec.max_precision_bits)) fn(p);
    }
  }
}

std::vector<IntPolynomial> enumerate_candidates(const SearchSpec& spec) {
  std::vector<IntPolynomial> out;
  enumerate_candidates(spec, [&](const IntPolynomial& p) { out.push_back(p); });
  return out;
}

SearchResult search_certificates(const SearchSpec& spec, const SearchOptions& opts) {
  validate(spec);
  const std::string hash = spec_hash(spec);
  SearchResult result;
  if (opts.store) {
    if (auto entry = opts.store->lookup(hash)) {
      result.records = opts.store->load(*entry);
      result.summary = entry->summary;
      result.cached = true;
      return result;
    }
    opts.store->begin_run();
  }

  // Work items: (degree, leading free coefficient) slices of the box, then
  // block products one by one. Worker w takes items w, w + W, w + 2W, ...
  struct Item {
    int degree;
    int leading;
    const IntPolynomial* product;
  };
  std::vector<std::vector<IntPolynomial>> products;
  std::vector<Item> items;
  for (int d = spec.degree_min; d <= spec.degree_max; ++d) {
    for (int v = -spec.coeff_bound; v <= spec.coeff_bound; ++v) items.push_back({d, v, nullptr});
  }
  if (spec.include_block_products) {
    for (int d = spec.degree_min; d <= spec.degree_max; ++d) {
      products.push_back(block_products(d, spec.coeff_bound, spec.max_precision_bits));
    }
    for (const auto& ps : products) {
      for (const auto& p : ps) items.push_back({p.degree(), 0, &p});
    }
  }

  const int workers = std::max(1, opts.workers);
  std::vector<std::vector<SearchRecord>> partial(static_cast<std::size_t>(workers));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  auto run = [&](int w) {
    try {
      auto classify_one = [&](const IntPolynomial& p) {
        const auto t0 = std::chrono::steady_clock::now();
        Classification c = classify_two_class(p, spec.max_precision_bits);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        SearchRecord r{hash, p, std::move(c), ms, w};
        if (opts.store) opts.store->append(r);
        partial[static_cast<std::size_t>(w)].push_back(std::move(r));
      };
      for (std::size_t i = static_cast<std::size_t>(w); i < items.size(); i += static_cast<std::size_t>(workers)) {
        const Item& it = items[i];
        if (it.product) {
          classify_one(*it.product);
        } else {
          for_each_box_candidate(it.degree, spec.coeff_bound, it.leading, classify_one);
        }
      }
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (auto& part : partial) {
    for (auto& r : part) result.records.push_back(std::move(r));
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const SearchRecord& a, const SearchRecord& b) { return a.poly < b.poly; });
  for (const auto& r : result.records) tally(result.summary, r, spec.class_pattern);
  if (opts.store) opts.store->complete_run(hash, canonical_string(spec), result.summary);
  return result;
}

ScanReport single_exponent_scan(int degree_min, int degree_max, int coeff_bound, const SearchOptions& opts) {
  ScanReport report;
  report.coeff_bound = coeff_bound;
  for (int d = degree_min; d <= degree_max; ++d) {
    SearchSpec spec;
    spec.degree_min = spec.degree_max = d;
    spec.coeff_bound = coeff_bound;
    spec.class_pattern = std::make_pair(1, d - 1);
    SearchResult r = search_certificates(spec, opts);
    report.hits_by_degree[d] = r.summary.certificates;
    report.undecided_by_degree[d] = r.summary.undecided;
    auto& hits = report.hits[d];
    for (const auto& rec : r.records) {
      if (matches_pattern(rec.outcome, spec.class_pattern)) hits.push_back(rec.poly);
    }
  }
  return report;
}

Json record_to_json(const SearchRecord& r, bool with_metadata) {
  Json j;
  j["spec_hash"] = r.spec_hash;
  j["poly"] = poly_to_json(r.poly);
  j["degree"] = r.poly.degree();
  j["result"] = classification_to_json(r.outcome);
  if (with_metadata) {
    j["wall_time_ms"] = r.wall_time_ms;
    j["worker"] = r.worker;
  }
  return j;
}

SearchRecord record_from_json(const Json& j) {
  try {
    return SearchRecord{j.at("spec_hash").get<std::string>(), poly_from_json(j.at("poly")),
                        classification_from_json(j.at("result")), j.value("wall_time_ms", 0.0),
                        j.value("worker", 0)};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad search record: ") + e.what());
  }
}

Json summary_to_json(const SearchSummary& s) {
  Json j;
  j["candidates"] = s.candidates;
  j["certificates"] = s.certificates;
  j["filtered_certificates"] = s.filtered;
  j["rejections"] = s.rejections;
  j["undecided"] = s.undecided;
  Json by_degree = Json::object();
  for (const auto& [d, n] : s.certificates_by_degree) by_degree[std::to_string(d)] = n;
  j["certificates_by_degree"] = by_degree;
  Json by_reason = Json::object();
  for (const auto& [k, n] : s.rejections_by_reason) by_reason[k] = n;
  j["rejections_by_reason"] = by_reason;
  return j;
}

SearchSummary summary_from_json(const Json& j) {
  SearchSummary s;
  s.candidates = j.value("candidates", 0);
  s.certificates = j.value("certificates", 0);
  s.filtered = j.value("filtered_certificates", 0);
  s.rejections = j.value("rejections", 0);
  s.undecided = j.value("undecided", 0);
  if (j.contains("certificates_by_degree")) {
    for (const auto& [k, v] : j.at("certificates_by_degree").items()) s.certificates_by_degree[std::stoi(k)] = v.get<int>();
  }
  if (j.contains("rejections_by_reason")) {
    for (const auto& [k, v] : j.at("rejections_by_reason").items()) s.rejections_by_reason[k] = v.get<int>();
  }
  return s;
}

}  // namespace gib
