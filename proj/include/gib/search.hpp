#pragma once

// Exhaustive enumeration of monic unimodular integer polynomials in a
// coefficient box, classified by polyclass, with a persistent result store.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gib/json_io.hpp"
#include "gib/polyclass.hpp"

namespace gib {

struct SearchSpec {
  int degree_min = 2;
  int degree_max = 2;
  int coeff_bound = 1;
  /// Multiplicity filter, matched as an unordered pair.
  std::optional<std::pair<int, int>> class_pattern;
  int max_precision_bits = kDefaultMaxPrecisionBits;
  bool include_block_products = false;
};

/// Throws std::invalid_argument on degrees outside [2, 16] or bound < 1.
void validate(const SearchSpec& spec);
std::string canonical_string(const SearchSpec& spec);
/// FNV-1a 64 of canonical_string, 16 hex digits.
std::string spec_hash(const SearchSpec& spec);
Json spec_to_json(const SearchSpec& spec);

/// Parse the key = value spec format:
///   degrees = 3        (or "4-5", or [4, 5])
///   bound = 3
///   pattern = [1, 2]   (optional)
///   precision = 1024   (optional)
///   blocks = false     (optional)
SearchSpec parse_spec_text(const std::string& text);
SearchSpec read_spec_file(const std::string& path);

bool matches_pattern(const Classification& c, const std::optional<std::pair<int, int>>& pattern);

/// Box candidates of one degree whose leading free coefficient is
/// a_{d-1} = v, lexicographic order (a_0 slowest... a_{d-2} fastest).
void for_each_box_candidate(int degree, int bound, int leading_free,
                            const std::function<void(const IntPolynomial&)>& fn);

/// Every candidate of the spec: box polynomials with |a0| = 1 in
/// lexicographic coefficient order, then (if enabled) block products of
/// lower-degree two-class polynomials that fall outside the box.
void enumerate_candidates(const SearchSpec& spec, const std::function<void(const IntPolynomial&)>& fn);
std::vector<IntPolynomial> enumerate_candidates(const SearchSpec& spec);

/// Block products of degree `degree`: products of certified two-class
/// polynomials of degree 2..degree-2 from the same box, excluding
/// polynomials that are themselves box candidates.
std::vector<IntPolynomial> block_products(int degree, int bound, int max_precision_bits);

struct SearchRecord {
  std::string spec_hash;
  IntPolynomial poly;
  Classification outcome;
  double wall_time_ms = 0;
  int worker = 0;
};

/// Record as stored: canonical part plus wall time and worker id when
/// `with_metadata` is set.
Json record_to_json(const SearchRecord& r, bool with_metadata);
SearchRecord record_from_json(const Json& j);

struct SearchSummary {
  int candidates = 0;
  int certificates = 0;  // matching the pattern
  int filtered = 0;      // certificates outside the pattern
  int rejections = 0;
  int undecided = 0;
  std::map<int, int> certificates_by_degree;
  std::map<std::string, int> rejections_by_reason;
};
Json summary_to_json(const SearchSummary& s);
SearchSummary summary_from_json(const Json& j);

/// Append-only JSON-lines store plus a sidecar index mapping spec hashes to
/// line ranges and summaries. All appends go through one mutex-guarded
/// writer; reads of completed ranges can run at any time.
class ResultStore {
 public:
  /// Creates the directory if needed. Throws StoreUnavailable.
  explicit ResultStore(std::filesystem::path dir);

  /// Directory from GIB_STORE_DIR, default ./gib_store.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path store_path() const { return dir_ / "store.jsonl"; }
  std::filesystem::path index_path() const { return dir_ / "index.json"; }

  struct IndexEntry {
    std::int64_t first_line = 0;  // 0-based, inclusive
    std::int64_t line_count = 0;
    SearchSummary summary;
    std::string spec;
  };

  std::optional<IndexEntry> lookup(const std::string& hash) const;
  /// Records of a completed spec, in canonical order.
  std::vector<SearchRecord> load(const IndexEntry& entry) const;

  /// Begin a run: remembers the line where its records start.
  void begin_run();
  void append(const SearchRecord& r);
  /// Record a completed run in the index.
  void complete_run(const std::string& hash, const std::string& spec, const SearchSummary& summary);

  std::int64_t line_count() const;

 private:
  Json read_index() const;

  std::filesystem::path dir_;
  mutable std::mutex mu_;
  std::int64_t run_start_ = 0;
  std::int64_t lines_ = 0;
};

struct SearchOptions {
  int workers = 1;
  ResultStore* store = nullptr;
};

struct SearchResult {
  std::vector<SearchRecord> records;  // canonical order
  SearchSummary summary;
  bool cached = false;
};

/// Classifies every candidate; one record per candidate (Undecided included),
/// sorted by (degree, coefficients). The pattern only affects which
/// certificates are counted in the summary. Result order and content do not
/// depend on the worker count.
SearchResult search_certificates(const SearchSpec& spec, const SearchOptions& opts = {});

struct ScanReport {
  int coeff_bound = 0;
  std::map<int, int> hits_by_degree;
  std::map<int, std::vector<IntPolynomial>> hits;
  std::map<int, int> undecided_by_degree;
};

/// Pattern (1, d-1) search for each degree d in the range.
ScanReport single_exponent_scan(int degree_min, int degree_max, int coeff_bound,
                                const SearchOptions& opts = {});

}  // namespace gib
