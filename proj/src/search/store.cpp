#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "gib/search.hpp"

namespace gib {

namespace fs = std::filesystem;

namespace {

std::int64_t count_lines(const fs::path& p) {
  std::ifstream in(p);
  if (!in) return 0;
  std::int64_t n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

ResultStore::ResultStore(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw StoreUnavailable("cannot create store directory " + dir_.string() + ": " + ec.message());
  }
  std::ofstream touch(store_path(), std::ios::app);
  if (!touch) throw StoreUnavailable("cannot open " + store_path().string() + " for appending");
  lines_ = count_lines(store_path());
}

fs::path ResultStore::default_dir() {
  if (const char* env = std::getenv("GIB_STORE_DIR"); env && *env) return env;
  return "gib_store";
}

Json ResultStore::read_index() const {
  std::ifstream in(index_path());
  if (!in) return Json::object();
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw StoreUnavailable("corrupt index " + index_path().string() + ": " + e.what());
  }
}

std::optional<ResultStore::IndexEntry> ResultStore::lookup(const std::string& hash) const {
  std::lock_guard lock(mu_);
  const Json index = read_index();
  if (!index.contains(hash)) return std::nullopt;
  const Json& e = index.at(hash);
  IndexEntry out;
  out.first_line = e.value("first_line", std::int64_t{0});
  out.line_count = e.value("line_count", std::int64_t{0});
  out.summary = summary_from_json(e.value("summary", Json::object()));
  out.spec = e.value("spec", "");
  return out;
}

std::vector<SearchRecord> ResultStore::load(const IndexEntry& entry) const {
  std::ifstream in(store_path());
  if (!in) throw StoreUnavailable("cannot read " + store_path().string());
  std::vector<SearchRecord> out;
  std::string line;
  for (std::int64_t n = 0; std::getline(in, line); ++n) {
    if (n < entry.first_line) continue;
    if (n >= entry.first_line + entry.line_count) break;
    try {
      out.push_back(record_from_json(Json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw StoreUnavailable("corrupt store line " + std::to_string(n + 1) + ": " + e.what());
    }
  }
  if (static_cast<std::int64_t>(out.size()) != entry.line_count) {
    throw StoreUnavailable("store is shorter than its index claims");
  }
  std::sort(out.begin(), out.end(), [](const SearchRecord& a, const SearchRecord& b) { return a.poly < b.poly; });
  return out;
}

void ResultStore::begin_run() {
  std::lock_guard lock(mu_);
  lines_ = count_lines(store_path());
  run_start_ = lines_;
}

void ResultStore::append(const SearchRecord& r) {
  const std::string line = record_to_json(r, true).dump();
  std::lock_guard lock(mu_);
  std::ofstream out(store_path(), std::ios::app);
  out << line << '\n';
  out.flush();
  if (!out) throw StoreUnavailable("write to " + store_path().string() + " failed");
  ++lines_;
}

void ResultStore::complete_run(const std::string& hash, const std::string& spec, const SearchSummary& summary) {
  std::lock_guard lock(mu_);
  Json index = read_index();
  Json e;
  e["spec"] = spec;
  e["first_line"] = run_start_;
  e["line_count"] = lines_ - run_start_;
  e["summary"] = summary_to_json(summary);
  index[hash] = e;
  const fs::path tmp = index_path().string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << index.dump(2) << '\n';
    if (!out) throw StoreUnavailable("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, index_path(), ec);
  if (ec) throw StoreUnavailable("cannot replace " + index_path().string() + ": " + ec.message());
}

std::int64_t ResultStore::line_count() const {
  std::lock_guard lock(mu_);
  return count_lines(store_path());
}

}  // namespace gib
