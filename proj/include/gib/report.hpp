#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace gib {

enum class CheckStatus { Pass, Fail, Info };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Info: return "INFO";
  }
  return "?";
}

struct ReportEntry {
  std::string check;
  CheckStatus status = CheckStatus::Pass;
  std::optional<double> residual;  // nullopt serializes as "NA"
  std::string detail;
};

struct VerificationReport {
  std::vector<ReportEntry> entries;

  void add(std::string check, bool pass, std::optional<double> residual, std::string detail = {}) {
    entries.push_back({std::move(check), pass ? CheckStatus::Pass : CheckStatus::Fail, residual,
                       std::move(detail)});
  }
  void info(std::string check, std::optional<double> value, std::string detail) {
    entries.push_back({std::move(check), CheckStatus::Info, value, std::move(detail)});
  }
  void append(const VerificationReport& other, const std::string& prefix = {}) {
    for (auto e : other.entries) {
      if (!prefix.empty()) e.check = prefix + e.check;
      entries.push_back(std::move(e));
    }
  }
  bool all_pass() const {
    return std::none_of(entries.begin(), entries.end(),
                        [](const ReportEntry& e) { return e.status == CheckStatus::Fail; });
  }
  const ReportEntry* find(const std::string& check) const {
    for (const auto& e : entries) {
      if (e.check == check) return &e;
    }
    return nullptr;
  }
};

}  // namespace gib
