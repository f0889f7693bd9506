// Run configuration, result records, the JSON-lines cache and report
// emission behind the command-line tool.

#ifndef B0LAB_RUNNER_HPP
#define B0LAB_RUNNER_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "b0lab/pcgroup.hpp"
#include "b0lab/report.hpp"
#include "b0lab/subgroup.hpp"

namespace b0lab {

inline constexpr const char* kToolVersion = "0.3.0";

struct RunConfig {
  unsigned p = 3;
  std::string method = "tensor";  // tensor | oracle | criteria | all
  std::uint64_t oracle_cap = 0;   // 0: default_oracle_cap(p)
  unsigned class_cap = 0;         // 0: 2 * exponent-p class + 2
  std::uint64_t pair_cap = 0;     // 0: none
  std::uint64_t search_budget = 0;
  PairMode pairs = PairMode::full;
  std::string cache;
  std::string format = "text";  // text | json | csv
  unsigned jobs = 1;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct ResultRecord {
  std::string hash;
  std::string name;
  B0Report report;
  std::string version = kToolVersion;
};

/// FNV-1a digest (16 hex digits) of the canonical serialization without the
/// name line.
std::string presentation_hash(const PcPresentation& g);

std::string to_json_line(const ResultRecord& r);
/// std::nullopt for lines that are not a valid record.
std::optional<ResultRecord> parse_record_line(const std::string& line);

/// Append-only JSON-lines file. Unreadable lines are skipped and counted.
class ResultCache {
 public:
  explicit ResultCache(std::string path);

  const std::vector<ResultRecord>& records() const { return records_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::optional<ResultRecord> find(const std::string& hash, Method method) const;
  /// Thread-safe; writes through to the file.
  void append(const ResultRecord& r);

 private:
  std::string path_;
  std::vector<ResultRecord> records_;
  std::vector<std::string> warnings_;
  mutable std::mutex mutex_;
};

struct B0Outcome {
  std::vector<B0Report> reports;
  std::vector<std::string> notes;
  bool disagreement = false;
};

/// Runs the configured method(s). For "all", tensor always runs, the oracle
/// runs when |G| is within the cap and the criteria run for order p^5; any
/// two decided verdicts must agree. Throws CapExceeded from single methods.
B0Outcome run_b0(const PcGroup& g, const RunConfig& cfg);

std::string csv_header();
std::string csv_row(const B0Report& r);
std::string report_text(const B0Report& r);

/// Deterministic emission of records in file order; the last record per
/// (hash, method) wins. Timing fields are omitted from json.
std::string emit_report(const std::vector<ResultRecord>& records, const std::string& format);

}  // namespace b0lab

#endif  // B0LAB_RUNNER_HPP
