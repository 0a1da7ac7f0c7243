#pragma once

// Experiment runner: key=value configs, seeded per-trial substreams,
// deterministic parallel trials, JSON and CSV result records.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "prodset/rational.hpp"

namespace prodset {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "key = value" lines; '#' starts a comment. Keys are unique.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(std::string_view text);
  static ExperimentConfig load(const std::string& path);

  std::string experiment;
  uint64_t seed = 0;
  unsigned jobs = 1;

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::vector<int64_t> get_int_list(const std::string& key, const std::vector<int64_t>& fallback) const;
  std::vector<std::string> get_list(const std::string& key, const std::vector<std::string>& fallback) const;
  /// Throws ConfigError naming the first key outside `allowed`.
  void require_known(const std::set<std::string>& allowed) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

enum class Verdict { Pass, Fail, Undetermined };
const char* to_string(Verdict v);

struct TrialRecord {
  std::size_t index = 0;
  Verdict verdict = Verdict::Undetermined;
  /// Operation whose result the verdict rests on.
  std::string verified_by;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
};

struct ResultRecord {
  std::string experiment;
  uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  std::vector<TrialRecord> trials;
  nlohmann::json aggregate = nlohmann::json::object();
  /// Named side tables {"columns": [...], "rows": [[...], ...]}, each also
  /// written as its own CSV file.
  nlohmann::json tables = nlohmann::json::object();

  Verdict verdict() const;
  /// 0 all pass, 1 any failure, 2 undetermined rows without failures.
  int exit_code() const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

std::string tool_version();

/// {"exact": "p/q", "decimal": "..."}.
nlohmann::json rational_json(const Rational& q);

/// Runs fn(i) for i in [0, n) on `jobs` threads and returns the results in
/// index order.
std::vector<TrialRecord> run_trials(std::size_t n, unsigned jobs, const std::function<TrialRecord(std::size_t)>& fn);

ResultRecord run_jin_verify(const ExperimentConfig& cfg);
ResultRecord run_thm2_bound(const ExperimentConfig& cfg);
ResultRecord run_counterexample(const ExperimentConfig& cfg);
ResultRecord run_walk_density(const ExperimentConfig& cfg);
ResultRecord run_cover_greedy(const ExperimentConfig& cfg);
ResultRecord run_selftest(const ExperimentConfig& cfg);

/// Dispatches on cfg.experiment; throws ConfigError for unknown commands.
ResultRecord run_experiment(const ExperimentConfig& cfg);
const std::vector<std::string>& experiment_names();

/// CSV rendering of one side table.
std::string table_csv(const nlohmann::json& table);

/// Writes <dir>/<experiment>.json and <dir>/<experiment>.csv, plus
/// <dir>/<experiment>.<table>.csv for every side table.
void write_record(const ResultRecord& record, const std::string& dir);

}  // namespace prodset
