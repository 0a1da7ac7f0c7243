#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "prodset/error.hpp"
#include "prodset/lab.hpp"

#ifndef PRODSET_VERSION
#define PRODSET_VERSION "0.0.0"
#endif

namespace prodset {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_rational_json(const nlohmann::json& v) {
  return v.is_object() && v.size() == 2 && v.contains("exact") && v.contains("decimal");
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key)) throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key " + key);
    cfg.values_[key] = value;
  }
  if (cfg.has("experiment")) cfg.experiment = cfg.get("experiment");
  if (cfg.has("seed")) cfg.seed = static_cast<uint64_t>(cfg.get_int("seed", 0));
  if (cfg.has("jobs")) cfg.jobs = static_cast<unsigned>(std::max<int64_t>(1, cfg.get_int("jobs", 1)));
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

int64_t ExperimentConfig::get_int(const std::string& key, int64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key);
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("key " + key + ": expected an integer, got '" + v + "'");
  }
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key);
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::logic_error&) {
    throw ConfigError("key " + key + ": expected a number, got '" + v + "'");
  }
}

std::vector<int64_t> ExperimentConfig::get_int_list(const std::string& key, const std::vector<int64_t>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<int64_t> out;
  for (const auto& item : split(get(key), ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ConfigError("key " + key + ": bad integer '" + item + "'");
    }
  }
  return out;
}

std::vector<std::string> ExperimentConfig::get_list(const std::string& key,
                                                    const std::vector<std::string>& fallback) const {
  if (!has(key)) return fallback;
  return split(get(key), ',');
}

void ExperimentConfig::require_known(const std::set<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    if (key == "experiment" || key == "seed" || key == "jobs") continue;
    if (!allowed.count(key)) throw ConfigError("unknown config key '" + key + "' for " + experiment);
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

Verdict ResultRecord::verdict() const {
  bool undetermined = false;
  for (const auto& t : trials) {
    if (t.verdict == Verdict::Fail) return Verdict::Fail;
    if (t.verdict == Verdict::Undetermined) undetermined = true;
  }
  return undetermined ? Verdict::Undetermined : Verdict::Pass;
}

int ResultRecord::exit_code() const {
  switch (verdict()) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Undetermined: return 2;
  }
  return 1;
}

nlohmann::json ResultRecord::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t pass = 0, fail = 0, undetermined = 0;
  for (const auto& t : trials) {
    rows.push_back({{"index", t.index},
                    {"verdict", to_string(t.verdict)},
                    {"verified_by", t.verified_by},
                    {"inputs", t.inputs},
                    {"outputs", t.outputs}});
    (t.verdict == Verdict::Pass ? pass : t.verdict == Verdict::Fail ? fail : undetermined)++;
  }
  nlohmann::json out = {{"experiment", experiment},
                        {"tool_version", tool_version()},
                        {"seed", seed},
                        {"params", params},
                        {"trials", rows},
                        {"counts", {{"pass", pass}, {"fail", fail}, {"undetermined", undetermined}}},
                        {"aggregate", aggregate},
                        {"verdict", to_string(verdict())}};
  if (!tables.empty()) out["tables"] = tables;
  return out;
}

std::string table_csv(const nlohmann::json& table) {
  std::ostringstream out;
  bool first = true;
  for (const auto& c : table.at("columns")) {
    out << (first ? "" : ",") << csv_escape(c.get<std::string>());
    first = false;
  }
  out << "\n";
  for (const auto& row : table.at("rows")) {
    first = true;
    for (const auto& v : row) {
      out << (first ? "" : ",") << csv_escape(scalar_text(v));
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

std::string ResultRecord::to_csv() const {
  // Columns: fixed fields, then every scalar output key in first-seen order.
  std::vector<std::string> keys;
  auto note = [&](const std::string& k) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  };
  for (const auto& t : trials) {
    for (const auto& [k, v] : t.outputs.items()) {
      if (is_rational_json(v)) {
        note(k);
        note(k + "_decimal");
      } else if (v.is_primitive()) {
        note(k);
      }
    }
  }
  std::ostringstream out;
  out << "index,verdict,verified_by";
  for (const auto& k : keys) out << "," << csv_escape(k);
  out << "\n";
  for (const auto& t : trials) {
    out << t.index << "," << to_string(t.verdict) << "," << csv_escape(t.verified_by);
    for (const auto& k : keys) {
      out << ",";
      const bool dec = k.size() > 8 && k.compare(k.size() - 8, 8, "_decimal") == 0;
      const std::string base = dec ? k.substr(0, k.size() - 8) : k;
      if (dec && t.outputs.contains(base) && is_rational_json(t.outputs[base])) {
        out << csv_escape(t.outputs[base]["decimal"].get<std::string>());
      } else if (t.outputs.contains(k)) {
        const auto& v = t.outputs[k];
        if (is_rational_json(v)) out << csv_escape(v["exact"].get<std::string>());
        else if (v.is_primitive()) out << csv_escape(scalar_text(v));
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string tool_version() { return std::string("prodset-lab ") + PRODSET_VERSION; }

nlohmann::json rational_json(const Rational& q) {
  char dec[40];
  std::snprintf(dec, sizeof dec, "%.12g", to_double(q));
  return {{"exact", to_string(q)}, {"decimal", dec}};
}

std::vector<TrialRecord> run_trials(std::size_t n, unsigned jobs, const std::function<TrialRecord(std::size_t)>& fn) {
  std::vector<TrialRecord> out(n);
  auto guarded = [&](std::size_t i) {
    TrialRecord r;
    try {
      r = fn(i);
    } catch (const ResourceCapExceeded& e) {
      r.verdict = Verdict::Undetermined;
      r.outputs["error"] = e.what();
    } catch (const NonConvergence& e) {
      r.verdict = Verdict::Undetermined;
      r.outputs["error"] = e.what();
    } catch (const InvalidArgument&) {
      throw;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      r.verdict = Verdict::Fail;
      r.outputs["error"] = e.what();
    }
    r.index = i;
    return r;
  };

  jobs = std::max(1u, jobs);
  if (jobs == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = guarded(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(jobs, n); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          out[i] = guarded(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

void write_record(const ResultRecord& record, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto base = std::filesystem::path(dir) / record.experiment;
  std::ofstream json(base.string() + ".json");
  json << record.to_json().dump(2) << "\n";
  std::ofstream csv(base.string() + ".csv");
  csv << record.to_csv();
  if (!json || !csv) throw ConfigError("cannot write results under " + dir);
  for (const auto& [name, table] : record.tables.items()) {
    std::ofstream side(base.string() + "." + name + ".csv");
    side << table_csv(table);
    if (!side) throw ConfigError("cannot write results under " + dir);
  }
}

}  // namespace prodset
