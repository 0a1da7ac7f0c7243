#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "prodset/lab.hpp"

namespace {

constexpr int kUsageError = 3;

std::string command_list() {
  std::string out;
  for (const auto& name : prodset::experiment_names()) out += (out.empty() ? "" : ", ") + name;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproducible experiments on product sets, random walks and syndetic covers"};
  app.set_version_flag("--version", prodset::tool_version());

  std::string command, config_path, out_dir = ".";
  uint64_t seed = 0;
  unsigned jobs = 0;
  app.add_option("command", command, "One of: " + command_list())->required();
  app.add_option("--config", config_path, "Key = value experiment file");
  auto* seed_opt = app.add_option("--seed", seed, "Base seed (overrides the config)");
  app.add_option("--out", out_dir, "Directory for <command>.json and <command>.csv");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    prodset::ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = prodset::ExperimentConfig::load(config_path);
    } else if (command != "selftest") {
      throw prodset::ConfigError(command + " needs --config");
    }
    if (!cfg.experiment.empty() && cfg.experiment != command) {
      throw prodset::ConfigError("config is for '" + cfg.experiment + "', not '" + command + "'");
    }
    cfg.experiment = command;
    if (*seed_opt) cfg.seed = seed;
    if (*jobs_opt) cfg.jobs = jobs;

    const prodset::ResultRecord record = prodset::run_experiment(cfg);
    prodset::write_record(record, out_dir);
    const auto counts = record.to_json()["counts"];
    std::cout << command << ": " << prodset::to_string(record.verdict()) << " (pass " << counts["pass"]
              << ", fail " << counts["fail"] << ", undetermined " << counts["undetermined"] << ")\n";
    return record.exit_code();
  } catch (const prodset::ConfigError& e) {
    std::cerr << "prodset-lab: " << e.what() << "\n";
    return kUsageError;
  }
}
