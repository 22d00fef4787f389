#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "dqnlab/cli/suite.hpp"

namespace {

namespace cli = dqnlab::cli;

constexpr int kConfigErrorExit = 2;

std::filesystem::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("DQNLAB_OUT_DIR"); env && *env) return env;
  return "results";
}

cli::SuiteConfig load(const std::string& path) {
  return path.empty() ? cli::default_suite_config() : cli::load_suite_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Target-network DQN variants: training suites and the polynomial bias harness"};
  app.require_subcommand(0, 1);

  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults, "Print every config key with its default and exit");

  std::string config_path;
  std::string out_flag;
  std::string seeds_flag;
  std::string algo_flag;
  long episodes_flag = -1;
  int jobs = 1;

  auto* train = app.add_subcommand("train", "Run RL training suites");
  train->add_option("--config", config_path, "Suite config file");
  train->add_option("--out-dir", out_flag, "Output directory (default $DQNLAB_OUT_DIR or ./results)");
  train->add_option("--seeds", seeds_flag, "Override seeds, e.g. 0,1,2 or 0..4");
  train->add_option("--algo", algo_flag, "Override algorithms, e.g. DDQN,TDQN");
  train->add_option("--episodes", episodes_flag, "Override the episode count");
  train->add_option("--jobs", jobs, "Independent runs executed in parallel")->check(CLI::PositiveNumber);

  auto* theory = app.add_subcommand("theory", "Polynomial overestimation harness");
  theory->add_option("--config", config_path, "Config file ([theory] section)");
  theory->add_option("--out-dir", out_flag, "Output directory");

  auto* summarize = app.add_subcommand("summarize", "Rebuild summary.csv from run CSVs");
  summarize->add_option("--out-dir", out_flag, "Directory holding runs/");

  CLI11_PARSE(app, argc, argv);

  if (print_defaults) {
    std::cout << cli::render_defaults();
    return 0;
  }
  const auto out_dir = resolve_out_dir(out_flag);
  try {
    if (train->parsed()) {
      const auto config = load(config_path);
      cli::SuiteOptions options;
      options.out_dir = out_dir;
      options.jobs = jobs;
      options.log = &std::cerr;
      if (train->count("--seeds")) options.seeds = cli::parse_seed_list(seeds_flag);
      if (train->count("--algo")) options.algorithms = cli::parse_algorithm_list(algo_flag);
      if (episodes_flag >= 0) options.episodes = episodes_flag;
      const auto result = cli::run_suite(config, options);
      std::cout << result.runs << " runs, " << result.diverged << " diverged; outputs in "
                << out_dir.string() << "\n";
      return 0;
    }
    if (theory->parsed()) {
      const auto config = load(config_path);
      const auto reports = cli::run_theory(config.theory, out_dir);
      for (const auto& r : reports) {
        std::cout << r.setting.label() << ": double SSE " << cli::format_double(r.double_sse)
                  << ", max SSE " << cli::format_double(r.max_sse) << ", positive share "
                  << cli::format_double(r.positive_fraction) << "\n";
      }
      return 0;
    }
    if (summarize->parsed()) {
      const auto rows = cli::summarize_directory(out_dir);
      std::cout << cli::summary_csv(rows);
      return 0;
    }
    std::cout << app.help();
    return 0;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
