#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dqnlab/agents/agent_spec.hpp"

namespace dqnlab::cli {

/// Bad configuration text or values. `key` names the offending key when one
/// is to blame.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string key = {})
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// One [run <label>] block: a learner spec crossed with algorithms and seeds.
struct RunConfig {
  std::string label = "cartpole";
  std::string env = "cartpole";  // "cartpole" or "toy"
  int step_cap = 200;
  long episodes = 1500;
  std::vector<agents::Algorithm> algorithms{agents::Algorithm::kDdqn, agents::Algorithm::kTdqn};
  std::vector<std::uint64_t> seeds{0, 1, 2};
  agents::AgentSpec spec;  // algorithm and seed are filled in per run
};

struct TheoryConfig {
  int grid_points = 1000;
  int variants = 6;
  double variant_step = 0.55;
  int reference_index = 5;
};

struct SuiteConfig {
  std::vector<RunConfig> runs;
  TheoryConfig theory;
};

/// Defaults used when no config file is given, tuned for CartPole.
RunConfig default_run_config();
SuiteConfig default_suite_config();

/// INI-style text: optional [defaults], any number of [run <label>] blocks
/// that inherit from it, and an optional [theory] block. '#' or ';' start a
/// comment. Without run blocks the defaults form a single run.
SuiteConfig parse_suite_config(std::string_view text);
SuiteConfig load_suite_config(const std::filesystem::path& path);

/// Applies one key to a run; throws ConfigError naming the key.
void apply_run_key(RunConfig& run, std::string_view key, std::string_view value);

/// Config text listing every key with its default value.
std::string render_defaults();

std::vector<std::uint64_t> parse_seed_list(std::string_view text);
std::vector<agents::Algorithm> parse_algorithm_list(std::string_view text);

}  // namespace dqnlab::cli
