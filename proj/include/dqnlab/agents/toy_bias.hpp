#pragma once

#include <cstdint>
#include <span>

#include "dqnlab/agents/agent_spec.hpp"
#include "dqnlab/env/toy_mdp.hpp"

namespace dqnlab::agents {

/// Learner settings for the tabular overestimation experiment.
struct ToyBiasConfig {
  long episodes = 300;
  double learning_rate = 0.1;
  int sync_period = 10;
  int batch_size = 8;
  std::size_t min_replay = 8;
  std::size_t replay_capacity = 500;
  EpsilonSchedule epsilon{1.0, 0.1, 0.99};

  /// Tabular, bias-free, zero-initialised, plain SGD.
  AgentSpec spec(Algorithm algorithm, std::uint64_t seed, double gamma) const;
};

struct ToyBiasResult {
  double mean_bias = 0.0;  // mean of Y - (R + gamma * V*(S')) over bootstrapped targets
  long samples = 0;
};

/// Trains one tabular learner on `mdp` and averages how far its training
/// targets sit above the exact ones. Terminal transitions are excluded since
/// every rule reproduces them exactly.
ToyBiasResult measure_toy_bias(Algorithm algorithm, const env::ToyMdp& mdp, std::uint64_t seed,
                               const ToyBiasConfig& config = {});

struct PairedTTest {
  int n = 0;
  double mean_difference = 0.0;
  double t_statistic = 0.0;
  double p_value = 1.0;  // one-sided, alternative mean(a - b) > 0
};

/// Paired one-sided Student t test. Needs at least two pairs.
PairedTTest paired_t_test_greater(std::span<const double> a, std::span<const double> b);

}  // namespace dqnlab::agents
