#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dqnlab/agents/agent_spec.hpp"
#include "dqnlab/agents/network_bank.hpp"
#include "dqnlab/env/environment.hpp"

namespace dqnlab::agents {

struct EpisodeStats {
  long episode = 0;
  double episode_return = 0.0;
  double moving_average = 0.0;  // over the last min(100, episode + 1) returns
  double mean_loss = 0.0;       // 0 when no update happened
  long updates = 0;
  long steps = 0;
  double epsilon = 0.0;
  bool primary_sync = false;
  bool secondary_sync = false;
};

struct RunRecord {
  Algorithm algorithm = Algorithm::kDdqn;
  std::uint64_t seed = 0;
  std::vector<EpisodeStats> episodes;
  std::vector<SyncEvent> sync_events;
  bool diverged = false;
  std::string diagnostic;  // set when diverged
  double wall_seconds = 0.0;  // not part of the deterministic output
};

inline constexpr int kMovingAverageWindow = 100;

/// Trailing mean over at most `window` values ending at each position.
std::vector<double> moving_average(std::span<const double> values, int window = kMovingAverageWindow);

/// Handed to the observer after the targets of one sub-batch are computed and
/// before the gradient step that consumes them.
struct TrainingUpdate {
  long global_step = 0;
  int network = 1;  // 1-based policy network being trained
  std::span<const env::Transition> batch;
  std::span<const std::size_t> rows;  // positions in `batch` for this network
  std::span<const double> targets;    // aligned with `rows`
  const NetworkBank* bank = nullptr;
};
using TrainingObserver = std::function<void(const TrainingUpdate&)>;

/// Network shape used for `spec` on an environment with the given sizes.
std::vector<int> network_dims(const AgentSpec& spec, int state_dim, int action_count);

/// Runs `episodes` episodes of epsilon-greedy interaction and learning.
/// Learning happens every `train_every` environment steps once the replay
/// buffer holds `min_replay` transitions. A non-finite loss stops the run and
/// marks it diverged. Deterministic for a fixed spec (including seed).
RunRecord train_run(const AgentSpec& spec, env::Environment& env, long episodes,
                    const TrainingObserver& observer = {});

}  // namespace dqnlab::agents
