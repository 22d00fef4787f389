#pragma once

#include <memory>
#include <random>
#include <vector>

namespace dqnlab::env {

using Rng = std::mt19937_64;

/// One experience tuple as stored in and sampled from the replay buffer.
struct Transition {
  std::vector<double> state;
  int action = 0;
  double reward = 0.0;
  std::vector<double> next_state;
  bool terminal = false;
  /// Number of valid actions in next_state; 0 means all network outputs.
  int next_action_count = 0;
};

struct StepResult {
  std::vector<double> next_state;
  double reward = 0.0;
  bool done = false;       // episode is over
  bool truncated = false;  // over because of the step cap, not a true terminal
};

/// Episodic environment with a discrete action set [0, action_count()).
/// Some states may only allow a prefix [0, valid_action_count()).
class Environment {
 public:
  virtual ~Environment() = default;

  virtual int state_dim() const = 0;
  virtual int action_count() const = 0;
  virtual int valid_action_count() const { return action_count(); }

  virtual std::vector<double> reset(Rng& rng) = 0;
  virtual StepResult step(int action, Rng& rng) = 0;

  virtual std::unique_ptr<Environment> clone() const = 0;
};

}  // namespace dqnlab::env
