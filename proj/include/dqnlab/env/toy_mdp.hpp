#pragma once

#include <stdexcept>
#include <vector>

#include "dqnlab/env/environment.hpp"

namespace dqnlab::env {

/// One branch of a (state, action) row: next state with probability, and a
/// Gaussian reward.
struct Outcome {
  int next_state = 0;
  double probability = 1.0;
  double reward_mean = 0.0;
  double reward_stddev = 0.0;
};

/// Small finite MDP. Terminal states have no actions and absorb with zero
/// value.
struct ToyMdp {
  int state_count = 0;
  std::vector<std::vector<std::vector<Outcome>>> outcomes;  // [state][action]
  std::vector<bool> terminal;
  double gamma = 0.99;
  int start_state = 0;

  int action_count(int state) const { return static_cast<int>(outcomes.at(state).size()); }
  int max_action_count() const;

  /// Throws std::invalid_argument when rows do not sum to 1 within 1e-12,
  /// indices are out of range, or terminal states carry actions.
  void validate() const;
};

/// Two decision states: the start offers {left, right}; right ends the episode
/// with reward 0, left moves to a state with ten actions that each end the
/// episode with reward ~ N(-0.1, 1). State 2 is terminal.
ToyMdp overestimation_mdp(double gamma = 0.99, int branch_actions = 10);

using QTable = std::vector<std::vector<double>>;

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Exact Q* by repeated Bellman optimality backups until the sup-norm
/// residual drops to `tol`.
QTable value_iteration(const ToyMdp& mdp, double tol, int max_iterations = 1'000'000);

/// max_{s,a} |Q(s,a) - (T Q)(s,a)|.
double bellman_residual(const ToyMdp& mdp, const QTable& q);

/// Agent-facing view: one-hot state encoding over all states, network output
/// size equal to the widest action set.
class ToyMdpEnv final : public Environment {
 public:
  explicit ToyMdpEnv(ToyMdp mdp);

  int state_dim() const override { return mdp_.state_count; }
  int action_count() const override { return actions_; }
  int valid_action_count() const override { return mdp_.action_count(current_); }

  std::vector<double> reset(Rng& rng) override;
  StepResult step(int action, Rng& rng) override;
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<ToyMdpEnv>(*this);
  }

  const ToyMdp& mdp() const { return mdp_; }
  int current_state() const { return current_; }
  std::vector<double> encode(int state) const;
  /// Inverse of encode(); -1 when `state` is not one-hot.
  int decode(const std::vector<double>& state) const;

 private:
  ToyMdp mdp_;
  int actions_ = 0;
  int current_ = 0;
  bool done_ = true;
};

}  // namespace dqnlab::env
