#include "dqnlab/env/toy_mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dqnlab::env {

int ToyMdp::max_action_count() const {
  int n = 0;
  for (const auto& row : outcomes) n = std::max(n, static_cast<int>(row.size()));
  return n;
}

void ToyMdp::validate() const {
  if (state_count <= 0) throw std::invalid_argument("ToyMdp needs at least one state");
  if (static_cast<int>(outcomes.size()) != state_count ||
      static_cast<int>(terminal.size()) != state_count) {
    throw std::invalid_argument("ToyMdp tables do not match state_count");
  }
  if (start_state < 0 || start_state >= state_count) {
    throw std::invalid_argument("ToyMdp start state out of range");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("gamma must lie in [0, 1]");
  for (int s = 0; s < state_count; ++s) {
    if (terminal[s] && !outcomes[s].empty()) {
      throw std::invalid_argument("terminal state " + std::to_string(s) + " has actions");
    }
    if (!terminal[s] && outcomes[s].empty()) {
      throw std::invalid_argument("non-terminal state " + std::to_string(s) + " has no actions");
    }
    for (std::size_t a = 0; a < outcomes[s].size(); ++a) {
      double total = 0.0;
      for (const auto& o : outcomes[s][a]) {
        if (o.next_state < 0 || o.next_state >= state_count) {
          throw std::invalid_argument("transition to unknown state");
        }
        if (o.probability < 0.0 || o.reward_stddev < 0.0 || !std::isfinite(o.reward_mean)) {
          throw std::invalid_argument("invalid outcome parameters");
        }
        total += o.probability;
      }
      if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("row (" + std::to_string(s) + ", " + std::to_string(a) +
                                    ") probabilities sum to " + std::to_string(total));
      }
    }
  }
}

ToyMdp overestimation_mdp(double gamma, int branch_actions) {
  ToyMdp m;
  m.state_count = 3;
  m.gamma = gamma;
  m.start_state = 0;
  m.terminal = {false, false, true};
  m.outcomes.resize(3);
  m.outcomes[0] = {
      {Outcome{1, 1.0, 0.0, 0.0}},  // left
      {Outcome{2, 1.0, 0.0, 0.0}},  // right
  };
  m.outcomes[1].assign(branch_actions, {Outcome{2, 1.0, -0.1, 1.0}});
  m.validate();
  return m;
}

namespace {

double state_value(const ToyMdp& mdp, const QTable& q, int s) {
  if (mdp.terminal[s]) return 0.0;
  return *std::max_element(q[s].begin(), q[s].end());
}

double backup(const ToyMdp& mdp, const QTable& q, int s, int a) {
  double v = 0.0;
  for (const auto& o : mdp.outcomes[s][a]) {
    v += o.probability * (o.reward_mean + mdp.gamma * state_value(mdp, q, o.next_state));
  }
  return v;
}

QTable zero_table(const ToyMdp& mdp) {
  QTable q(mdp.state_count);
  for (int s = 0; s < mdp.state_count; ++s) q[s].assign(mdp.outcomes[s].size(), 0.0);
  return q;
}

}  // namespace

double bellman_residual(const ToyMdp& mdp, const QTable& q) {
  double r = 0.0;
  for (int s = 0; s < mdp.state_count; ++s)
    for (int a = 0; a < mdp.action_count(s); ++a)
      r = std::max(r, std::abs(q[s][a] - backup(mdp, q, s, a)));
  return r;
}

QTable value_iteration(const ToyMdp& mdp, double tol, int max_iterations) {
  mdp.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("value_iteration tolerance must be positive");
  QTable q = zero_table(mdp);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iterations; ++it) {
    QTable next = q;
    residual = 0.0;
    for (int s = 0; s < mdp.state_count; ++s) {
      for (int a = 0; a < mdp.action_count(s); ++a) {
        next[s][a] = backup(mdp, q, s, a);
        residual = std::max(residual, std::abs(next[s][a] - q[s][a]));
      }
    }
    q = std::move(next);
    if (!std::isfinite(residual)) break;
    // The last change bounds the residual of the returned table up to a
    // factor gamma, so check the real residual once the change is small.
    if (residual <= tol) {
      const double r = bellman_residual(mdp, q);
      if (r <= tol) return q;
    }
  }
  throw ConvergenceError("value_iteration did not converge (residual " +
                             std::to_string(residual) + ")",
                         residual);
}

ToyMdpEnv::ToyMdpEnv(ToyMdp mdp) : mdp_(std::move(mdp)) {
  mdp_.validate();
  actions_ = mdp_.max_action_count();
  current_ = mdp_.start_state;
}

std::vector<double> ToyMdpEnv::encode(int state) const {
  std::vector<double> v(mdp_.state_count, 0.0);
  v.at(state) = 1.0;
  return v;
}

int ToyMdpEnv::decode(const std::vector<double>& state) const {
  int found = -1;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state[i] == 1.0) {
      if (found >= 0) return -1;
      found = static_cast<int>(i);
    } else if (state[i] != 0.0) {
      return -1;
    }
  }
  return found;
}

std::vector<double> ToyMdpEnv::reset(Rng& /*rng*/) {
  current_ = mdp_.start_state;
  done_ = mdp_.terminal[current_];
  return encode(current_);
}

StepResult ToyMdpEnv::step(int action, Rng& rng) {
  if (done_) throw std::logic_error("episode is over; call reset() first");
  if (action < 0 || action >= mdp_.action_count(current_)) {
    throw std::invalid_argument("action " + std::to_string(action) + " not valid in state " +
                                std::to_string(current_));
  }
  const auto& row = mdp_.outcomes[current_][action];
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double draw = u(rng);
  const Outcome* chosen = &row.back();
  for (const auto& o : row) {
    if (draw < o.probability) {
      chosen = &o;
      break;
    }
    draw -= o.probability;
  }
  double reward = chosen->reward_mean;
  if (chosen->reward_stddev > 0.0) {
    std::normal_distribution<double> noise(chosen->reward_mean, chosen->reward_stddev);
    reward = noise(rng);
  }
  current_ = chosen->next_state;
  done_ = mdp_.terminal[current_];

  StepResult out;
  out.next_state = encode(current_);
  out.reward = reward;
  out.done = done_;
  return out;
}

}  // namespace dqnlab::env
