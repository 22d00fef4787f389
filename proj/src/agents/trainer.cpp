#include "dqnlab/agents/trainer.hpp"

#include <chrono>

#include "dqnlab/agents/exploration.hpp"
#include "dqnlab/agents/targets.hpp"
#include "dqnlab/approx/optimizer.hpp"
#include "dqnlab/replay/replay_buffer.hpp"

namespace dqnlab::agents {

std::vector<double> moving_average(std::span<const double> values, int window) {
  if (window < 1) throw std::invalid_argument("moving average window must be positive");
  std::vector<double> out(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += values[i];
    if (i >= static_cast<std::size_t>(window)) sum -= values[i - window];
    const auto n = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
    out[i] = sum / static_cast<double>(n);
  }
  return out;
}

std::vector<int> network_dims(const AgentSpec& spec, int state_dim, int action_count) {
  switch (spec.network) {
    case NetworkKind::kLinear: return approx::linear_network_dims(state_dim, action_count, spec.hidden_width);
    case NetworkKind::kDeep: return approx::deep_network_dims(state_dim, action_count, spec.hidden_width);
    case NetworkKind::kTabular: return {state_dim, action_count};
  }
  throw std::invalid_argument("unknown network kind");
}

namespace {

class Learner {
 public:
  Learner(const AgentSpec& spec, int state_dim, int action_count, env::Rng& rng,
          const TrainingObserver& observer)
      : spec_(spec), rng_(rng), observer_(observer), buffer_(spec.replay_capacity) {
    const bool tabular = spec.network == NetworkKind::kTabular;
    bank_ = NetworkBank::create(spec.algorithm, network_dims(spec, state_dim, action_count),
                                spec.seed, tabular, !tabular);
    for (const auto& p : bank_.policies) optimizers_.emplace_back(spec.optimizer, p);
  }

  NetworkBank& bank() { return bank_; }

  void remember(env::Transition t) { buffer_.push(std::move(t)); }

  bool ready(long step) const {
    return buffer_.size() >= spec_.min_replay && step % spec_.train_every == 0;
  }

  // One minibatch update; returns the mean loss over the trained sub-batches.
  double update(long step) {
    const auto batch = buffer_.sample(static_cast<std::size_t>(spec_.batch_size), rng_);
    const int k = bank_.size();
    const auto parts = assign_batch(batch.size(), k, rng_);
    const int dim = bank_.policies.front().input_dim();
    double loss = 0.0;
    int trained = 0;
    for (int i = 0; i < k; ++i) {
      const auto& rows = parts[static_cast<std::size_t>(i)];
      if (rows.empty()) continue;
      const auto roles = target_roles(spec_.algorithm, i + 1, bank_, spec_.online_selection);
      const auto y = batch_targets(batch, rows, roles, spec_.gamma);
      if (observer_) observer_({step, i + 1, batch, rows, y, &bank_});
      Eigen::MatrixXd states(dim, static_cast<Eigen::Index>(rows.size()));
      std::vector<int> actions(rows.size());
      for (std::size_t j = 0; j < rows.size(); ++j) {
        const auto& t = batch[rows[j]];
        states.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(t.state.data(), dim);
        actions[j] = t.action;
      }
      loss += approx::grad_step(bank_.policies[static_cast<std::size_t>(i)],
                                optimizers_[static_cast<std::size_t>(i)], states, actions, y,
                                spec_.learning_rate);
      ++trained;
    }
    return trained ? loss / trained : 0.0;
  }

 private:
  const AgentSpec& spec_;
  env::Rng& rng_;
  const TrainingObserver& observer_;
  replay::ReplayBuffer buffer_;
  NetworkBank bank_;
  std::vector<approx::Optimizer> optimizers_;
};

void note_sync(const std::vector<SyncEvent>& events, EpisodeStats& stats,
               std::vector<SyncEvent>& log) {
  for (const auto& e : events) {
    if (e.kind == SyncKind::kPrimary) stats.primary_sync = true;
    if (e.kind == SyncKind::kSecondary) stats.secondary_sync = true;
    log.push_back(e);
  }
}

}  // namespace

RunRecord train_run(const AgentSpec& spec, env::Environment& env, long episodes,
                    const TrainingObserver& observer) {
  spec.validate();
  if (episodes < 0) throw std::invalid_argument("episode count must be non-negative");
  const auto started = std::chrono::steady_clock::now();

  RunRecord record;
  record.algorithm = spec.algorithm;
  record.seed = spec.seed;
  if (episodes == 0) return record;

  env::Rng rng(spec.seed);
  Learner learner(spec, env.state_dim(), env.action_count(), rng, observer);
  const SyncSchedule schedule{spec.sync_period, spec.secondary_phase};
  record.sync_events = sync_targets(learner.bank(), 0, schedule);

  std::vector<double> returns;
  double window_sum = 0.0;
  long global_step = 0;
  try {
    for (long ep = 0; ep < episodes; ++ep) {
      EpisodeStats stats;
      stats.episode = ep;
      stats.epsilon = spec.epsilon.at(ep);
      double loss_sum = 0.0;
      auto state = env.reset(rng);
      for (;;) {
        const int action = select_action(state, learner.bank(), stats.epsilon, rng,
                                         env.valid_action_count());
        auto result = env.step(action, rng);
        ++global_step;
        ++stats.steps;
        stats.episode_return += result.reward;

        env::Transition t;
        t.state = std::move(state);
        t.action = action;
        t.reward = result.reward;
        t.next_state = result.next_state;
        // A step-cap cut is not a true terminal: keep bootstrapping through it.
        t.terminal = result.done && !result.truncated;
        t.next_action_count = result.done ? 0 : env.valid_action_count();
        learner.remember(std::move(t));

        if (learner.ready(global_step)) {
          loss_sum += learner.update(global_step);
          ++stats.updates;
        }
        if (spec.sync_unit == SyncUnit::kSteps) {
          note_sync(sync_targets(learner.bank(), global_step, schedule), stats, record.sync_events);
        }
        if (result.done) break;
        state = std::move(result.next_state);
      }
      if (spec.sync_unit == SyncUnit::kEpisodes) {
        note_sync(sync_targets(learner.bank(), ep + 1, schedule), stats, record.sync_events);
      }
      stats.mean_loss = stats.updates ? loss_sum / static_cast<double>(stats.updates) : 0.0;
      returns.push_back(stats.episode_return);
      window_sum += stats.episode_return;
      if (returns.size() > static_cast<std::size_t>(kMovingAverageWindow)) {
        window_sum -= returns[returns.size() - 1 - kMovingAverageWindow];
      }
      stats.moving_average =
          window_sum / static_cast<double>(std::min<std::size_t>(returns.size(), kMovingAverageWindow));
      record.episodes.push_back(stats);
    }
  } catch (const approx::NonFiniteError& e) {
    record.diverged = true;
    record.diagnostic = "diverged in episode " + std::to_string(record.episodes.size()) +
                        " at step " + std::to_string(global_step) + ": " + e.what();
  }
  record.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

}  // namespace dqnlab::agents
