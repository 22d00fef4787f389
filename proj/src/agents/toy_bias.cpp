#include "dqnlab/agents/toy_bias.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "dqnlab/agents/trainer.hpp"

namespace dqnlab::agents {

AgentSpec ToyBiasConfig::spec(Algorithm algorithm, std::uint64_t seed, double gamma) const {
  AgentSpec s;
  s.algorithm = algorithm;
  s.seed = seed;
  s.gamma = gamma;
  s.epsilon = epsilon;
  s.learning_rate = learning_rate;
  s.optimizer.kind = approx::OptimizerKind::kSgd;
  s.sync_period = sync_period;
  s.batch_size = batch_size;
  s.min_replay = min_replay;
  s.replay_capacity = replay_capacity;
  s.network = NetworkKind::kTabular;
  return s;
}

ToyBiasResult measure_toy_bias(Algorithm algorithm, const env::ToyMdp& mdp, std::uint64_t seed,
                               const ToyBiasConfig& config) {
  const auto q_star = env::value_iteration(mdp, 1e-12);
  std::vector<double> v_star(static_cast<std::size_t>(mdp.state_count), 0.0);
  for (int s = 0; s < mdp.state_count; ++s) {
    if (!mdp.terminal[s]) v_star[s] = *std::max_element(q_star[s].begin(), q_star[s].end());
  }

  env::ToyMdpEnv environment(mdp);
  double total = 0.0;
  long count = 0;
  auto observer = [&](const TrainingUpdate& u) {
    for (std::size_t j = 0; j < u.rows.size(); ++j) {
      const auto& t = u.batch[u.rows[j]];
      if (t.terminal) continue;
      const int next = environment.decode(t.next_state);
      total += u.targets[j] - (t.reward + mdp.gamma * v_star[static_cast<std::size_t>(next)]);
      ++count;
    }
  };
  const auto record = train_run(config.spec(algorithm, seed, mdp.gamma), environment,
                                config.episodes, observer);
  if (record.diverged) throw std::runtime_error("toy learner diverged: " + record.diagnostic);
  return {count ? total / static_cast<double>(count) : 0.0, count};
}

PairedTTest paired_t_test_greater(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in length");
  if (a.size() < 2) throw std::invalid_argument("paired t test needs at least two pairs");
  PairedTTest out;
  out.n = static_cast<int>(a.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mean += a[i] - b[i];
  mean /= out.n;
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ss += (a[i] - b[i] - mean) * (a[i] - b[i] - mean);
  const double sd = std::sqrt(ss / (out.n - 1));
  out.mean_difference = mean;
  if (sd == 0.0) {
    out.t_statistic = mean > 0 ? INFINITY : (mean < 0 ? -INFINITY : 0.0);
    out.p_value = mean > 0 ? 0.0 : 1.0;
    return out;
  }
  out.t_statistic = mean / (sd / std::sqrt(static_cast<double>(out.n)));
  const boost::math::students_t dist(out.n - 1);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.t_statistic));
  return out;
}

}  // namespace dqnlab::agents
