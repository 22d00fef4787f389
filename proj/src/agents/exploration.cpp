#include "dqnlab/agents/exploration.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dqnlab/agents/targets.hpp"

namespace dqnlab::agents {

int select_action(std::span<const double> state, const NetworkBank& bank, double epsilon, Rng& rng,
                  int valid_actions) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon outside [0, 1]");
  const Mlp& actor = bank.policies.front();
  const int n = valid_actions > 0 ? std::min(valid_actions, actor.output_dim()) : actor.output_dim();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < epsilon) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    return pick(rng);
  }
  return greedy_index(actor.forward(state), n);
}

std::vector<std::vector<std::size_t>> assign_batch(std::size_t batch_size, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("assign_batch needs k >= 1");
  std::vector<std::vector<std::size_t>> parts(static_cast<std::size_t>(k));
  if (k == 1) {
    parts[0].resize(batch_size);
    std::iota(parts[0].begin(), parts[0].end(), std::size_t{0});
    return parts;
  }
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (std::size_t i = 0; i < batch_size; ++i) parts[static_cast<std::size_t>(pick(rng))].push_back(i);
  return parts;
}

std::vector<std::vector<env::Transition>> assign_batch(const std::vector<env::Transition>& batch,
                                                       int k, Rng& rng) {
  std::vector<std::vector<env::Transition>> out;
  for (const auto& idx : assign_batch(batch.size(), k, rng)) {
    auto& part = out.emplace_back();
    part.reserve(idx.size());
    for (std::size_t i : idx) part.push_back(batch[i]);
  }
  return out;
}

}  // namespace dqnlab::agents
