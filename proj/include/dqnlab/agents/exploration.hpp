#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dqnlab/agents/network_bank.hpp"
#include "dqnlab/env/environment.hpp"

namespace dqnlab::agents {

using env::Rng;

/// Epsilon-greedy on policy network 1. Exactly one uniform draw decides
/// explore vs exploit; exploring draws one more for the action. Only the first
/// `valid_actions` outputs are eligible (0 means all).
int select_action(std::span<const double> state, const NetworkBank& bank, double epsilon, Rng& rng,
                  int valid_actions = 0);

/// Splits batch positions [0, batch_size) into k groups, each position going
/// to a uniformly chosen group. k = 1 returns the identity split and consumes
/// no randomness.
std::vector<std::vector<std::size_t>> assign_batch(std::size_t batch_size, int k, Rng& rng);

/// Same partition applied to the transitions themselves.
std::vector<std::vector<env::Transition>> assign_batch(const std::vector<env::Transition>& batch,
                                                       int k, Rng& rng);

}  // namespace dqnlab::agents
