#include "dqnlab/agents/network_bank.hpp"

#include <stdexcept>

namespace dqnlab::agents {

NetworkBank NetworkBank::create(Algorithm algorithm, const std::vector<int>& dims,
                                std::uint64_t seed, bool zero_init, bool use_bias) {
  NetworkBank bank;
  const int k = policy_network_count(algorithm);
  for (int i = 0; i < k; ++i) {
    // Golden-ratio stride keeps the per-network streams apart for nearby seeds.
    const std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1);
    bank.policies.push_back(zero_init ? Mlp::zeros(dims, use_bias) : Mlp(dims, s, use_bias));
    bank.targets.push_back(bank.policies.back());
  }
  if (algorithm == Algorithm::kTdqn) bank.secondary = bank.policies.front();
  return bank;
}

bool SyncSchedule::primary_fires(long tick) const {
  return tick > 0 && tick % period == 0;
}

bool SyncSchedule::secondary_fires(long tick) const {
  if (tick <= 0 || period < 2 || period % 2 != 0) return false;
  const long half = period / 2;
  if (tick % half != 0) return false;
  return phase == SecondaryPhase::kInclusive || (tick / half) % 2 == 1;
}

std::vector<SyncEvent> sync_targets(NetworkBank& bank, long tick, const SyncSchedule& schedule) {
  if (tick < 0) throw std::invalid_argument("sync tick must be non-negative");
  if (schedule.period < 1) throw std::invalid_argument("sync period must be at least 1");
  std::vector<SyncEvent> events;
  if (tick == 0) {
    for (int i = 0; i < bank.size(); ++i) bank.policies[i].copy_into(bank.targets[i]);
    if (bank.secondary) bank.policies.front().copy_into(*bank.secondary);
    events.push_back({0, SyncKind::kInitial});
    return events;
  }
  if (bank.secondary && schedule.secondary_fires(tick)) {
    bank.policies.front().copy_into(*bank.secondary);
    events.push_back({tick, SyncKind::kSecondary});
  }
  if (schedule.primary_fires(tick)) {
    for (int i = 0; i < bank.size(); ++i) bank.policies[i].copy_into(bank.targets[i]);
    events.push_back({tick, SyncKind::kPrimary});
  }
  return events;
}

}  // namespace dqnlab::agents
