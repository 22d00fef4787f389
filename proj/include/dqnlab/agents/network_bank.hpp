#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dqnlab/agents/agent_spec.hpp"
#include "dqnlab/approx/mlp.hpp"

namespace dqnlab::agents {

using approx::Mlp;

/// Online and frozen networks for one learner. policies[i] pairs with
/// targets[i]; `secondary` exists only for TDQN.
struct NetworkBank {
  std::vector<Mlp> policies;
  std::vector<Mlp> targets;
  std::optional<Mlp> secondary;

  /// Policy networks get independent seeds derived from `seed`. Targets start
  /// as exact copies. `zero_init` builds all-zero tables (tabular learners).
  static NetworkBank create(Algorithm algorithm, const std::vector<int>& dims, std::uint64_t seed,
                            bool zero_init = false, bool use_bias = true);

  int size() const { return static_cast<int>(policies.size()); }
};

enum class SyncKind { kInitial, kPrimary, kSecondary };

struct SyncEvent {
  long tick = 0;
  SyncKind kind = SyncKind::kPrimary;
};

struct SyncSchedule {
  int period = 10;
  SecondaryPhase phase = SecondaryPhase::kInclusive;

  bool primary_fires(long tick) const;
  /// Meaningful only when a secondary target exists.
  bool secondary_fires(long tick) const;
};

/// Applies the target refreshes due at `tick` and reports them in the order
/// they were applied. Tick 0 copies every policy into every target (and the
/// secondary). Later ticks: the secondary copy happens before the primary one,
/// so when both fire the secondary receives the current online weights rather
/// than the old primary target.
std::vector<SyncEvent> sync_targets(NetworkBank& bank, long tick, const SyncSchedule& schedule);

}  // namespace dqnlab::agents
