#include "dqnlab/agents/agent_spec.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dqnlab::agents {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  const auto n = lower(name);
  if (n == "dqn") return Algorithm::kDqn;
  if (n == "ddqn" || n == "double-dqn") return Algorithm::kDdqn;
  if (n == "tdqn") return Algorithm::kTdqn;
  if (n == "sddqn" || n == "sd-dqn") return Algorithm::kSdDqn;
  if (n == "fddqn" || n == "fd-dqn") return Algorithm::kFdDqn;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kDqn: return "DQN";
    case Algorithm::kDdqn: return "DDQN";
    case Algorithm::kTdqn: return "TDQN";
    case Algorithm::kSdDqn: return "SDDQN";
    case Algorithm::kFdDqn: return "FDDQN";
  }
  return "?";
}

int policy_network_count(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSdDqn: return 2;
    case Algorithm::kFdDqn: return 3;
    default: return 1;
  }
}

SyncUnit parse_sync_unit(std::string_view name) {
  const auto n = lower(name);
  if (n == "episodes" || n == "episode") return SyncUnit::kEpisodes;
  if (n == "steps" || n == "step") return SyncUnit::kSteps;
  throw std::invalid_argument("unknown sync unit '" + std::string(name) + "'");
}

std::string_view to_string(SyncUnit unit) {
  return unit == SyncUnit::kEpisodes ? "episodes" : "steps";
}

SecondaryPhase parse_secondary_phase(std::string_view name) {
  const auto n = lower(name);
  if (n == "inclusive") return SecondaryPhase::kInclusive;
  if (n == "offset") return SecondaryPhase::kOffset;
  throw std::invalid_argument("unknown secondary phase '" + std::string(name) + "'");
}

std::string_view to_string(SecondaryPhase phase) {
  return phase == SecondaryPhase::kInclusive ? "inclusive" : "offset";
}

NetworkKind parse_network_kind(std::string_view name) {
  const auto n = lower(name);
  if (n == "linear") return NetworkKind::kLinear;
  if (n == "deep") return NetworkKind::kDeep;
  if (n == "tabular") return NetworkKind::kTabular;
  throw std::invalid_argument("unknown network kind '" + std::string(name) + "'");
}

std::string_view to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::kLinear: return "linear";
    case NetworkKind::kDeep: return "deep";
    case NetworkKind::kTabular: return "tabular";
  }
  return "?";
}

double EpsilonSchedule::at(long episode) const {
  return end + (start - end) * std::pow(decay, static_cast<double>(episode));
}

void AgentSpec::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
  };
  if (!(gamma >= 0.0 && gamma < 1.0)) fail("gamma", "must lie in [0, 1)");
  for (double e : {epsilon.start, epsilon.end}) {
    if (!(e >= 0.0 && e <= 1.0)) fail("epsilon", "start and end must lie in [0, 1]");
  }
  if (!(epsilon.decay >= 0.0 && epsilon.decay <= 1.0)) fail("epsilon_decay", "must lie in [0, 1]");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    fail("learning_rate", "must be a finite non-negative number");
  }
  if (sync_period < 1) fail("sync_period", "must be at least 1");
  if (algorithm == Algorithm::kTdqn && (sync_period < 2 || sync_period % 2 != 0)) {
    fail("sync_period", "TDQN needs an even period of at least 2 so N/2 is integral");
  }
  if (batch_size < 1) fail("batch_size", "must be at least 1");
  if (replay_capacity < 1) fail("replay_capacity", "must be at least 1");
  if (min_replay < 1) fail("min_replay", "must be at least 1");
  if (hidden_width < 1) fail("hidden_width", "must be at least 1");
  if (train_every < 1) fail("train_every", "must be at least 1");
  if (optimizer.momentum < 0.0 || optimizer.momentum >= 1.0) fail("momentum", "must lie in [0, 1)");
}

std::string AgentSpec::canonical() const {
  std::string s;
  auto kv = [&s](std::string_view k, const std::string& v) {
    s.append(k).append("=").append(v).append("\n");
  };
  kv("algorithm", std::string(to_string(algorithm)));
  kv("gamma", num(gamma));
  kv("epsilon_start", num(epsilon.start));
  kv("epsilon_end", num(epsilon.end));
  kv("epsilon_decay", num(epsilon.decay));
  kv("learning_rate", num(learning_rate));
  kv("optimizer", std::string(approx::to_string(optimizer.kind)));
  kv("momentum", num(optimizer.momentum));
  kv("max_grad_norm", num(optimizer.max_grad_norm));
  kv("sync_period", std::to_string(sync_period));
  kv("sync_unit", std::string(to_string(sync_unit)));
  kv("secondary_phase", std::string(to_string(secondary_phase)));
  kv("batch_size", std::to_string(batch_size));
  kv("replay_capacity", std::to_string(replay_capacity));
  kv("min_replay", std::to_string(min_replay));
  kv("network", std::string(to_string(network)));
  kv("hidden_width", std::to_string(hidden_width));
  kv("train_every", std::to_string(train_every));
  kv("online_selection", online_selection ? "true" : "false");
  kv("seed", std::to_string(seed));
  return s;
}

}  // namespace dqnlab::agents
