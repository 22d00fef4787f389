#include "dqnlab/agents/targets.hpp"

#include <algorithm>
#include <stdexcept>

namespace dqnlab::agents {

int greedy_index(const Eigen::Ref<const Eigen::VectorXd>& q, int valid) {
  const Eigen::Index n = valid > 0 ? std::min<Eigen::Index>(valid, q.size()) : q.size();
  if (n == 0) throw std::invalid_argument("argmax over an empty action set");
  Eigen::Index best = 0;
  for (Eigen::Index a = 1; a < n; ++a) {
    if (q[a] > q[best]) best = a;
  }
  return static_cast<int>(best);
}

double double_estimate_target(const Transition& t, const Mlp& selector, const Mlp& evaluator,
                              double gamma) {
  if (t.terminal) return t.reward;
  const Eigen::VectorXd qs = selector.forward(t.next_state);
  const int a = greedy_index(qs, t.next_action_count);
  if (&selector == &evaluator) return t.reward + gamma * qs[a];
  const Eigen::VectorXd qe = evaluator.forward(t.next_state);
  return t.reward + gamma * qe[a];
}

double dqn_target(const Transition& t, const Mlp& net, double gamma) {
  return double_estimate_target(t, net, net, gamma);
}

double ddqn_target(const Transition& t, const Mlp& online, const Mlp& target, double gamma) {
  return double_estimate_target(t, online, target, gamma);
}

double tdqn_target(const Transition& t, const Mlp& primary, const Mlp& secondary, double gamma) {
  return double_estimate_target(t, secondary, primary, gamma);
}

double sddqn_target(const Transition& t, int which, const NetworkBank& bank, double gamma,
                    bool online_selection) {
  const auto r = target_roles(Algorithm::kSdDqn, which, bank, online_selection);
  return double_estimate_target(t, *r.selector, *r.evaluator, gamma);
}

double fddqn_target(const Transition& t, int which, const NetworkBank& bank, double gamma,
                    bool online_selection) {
  const auto r = target_roles(Algorithm::kFdDqn, which, bank, online_selection);
  return double_estimate_target(t, *r.selector, *r.evaluator, gamma);
}

TargetRoles target_roles(Algorithm algorithm, int which, const NetworkBank& bank,
                         bool online_selection) {
  const int k = policy_network_count(algorithm);
  if (which < 1 || which > k) throw std::invalid_argument("network index out of range");
  if (bank.size() < k) throw std::invalid_argument("network bank too small for algorithm");
  switch (algorithm) {
    case Algorithm::kDqn:
      return {&bank.targets[0], &bank.targets[0]};
    case Algorithm::kDdqn:
      return {&bank.policies[0], &bank.targets[0]};
    case Algorithm::kTdqn:
      if (!bank.secondary) throw std::invalid_argument("TDQN needs a secondary target");
      return {&*bank.secondary, &bank.targets[0]};
    case Algorithm::kSdDqn: {
      const int self = which - 1;
      const int other = 1 - self;
      const Mlp* sel = online_selection ? &bank.policies[self] : &bank.targets[self];
      return {sel, &bank.targets[other]};
    }
    case Algorithm::kFdDqn: {
      // (selector, evaluator) per network, 0-based: 1:(3,2) 2:(1,3) 3:(2,1).
      static constexpr int kSelect[3] = {2, 0, 1};
      static constexpr int kEval[3] = {1, 2, 0};
      const int i = which - 1;
      const Mlp* sel = online_selection ? &bank.policies[i] : &bank.targets[kSelect[i]];
      return {sel, &bank.targets[kEval[i]]};
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

std::vector<double> batch_targets(std::span<const Transition> batch,
                                  std::span<const std::size_t> rows, const TargetRoles& roles,
                                  double gamma) {
  std::vector<double> y(rows.size());
  if (rows.empty()) return y;
  const int dim = roles.selector->input_dim();
  Eigen::MatrixXd next(dim, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto& s = batch[rows[j]].next_state;
    if (static_cast<int>(s.size()) != dim) throw std::invalid_argument("next_state dimension");
    next.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(s.data(), dim);
  }
  const Eigen::MatrixXd qs = roles.selector->forward_batch(next);
  const bool shared = roles.selector == roles.evaluator;
  const Eigen::MatrixXd qe = shared ? Eigen::MatrixXd() : roles.evaluator->forward_batch(next);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto& t = batch[rows[j]];
    if (t.terminal) {
      y[j] = t.reward;
      continue;
    }
    const auto col = static_cast<Eigen::Index>(j);
    const int a = greedy_index(qs.col(col), t.next_action_count);
    y[j] = t.reward + gamma * (shared ? qs(a, col) : qe(a, col));
  }
  return y;
}

}  // namespace dqnlab::agents
