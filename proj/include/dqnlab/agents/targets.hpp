#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dqnlab/agents/network_bank.hpp"
#include "dqnlab/env/environment.hpp"

namespace dqnlab::agents {

using env::Transition;

/// Index of the largest of the first `valid` entries (0 means all); ties go to
/// the lowest index.
int greedy_index(const Eigen::Ref<const Eigen::VectorXd>& q, int valid = 0);

/// R + gamma * Q_eval(S', argmax_a Q_select(S', a)), or R when terminal. Every
/// rule below is this estimator with a particular choice of networks.
double double_estimate_target(const Transition& t, const Mlp& selector, const Mlp& evaluator,
                              double gamma);

/// R + gamma * max_a Q(S', a; net).
double dqn_target(const Transition& t, const Mlp& net, double gamma);
/// Select with `online`, evaluate with `target`.
double ddqn_target(const Transition& t, const Mlp& online, const Mlp& target, double gamma);
/// Select with `secondary`, evaluate with `primary`.
double tdqn_target(const Transition& t, const Mlp& primary, const Mlp& secondary, double gamma);
/// which = 1 selects with targets[0] and evaluates with targets[1]; which = 2
/// mirrors it. With `online_selection` the selector is policies[which - 1].
double sddqn_target(const Transition& t, int which, const NetworkBank& bank, double gamma,
                    bool online_selection = false);
/// Cyclic: Y1 selects by target 3 / evaluates by 2, Y2 selects by 1 /
/// evaluates by 3, Y3 selects by 2 / evaluates by 1.
double fddqn_target(const Transition& t, int which, const NetworkBank& bank, double gamma,
                    bool online_selection = false);

/// Which networks produce the training target for the sub-batch of policy
/// network `which` (1-based).
struct TargetRoles {
  const Mlp* selector = nullptr;
  const Mlp* evaluator = nullptr;
};
TargetRoles target_roles(Algorithm algorithm, int which, const NetworkBank& bank,
                         bool online_selection = false);

/// Vectorised double_estimate_target over a batch; one network pass per role.
std::vector<double> batch_targets(std::span<const Transition> batch,
                                  std::span<const std::size_t> rows, const TargetRoles& roles,
                                  double gamma);

}  // namespace dqnlab::agents
