#pragma once

#include <random>
#include <vector>

#include "dqnlab/agents/network_bank.hpp"
#include "dqnlab/approx/mlp.hpp"
#include "dqnlab/env/environment.hpp"

namespace dqnlab::testing {

/// Single-layer, bias-free net over a one-element input: Q([1]) = q.
inline approx::Mlp fixed_q(const std::vector<double>& q) {
  auto net = approx::Mlp::zeros({1, static_cast<int>(q.size())}, false);
  for (std::size_t a = 0; a < q.size(); ++a) net.mutable_layers()[0].weights(static_cast<Eigen::Index>(a), 0) = q[a];
  return net;
}

inline env::Transition unit_transition(double reward, bool terminal = false) {
  env::Transition t;
  t.state = {1.0};
  t.action = 0;
  t.reward = reward;
  t.next_state = {1.0};
  t.terminal = terminal;
  return t;
}

inline env::Transition random_transition(int state_dim, int actions, env::Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, actions - 1);
  std::bernoulli_distribution ends(0.1);
  env::Transition t;
  for (int i = 0; i < state_dim; ++i) {
    t.state.push_back(n(rng));
    t.next_state.push_back(n(rng));
  }
  t.action = pick(rng);
  t.reward = n(rng);
  t.terminal = ends(rng);
  return t;
}

/// Small random network with random widths.
inline approx::Mlp random_net(int state_dim, int actions, env::Rng& rng) {
  std::uniform_int_distribution<int> width(2, 8);
  std::uniform_int_distribution<int> depth(0, 2);
  std::vector<int> dims{state_dim};
  for (int l = depth(rng); l > 0; --l) dims.push_back(width(rng));
  dims.push_back(actions);
  return approx::Mlp(dims, rng());
}

/// Adds N(0, scale^2) noise to every parameter.
inline void perturb(approx::Mlp& net, env::Rng& rng, double scale = 0.5) {
  std::normal_distribution<double> n(0.0, scale);
  auto p = net.parameters();
  for (auto& v : p) v += n(rng);
  net.set_parameters(p);
}

}  // namespace dqnlab::testing
