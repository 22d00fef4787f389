#include "dqnlab/env/cartpole.hpp"

#include <cmath>
#include <string>

namespace dqnlab::env {

bool cartpole_failed(const CartPoleState& s) {
  return s.x < -CartPoleParams::kXLimit || s.x > CartPoleParams::kXLimit ||
         s.theta < -CartPoleParams::kThetaLimit || s.theta > CartPoleParams::kThetaLimit;
}

CartPoleStep cartpole_step(const CartPoleState& state, CartPoleAction action) {
  using P = CartPoleParams;
  if (cartpole_failed(state)) throw CartPoleMisuse("cannot step a terminal cart-pole state");

  const double force = action == CartPoleAction::kRight ? P::kForce : -P::kForce;
  const double cos_t = std::cos(state.theta);
  const double sin_t = std::sin(state.theta);
  const double temp =
      (force + P::kPoleMassLength * state.theta_dot * state.theta_dot * sin_t) / P::kTotalMass;
  const double theta_acc =
      (P::kGravity * sin_t - cos_t * temp) /
      (P::kHalfLength * (4.0 / 3.0 - P::kPoleMass * cos_t * cos_t / P::kTotalMass));
  const double x_acc = temp - P::kPoleMassLength * theta_acc * cos_t / P::kTotalMass;

  CartPoleStep out;
  out.state.x = state.x + P::kTau * state.x_dot;
  out.state.x_dot = state.x_dot + P::kTau * x_acc;
  out.state.theta = state.theta + P::kTau * state.theta_dot;
  out.state.theta_dot = state.theta_dot + P::kTau * theta_acc;
  out.reward = 1.0;
  out.done = cartpole_failed(out.state);
  return out;
}

std::vector<double> CartPoleEnv::reset(Rng& rng) {
  std::uniform_real_distribution<double> start(-0.05, 0.05);
  state_.x = start(rng);
  state_.x_dot = start(rng);
  state_.theta = start(rng);
  state_.theta_dot = start(rng);
  steps_ = 0;
  done_ = false;
  const auto a = state_.as_array();
  return {a.begin(), a.end()};
}

StepResult CartPoleEnv::step(int action, Rng& /*rng*/) {
  if (done_) throw CartPoleMisuse("episode is over; call reset() first");
  if (action != 0 && action != 1) {
    throw std::invalid_argument("cart-pole action must be 0 or 1, got " + std::to_string(action));
  }
  const auto next = cartpole_step(state_, static_cast<CartPoleAction>(action));
  state_ = next.state;
  ++steps_;

  StepResult out;
  const auto a = state_.as_array();
  out.next_state.assign(a.begin(), a.end());
  out.reward = next.reward;
  out.truncated = !next.done && steps_ >= step_cap_;
  out.done = next.done || out.truncated;
  done_ = out.done;
  return out;
}

}  // namespace dqnlab::env
