#pragma once

#include <array>
#include <stdexcept>

#include "dqnlab/env/environment.hpp"

namespace dqnlab::env {

struct CartPoleState {
  double x = 0.0;          // m
  double x_dot = 0.0;      // m/s
  double theta = 0.0;      // rad
  double theta_dot = 0.0;  // rad/s

  std::array<double, 4> as_array() const { return {x, x_dot, theta, theta_dot}; }
  bool operator==(const CartPoleState&) const = default;
};

enum class CartPoleAction { kLeft = 0, kRight = 1 };

struct CartPoleParams {
  static constexpr double kGravity = 9.8;
  static constexpr double kCartMass = 1.0;
  static constexpr double kPoleMass = 0.1;
  static constexpr double kTotalMass = kCartMass + kPoleMass;
  static constexpr double kHalfLength = 0.5;
  static constexpr double kPoleMassLength = kPoleMass * kHalfLength;
  static constexpr double kForce = 10.0;
  static constexpr double kTau = 0.02;
  static constexpr double kThetaLimit = 12.0 * 2.0 * 3.14159265358979323846 / 360.0;
  static constexpr double kXLimit = 2.4;
  static constexpr int kStepCap = 200;
};

class CartPoleMisuse : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CartPoleStep {
  CartPoleState state;
  double reward = 1.0;
  bool done = false;  // failure only; the step cap is tracked by CartPoleEnv
};

bool cartpole_failed(const CartPoleState& s);

/// One explicit-Euler step of the pole-on-cart dynamics. Throws
/// CartPoleMisuse when `state` is already outside the failure bounds.
CartPoleStep cartpole_step(const CartPoleState& state, CartPoleAction action);

/// Episodic wrapper: random start in [-0.05, 0.05]^4, +1 per step, ends on
/// failure or after 200 steps.
class CartPoleEnv final : public Environment {
 public:
  explicit CartPoleEnv(int step_cap = CartPoleParams::kStepCap) : step_cap_(step_cap) {}

  int state_dim() const override { return 4; }
  int action_count() const override { return 2; }

  std::vector<double> reset(Rng& rng) override;
  StepResult step(int action, Rng& rng) override;
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<CartPoleEnv>(*this);
  }

  const CartPoleState& state() const { return state_; }
  int steps() const { return steps_; }

 private:
  CartPoleState state_;
  int steps_ = 0;
  int step_cap_;
  bool done_ = true;
};

}  // namespace dqnlab::env
