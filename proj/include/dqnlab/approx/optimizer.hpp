#pragma once

#include <string_view>
#include <vector>

#include "dqnlab/approx/mlp.hpp"

namespace dqnlab::approx {

enum class OptimizerKind { kSgd, kAdam };

OptimizerKind parse_optimizer_kind(std::string_view name);
std::string_view to_string(OptimizerKind kind);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kAdam;
  double momentum = 0.0;  // SGD only
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double max_grad_norm = 0.0;  // <= 0 disables clipping
};

/// Holds the per-parameter state (momentum / Adam moments) for one network.
class Optimizer {
 public:
  Optimizer() = default;
  Optimizer(OptimizerConfig config, const Mlp& net);

  const OptimizerConfig& config() const { return config_; }

  /// In-place parameter update from a gradient shaped like net.layers().
  void apply(Mlp& net, std::vector<DenseLayer> gradient, double learning_rate);

 private:
  OptimizerConfig config_;
  std::vector<DenseLayer> first_;
  std::vector<DenseLayer> second_;
  long step_ = 0;
};

/// One gradient step on the mean squared error between Q(s, a) of the taken
/// actions and the supplied targets. Returns the loss before the update.
/// Throws NonFiniteError for NaN/Inf inputs and std::invalid_argument for
/// malformed batches.
double grad_step(Mlp& net, Optimizer& optimizer, const Eigen::MatrixXd& states,
                 std::span<const int> actions, std::span<const double> targets,
                 double learning_rate);

}  // namespace dqnlab::approx
