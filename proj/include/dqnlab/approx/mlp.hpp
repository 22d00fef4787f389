#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace dqnlab::approx {

/// One dense layer: out = weights * in + bias.
struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out
};

/// Raised when a batch carries NaN/Inf states or targets. Upstream this almost
/// always means the learner diverged.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense feed-forward Q-network. Rectifier on hidden layers, identity on the
/// output layer, so output size equals the action count.
class Mlp {
 public:
  Mlp() = default;

  /// Weights drawn uniformly from +-1/sqrt(fan_in) using `seed`. Biases are
  /// drawn from the same range when enabled.
  Mlp(std::vector<int> layer_dims, std::uint64_t seed, bool use_bias = true);

  /// All parameters zero. Used for tabular (one-hot, single layer) learners.
  static Mlp zeros(std::vector<int> layer_dims, bool use_bias = true);

  int input_dim() const { return layer_dims_.front(); }
  int output_dim() const { return layer_dims_.back(); }
  const std::vector<int>& layer_dims() const { return layer_dims_; }
  bool has_bias() const { return use_bias_; }

  /// Q-values for one state. Throws std::invalid_argument on a dimension
  /// mismatch.
  Eigen::VectorXd forward(std::span<const double> state) const;

  /// Column-per-sample batch evaluation: states is input_dim x B, result is
  /// output_dim x B.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& states) const;

  /// Snapshot this network into `target`. Afterwards target computes the same
  /// function and shares no storage with the source.
  void copy_into(Mlp& target) const;

  /// Mean squared error between Q(s_i, a_i) and targets_i. When `gradient` is
  /// non-null it receives dLoss/dparams with the same shapes as layers().
  double loss_and_gradient(const Eigen::MatrixXd& states,
                           std::span<const int> actions,
                           std::span<const double> targets,
                           std::vector<DenseLayer>* gradient) const;

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& mutable_layers() { return layers_; }

  std::size_t parameter_count() const;
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> flat);

 private:
  struct Shape {};
  Mlp(Shape, std::vector<int> layer_dims, bool use_bias);

  std::vector<int> layer_dims_;
  std::vector<DenseLayer> layers_;
  bool use_bias_ = true;
};

/// Flattens layer-shaped values (weights column-major, then bias, per layer).
std::vector<double> flatten(const std::vector<DenseLayer>& layers, bool include_bias = true);

/// Network widths for the two CartPole settings. `linear` is three dense
/// layers; `deep` is five dense layers standing in for the conv stack.
std::vector<int> linear_network_dims(int state_dim, int action_count, int hidden_width = 64);
std::vector<int> deep_network_dims(int state_dim, int action_count, int hidden_width = 64);

}  // namespace dqnlab::approx
