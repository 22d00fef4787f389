#include "dqnlab/approx/mlp.hpp"

#include <cmath>
#include <random>
#include <string>

namespace dqnlab::approx {

namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.size() < 2) {
    throw std::invalid_argument("Mlp needs at least an input and an output size");
  }
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("Mlp layer sizes must be positive");
  }
}

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

Mlp::Mlp(Shape, std::vector<int> layer_dims, bool use_bias)
    : layer_dims_(std::move(layer_dims)), use_bias_(use_bias) {
  check_dims(layer_dims_);
  layers_.reserve(layer_dims_.size() - 1);
  for (std::size_t l = 0; l + 1 < layer_dims_.size(); ++l) {
    layers_.push_back({Eigen::MatrixXd::Zero(layer_dims_[l + 1], layer_dims_[l]),
                       Eigen::VectorXd::Zero(layer_dims_[l + 1])});
  }
}

Mlp::Mlp(std::vector<int> layer_dims, std::uint64_t seed, bool use_bias)
    : Mlp(Shape{}, std::move(layer_dims), use_bias) {
  std::mt19937_64 rng(seed);
  for (auto& layer : layers_) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layer.weights.cols()));
    std::uniform_real_distribution<double> dist(-bound, bound);
    // Column-major fill keeps the draw order independent of Eigen internals.
    for (Eigen::Index c = 0; c < layer.weights.cols(); ++c)
      for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) layer.weights(r, c) = dist(rng);
    if (use_bias_)
      for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = dist(rng);
  }
}

Mlp Mlp::zeros(std::vector<int> layer_dims, bool use_bias) {
  return Mlp(Shape{}, std::move(layer_dims), use_bias);
}

Eigen::VectorXd Mlp::forward(std::span<const double> state) const {
  if (static_cast<int>(state.size()) != input_dim()) {
    throw std::invalid_argument("state has " + std::to_string(state.size()) +
                                " entries, network expects " + std::to_string(input_dim()));
  }
  Eigen::MatrixXd column =
      Eigen::Map<const Eigen::VectorXd>(state.data(), static_cast<Eigen::Index>(state.size()));
  return forward_batch(column).col(0);
}

Eigen::MatrixXd Mlp::forward_batch(const Eigen::MatrixXd& states) const {
  if (states.rows() != input_dim()) {
    throw std::invalid_argument("batch rows " + std::to_string(states.rows()) +
                                " do not match network input " + std::to_string(input_dim()));
  }
  Eigen::MatrixXd a = states;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::MatrixXd z = layers_[l].weights * a;
    z.colwise() += layers_[l].bias;
    if (l + 1 < layers_.size()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

void Mlp::copy_into(Mlp& target) const { target = *this; }

double Mlp::loss_and_gradient(const Eigen::MatrixXd& states, std::span<const int> actions,
                              std::span<const double> targets,
                              std::vector<DenseLayer>* gradient) const {
  const auto batch = static_cast<Eigen::Index>(actions.size());
  if (batch == 0 || states.cols() != batch || static_cast<Eigen::Index>(targets.size()) != batch) {
    throw std::invalid_argument("states, actions and targets must share a non-zero batch length");
  }
  if (states.rows() != input_dim()) {
    throw std::invalid_argument("batch state dimension does not match network input");
  }
  if (!all_finite(states)) throw NonFiniteError("non-finite state in training batch");
  for (double y : targets) {
    if (!std::isfinite(y)) throw NonFiniteError("non-finite target in training batch");
  }
  for (int a : actions) {
    if (a < 0 || a >= output_dim()) throw std::invalid_argument("action index out of range");
  }

  // Forward pass keeping pre-activations for the backward pass.
  std::vector<Eigen::MatrixXd> inputs;  // input to layer l
  std::vector<Eigen::MatrixXd> pre;     // z of layer l
  inputs.reserve(layers_.size());
  pre.reserve(layers_.size());
  Eigen::MatrixXd a = states;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    inputs.push_back(a);
    Eigen::MatrixXd z = layers_[l].weights * a;
    z.colwise() += layers_[l].bias;
    pre.push_back(z);
    a = (l + 1 < layers_.size()) ? Eigen::MatrixXd(z.cwiseMax(0.0)) : z;
  }

  const double inv_batch = 1.0 / static_cast<double>(batch);
  double loss = 0.0;
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(a.rows(), batch);
  for (Eigen::Index i = 0; i < batch; ++i) {
    const double err = a(actions[i], i) - targets[i];
    loss += err * err;
    delta(actions[i], i) = 2.0 * err * inv_batch;
  }
  loss *= inv_batch;

  if (gradient == nullptr) return loss;

  gradient->resize(layers_.size());
  for (std::size_t l = layers_.size(); l-- > 0;) {
    auto& g = (*gradient)[l];
    g.weights = delta * inputs[l].transpose();
    g.bias = use_bias_ ? Eigen::VectorXd(delta.rowwise().sum())
                       : Eigen::VectorXd::Zero(layers_[l].bias.size());
    if (l > 0) {
      Eigen::MatrixXd back = layers_[l].weights.transpose() * delta;
      delta = back.cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return loss;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) {
    n += static_cast<std::size_t>(layer.weights.size());
    if (use_bias_) n += static_cast<std::size_t>(layer.bias.size());
  }
  return n;
}

std::vector<double> Mlp::parameters() const { return flatten(layers_, use_bias_); }

void Mlp::set_parameters(std::span<const double> flat) {
  if (flat.size() != parameter_count()) {
    throw std::invalid_argument("parameter vector has the wrong length");
  }
  std::size_t k = 0;
  for (auto& layer : layers_) {
    for (Eigen::Index i = 0; i < layer.weights.size(); ++i) layer.weights.data()[i] = flat[k++];
    if (use_bias_)
      for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = flat[k++];
  }
}

std::vector<double> flatten(const std::vector<DenseLayer>& layers, bool include_bias) {
  std::vector<double> out;
  for (const auto& layer : layers) {
    out.insert(out.end(), layer.weights.data(), layer.weights.data() + layer.weights.size());
    if (include_bias) out.insert(out.end(), layer.bias.data(), layer.bias.data() + layer.bias.size());
  }
  return out;
}

std::vector<int> linear_network_dims(int state_dim, int action_count, int hidden_width) {
  return {state_dim, hidden_width, hidden_width, action_count};
}

std::vector<int> deep_network_dims(int state_dim, int action_count, int hidden_width) {
  return {state_dim, hidden_width, hidden_width, hidden_width, hidden_width, action_count};
}

}  // namespace dqnlab::approx
