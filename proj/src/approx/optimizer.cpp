#include "dqnlab/approx/optimizer.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dqnlab::approx {

namespace {

std::vector<DenseLayer> zeros_like(const std::vector<DenseLayer>& layers) {
  std::vector<DenseLayer> out;
  out.reserve(layers.size());
  for (const auto& layer : layers) {
    out.push_back({Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()),
                   Eigen::VectorXd::Zero(layer.bias.size())});
  }
  return out;
}

double squared_norm(const std::vector<DenseLayer>& g) {
  double s = 0.0;
  for (const auto& layer : g) s += layer.weights.squaredNorm() + layer.bias.squaredNorm();
  return s;
}

}  // namespace

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

std::string_view to_string(OptimizerKind kind) {
  return kind == OptimizerKind::kSgd ? "sgd" : "adam";
}

Optimizer::Optimizer(OptimizerConfig config, const Mlp& net)
    : config_(config), first_(zeros_like(net.layers())), second_(zeros_like(net.layers())) {}

void Optimizer::apply(Mlp& net, std::vector<DenseLayer> gradient, double learning_rate) {
  auto& layers = net.mutable_layers();
  if (gradient.size() != layers.size() || first_.size() != layers.size()) {
    throw std::invalid_argument("optimizer state does not match network shape");
  }
  if (config_.max_grad_norm > 0.0) {
    const double norm = std::sqrt(squared_norm(gradient));
    if (norm > config_.max_grad_norm) {
      const double scale = config_.max_grad_norm / norm;
      for (auto& g : gradient) {
        g.weights *= scale;
        g.bias *= scale;
      }
    }
  }
  ++step_;

  if (config_.kind == OptimizerKind::kSgd) {
    for (std::size_t l = 0; l < layers.size(); ++l) {
      if (config_.momentum > 0.0) {
        first_[l].weights = config_.momentum * first_[l].weights + gradient[l].weights;
        first_[l].bias = config_.momentum * first_[l].bias + gradient[l].bias;
        layers[l].weights -= learning_rate * first_[l].weights;
        layers[l].bias -= learning_rate * first_[l].bias;
      } else {
        layers[l].weights -= learning_rate * gradient[l].weights;
        layers[l].bias -= learning_rate * gradient[l].bias;
      }
    }
    return;
  }

  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(step_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(step_));
  const double step_size = learning_rate * std::sqrt(c2) / c1;
  const double eps = config_.epsilon * std::sqrt(c2);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    first_[l].weights = b1 * first_[l].weights + (1.0 - b1) * gradient[l].weights;
    first_[l].bias = b1 * first_[l].bias + (1.0 - b1) * gradient[l].bias;
    second_[l].weights =
        b2 * second_[l].weights + (1.0 - b2) * gradient[l].weights.cwiseAbs2();
    second_[l].bias = b2 * second_[l].bias + (1.0 - b2) * gradient[l].bias.cwiseAbs2();
    layers[l].weights.array() -=
        step_size * first_[l].weights.array() / (second_[l].weights.array().sqrt() + eps);
    layers[l].bias.array() -=
        step_size * first_[l].bias.array() / (second_[l].bias.array().sqrt() + eps);
  }
}

double grad_step(Mlp& net, Optimizer& optimizer, const Eigen::MatrixXd& states,
                 std::span<const int> actions, std::span<const double> targets,
                 double learning_rate) {
  std::vector<DenseLayer> gradient;
  const double loss = net.loss_and_gradient(states, actions, targets, &gradient);
  if (!std::isfinite(loss)) throw NonFiniteError("training loss is not finite");
  if (learning_rate != 0.0) optimizer.apply(net, std::move(gradient), learning_rate);
  return loss;
}

}  // namespace dqnlab::approx
