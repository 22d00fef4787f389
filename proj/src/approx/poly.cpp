#include "dqnlab/approx/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace dqnlab::approx {

PolyApproximator::PolyApproximator(std::vector<double> coefficients, double lo, double hi)
    : coefficients_(std::move(coefficients)), lo_(lo), hi_(hi) {
  if (coefficients_.empty()) coefficients_.push_back(0.0);
  if (lo_ > hi_) throw std::invalid_argument("polynomial domain is empty");
}

double PolyApproximator::operator()(double x) const {
  double y = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) y = y * x + *it;
  return y;
}

PolyApproximator poly_fit(std::span<const Sample> samples, int degree) {
  if (degree < 0) throw PolyFitError("polynomial degree must be non-negative");
  if (samples.empty()) throw PolyFitError("poly_fit needs at least one sample");

  std::vector<double> states;
  states.reserve(samples.size());
  for (const auto& s : samples) {
    if (!std::isfinite(s.state) || !std::isfinite(s.value)) {
      throw PolyFitError("poly_fit received a non-finite sample");
    }
    states.push_back(s.state);
  }
  std::vector<double> sorted = states;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PolyFitError("poly_fit sample states must be distinct");
  }

  const auto n = static_cast<Eigen::Index>(samples.size());
  const Eigen::Index cols = std::min<Eigen::Index>(degree + 1, n);
  Eigen::MatrixXd vander(n, cols);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (Eigen::Index k = 0; k < cols; ++k) {
      vander(i, k) = p;
      p *= samples[i].state;
    }
    rhs(i) = samples[i].value;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
  // Eigen's default cutoff (size * eps) accepts states a few ulps apart; the
  // theory fits sit near 1e-8, well clear of this.
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) {
    throw PolyFitError("Vandermonde system is rank deficient (rank " + std::to_string(qr.rank()) +
                       " of " + std::to_string(cols) + ")");
  }
  const Eigen::VectorXd solved = qr.solve(rhs);
  if (!solved.allFinite()) throw PolyFitError("poly_fit produced non-finite coefficients");

  std::vector<double> coefficients(static_cast<std::size_t>(degree) + 1, 0.0);
  for (Eigen::Index k = 0; k < cols; ++k) coefficients[k] = solved(k);
  return PolyApproximator(std::move(coefficients), sorted.front(), sorted.back());
}

}  // namespace dqnlab::approx
