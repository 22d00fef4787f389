#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dqnlab::approx {

class PolyFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Power-basis polynomial sum_k c_k x^k restricted to a closed interval.
class PolyApproximator {
 public:
  PolyApproximator() = default;
  PolyApproximator(std::vector<double> coefficients, double lo, double hi);

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }

  double operator()(double x) const;

 private:
  std::vector<double> coefficients_{0.0};
  double lo_ = 0.0;
  double hi_ = 0.0;
};

struct Sample {
  double state;
  double value;
};

/// Least-squares degree-d fit of the Vandermonde system via column-pivoted
/// Householder QR. With n <= d+1 distinct states the unique degree n-1
/// interpolant is returned, padded with zero coefficients up to degree d.
///
/// Throws PolyFitError for an empty sample list, repeated states, non-finite
/// data, or a numerically rank-deficient system.
PolyApproximator poly_fit(std::span<const Sample> samples, int degree);

}  // namespace dqnlab::approx
