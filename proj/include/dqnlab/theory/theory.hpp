#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dqnlab/approx/poly.hpp"

namespace dqnlab::theory {

inline constexpr int kActionCount = 10;
inline constexpr double kStateLo = -6.0;
inline constexpr double kStateHi = 6.0;
inline constexpr int kGridPoints = 1000;

enum class TrueFnKind { kSin, kGauss };

/// Same true value for every action: sin(s) or 2 exp(-s^2).
struct TrueValueFn {
  TrueFnKind kind = TrueFnKind::kSin;
  double operator()(double s) const;
  std::string_view name() const;
};

using SampleSets = std::vector<std::vector<double>>;  // one sorted state list per action

/// Integer states -6..6 with two left-half states and one right-half state
/// removed. The left pair for action i is the ((i + rotation) mod 10)-th
/// two-element subset of {-5..-1} in lexicographic order; the right removal
/// is 1 + (i mod 5). Rotation 0 gives the evaluator ensemble, rotation 1 the
/// selector ensemble.
SampleSets build_sample_sets(int rotation = 0);

/// Human-readable statement of the rule above, written into CSV metadata.
std::string sample_rule_description();

/// Moving-target selector variants. Variant k (k = 0..count-1) moves, in every
/// action's set, the state closest to `anchor` (ties to the left) right by
/// (count - 1 - k) * step. The last variant is the unperturbed input.
std::vector<SampleSets> selector_variants(const SampleSets& selector, int count = 6,
                                          double step = 0.55, double anchor = -3.0);

std::vector<double> evaluation_grid(int points = kGridPoints, double lo = kStateLo,
                                    double hi = kStateHi);

struct ExperimentSetting {
  TrueValueFn truth;
  int degree = 6;
  std::vector<double> grid;
  SampleSets evaluator_sets;
  SampleSets selector_sets;

  std::string label() const;  // e.g. "sin_d6"
};

/// (sin, 6), (gauss, 6), (gauss, 9) in that order.
std::vector<ExperimentSetting> canonical_settings(int grid_points = kGridPoints);

struct PolyEnsemble {
  std::vector<approx::PolyApproximator> members;

  int size() const { return static_cast<int>(members.size()); }
  /// size() x grid.size() matrix of member values.
  Eigen::MatrixXd on_grid(const std::vector<double>& grid) const;
};

template <class Fn>
PolyEnsemble fit_ensemble(const SampleSets& sets, const Fn& truth, int degree) {
  PolyEnsemble ens;
  for (const auto& states : sets) {
    std::vector<approx::Sample> samples;
    samples.reserve(states.size());
    for (double s : states) samples.push_back({s, truth(s)});
    ens.members.push_back(approx::poly_fit(samples, degree));
  }
  return ens;
}

double max_estimate(const PolyEnsemble& ens, double s);
/// Evaluator member at the selector's argmax (lowest index on ties).
double double_q_estimate(const PolyEnsemble& selector, const PolyEnsemble& evaluator, double s);

/// Grid-wise versions on pre-evaluated member matrices (actions x grid).
Eigen::VectorXd max_curve(const Eigen::MatrixXd& members);
Eigen::VectorXd double_curve(const Eigen::MatrixXd& selector, const Eigen::MatrixXd& evaluator);

template <class Est, class Truth>
double sse_vs_truth(const Est& estimate, const Truth& truth, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("sse_vs_truth needs a non-empty grid");
  double sse = 0.0;
  for (double s : grid) {
    const double e = estimate(s) - truth(s);
    sse += e * e;
  }
  return sse;
}

struct MovingTargetResult {
  Eigen::MatrixXd pairwise;   // symmetric, zero diagonal
  int reference_index = 0;
  double reference_error = 0.0;  // sum over grid of (MaxQ(i_ref) - truth)^2
  std::vector<Eigen::VectorXd> curves;  // MaxQ(k) per variant
};

/// MaxQ(k) is the double estimate with the fixed evaluator ensemble and the
/// selector refit on variant k; entries are grid sums of squared differences.
MovingTargetResult moving_target_grid(const ExperimentSetting& setting, int i_ref = 5,
                                      int variants = 6, double step = 0.55);

struct SettingReport {
  ExperimentSetting setting;
  Eigen::VectorXd truth;          // on grid
  Eigen::MatrixXd estimates;      // actions x grid
  Eigen::VectorXd max_estimate;   // on grid
  Eigen::VectorXd double_estimate;
  double positive_fraction = 0.0;  // share of grid where max_estimate > truth
  double max_mean_bias = 0.0;
  double double_mean_bias = 0.0;
  double max_sse = 0.0;
  double double_sse = 0.0;
  MovingTargetResult moving_target;
};

SettingReport run_setting(const ExperimentSetting& setting, int i_ref = 5, int variants = 6,
                          double step = 0.55);

/// Largest and median entry above the diagonal (0 for a 1x1 matrix).
double max_off_diagonal(const Eigen::MatrixXd& m);
double median_off_diagonal(const Eigen::MatrixXd& m);

}  // namespace dqnlab::theory
