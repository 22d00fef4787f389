#include "dqnlab/theory/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqnlab::theory {

double TrueValueFn::operator()(double s) const {
  return kind == TrueFnKind::kSin ? std::sin(s) : 2.0 * std::exp(-s * s);
}

std::string_view TrueValueFn::name() const { return kind == TrueFnKind::kSin ? "sin" : "gauss"; }

namespace {

// Lexicographic two-element subsets of {-5, -4, -3, -2, -1}.
std::vector<std::pair<int, int>> left_pairs() {
  std::vector<std::pair<int, int>> out;
  for (int a = -5; a <= -1; ++a)
    for (int b = a + 1; b <= -1; ++b) out.emplace_back(a, b);
  return out;
}

}  // namespace

SampleSets build_sample_sets(int rotation) {
  const auto pairs = left_pairs();
  SampleSets sets;
  for (int i = 0; i < kActionCount; ++i) {
    const auto [l1, l2] = pairs[static_cast<std::size_t>(((i + rotation) % 10 + 10) % 10)];
    const int r = 1 + i % 5;
    std::vector<double> states;
    for (int s = -6; s <= 6; ++s) {
      if (s != l1 && s != l2 && s != r) states.push_back(s);
    }
    sets.push_back(std::move(states));
  }
  return sets;
}

std::string sample_rule_description() {
  return "action i uses integers -6..6 minus the ((i+rotation) mod 10)-th lexicographic pair "
         "from {-5..-1} and minus 1+(i mod 5); evaluator rotation 0, selector rotation 1; "
         "variant k moves the selector state nearest -3 right by (variants-1-k)*variant_step";
}

std::vector<SampleSets> selector_variants(const SampleSets& selector, int count, double step,
                                          double anchor) {
  if (count < 1) throw std::invalid_argument("need at least one variant");
  std::vector<SampleSets> out;
  for (int k = 0; k < count; ++k) {
    const double shift = (count - 1 - k) * step;
    SampleSets v = selector;
    for (auto& states : v) {
      if (states.empty()) continue;
      std::size_t idx = 0;
      for (std::size_t j = 1; j < states.size(); ++j) {
        if (std::abs(states[j] - anchor) < std::abs(states[idx] - anchor)) idx = j;
      }
      states[idx] += shift;
      std::sort(states.begin(), states.end());
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<double> evaluation_grid(int points, double lo, double hi) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  return g;
}

std::string ExperimentSetting::label() const {
  return std::string(truth.name()) + "_d" + std::to_string(degree);
}

std::vector<ExperimentSetting> canonical_settings(int grid_points) {
  const auto grid = evaluation_grid(grid_points);
  const auto evaluator = build_sample_sets(0);
  const auto selector = build_sample_sets(1);
  std::vector<ExperimentSetting> out;
  for (auto [kind, degree] : {std::pair{TrueFnKind::kSin, 6}, std::pair{TrueFnKind::kGauss, 6},
                              std::pair{TrueFnKind::kGauss, 9}}) {
    out.push_back({TrueValueFn{kind}, degree, grid, evaluator, selector});
  }
  return out;
}

Eigen::MatrixXd PolyEnsemble::on_grid(const std::vector<double>& grid) const {
  Eigen::MatrixXd m(size(), static_cast<Eigen::Index>(grid.size()));
  for (int a = 0; a < size(); ++a)
    for (std::size_t g = 0; g < grid.size(); ++g) m(a, static_cast<Eigen::Index>(g)) = members[a](grid[g]);
  return m;
}

double max_estimate(const PolyEnsemble& ens, double s) {
  if (ens.members.empty()) throw std::invalid_argument("empty ensemble");
  double best = ens.members.front()(s);
  for (const auto& p : ens.members) best = std::max(best, p(s));
  return best;
}

double double_q_estimate(const PolyEnsemble& selector, const PolyEnsemble& evaluator, double s) {
  if (selector.size() != evaluator.size() || selector.members.empty()) {
    throw std::invalid_argument("selector and evaluator must have the same non-zero size");
  }
  int best = 0;
  double best_value = selector.members[0](s);
  for (int a = 1; a < selector.size(); ++a) {
    const double v = selector.members[a](s);
    if (v > best_value) {
      best_value = v;
      best = a;
    }
  }
  return evaluator.members[best](s);
}

Eigen::VectorXd max_curve(const Eigen::MatrixXd& members) {
  return members.colwise().maxCoeff().transpose();
}

Eigen::VectorXd double_curve(const Eigen::MatrixXd& selector, const Eigen::MatrixXd& evaluator) {
  if (selector.rows() != evaluator.rows() || selector.cols() != evaluator.cols()) {
    throw std::invalid_argument("selector and evaluator grids differ in shape");
  }
  Eigen::VectorXd out(selector.cols());
  for (Eigen::Index g = 0; g < selector.cols(); ++g) {
    Eigen::Index best = 0;
    for (Eigen::Index a = 1; a < selector.rows(); ++a) {
      if (selector(a, g) > selector(best, g)) best = a;
    }
    out[g] = evaluator(best, g);
  }
  return out;
}

MovingTargetResult moving_target_grid(const ExperimentSetting& setting, int i_ref, int variants,
                                      double step) {
  if (i_ref < 0 || i_ref >= variants) throw std::invalid_argument("reference index out of range");
  const auto evaluator = fit_ensemble(setting.evaluator_sets, setting.truth, setting.degree)
                             .on_grid(setting.grid);
  MovingTargetResult out;
  for (const auto& sets : selector_variants(setting.selector_sets, variants, step)) {
    const auto sel = fit_ensemble(sets, setting.truth, setting.degree).on_grid(setting.grid);
    out.curves.push_back(double_curve(sel, evaluator));
  }
  out.pairwise = Eigen::MatrixXd::Zero(variants, variants);
  for (int i = 0; i < variants; ++i)
    for (int j = i + 1; j < variants; ++j) {
      const double e = (out.curves[i] - out.curves[j]).squaredNorm();
      out.pairwise(i, j) = e;
      out.pairwise(j, i) = e;
    }
  out.reference_index = i_ref;
  double ref = 0.0;
  for (std::size_t g = 0; g < setting.grid.size(); ++g) {
    const double e = out.curves[i_ref][static_cast<Eigen::Index>(g)] - setting.truth(setting.grid[g]);
    ref += e * e;
  }
  out.reference_error = ref;
  return out;
}

SettingReport run_setting(const ExperimentSetting& setting, int i_ref, int variants, double step) {
  SettingReport r;
  r.setting = setting;
  const auto n = static_cast<Eigen::Index>(setting.grid.size());
  r.truth.resize(n);
  for (Eigen::Index g = 0; g < n; ++g) r.truth[g] = setting.truth(setting.grid[g]);

  r.estimates = fit_ensemble(setting.evaluator_sets, setting.truth, setting.degree).on_grid(setting.grid);
  const auto selector =
      fit_ensemble(setting.selector_sets, setting.truth, setting.degree).on_grid(setting.grid);
  r.max_estimate = max_curve(r.estimates);
  r.double_estimate = double_curve(selector, r.estimates);

  const Eigen::VectorXd max_err = r.max_estimate - r.truth;
  const Eigen::VectorXd dbl_err = r.double_estimate - r.truth;
  r.positive_fraction = static_cast<double>((max_err.array() > 0.0).count()) / static_cast<double>(n);
  r.max_mean_bias = max_err.mean();
  r.double_mean_bias = dbl_err.mean();
  r.max_sse = max_err.squaredNorm();
  r.double_sse = dbl_err.squaredNorm();
  r.moving_target = moving_target_grid(setting, i_ref, variants, step);
  return r;
}

namespace {

std::vector<double> upper_triangle(const Eigen::MatrixXd& m) {
  std::vector<double> off;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) off.push_back(m(i, j));
  std::sort(off.begin(), off.end());
  return off;
}

}  // namespace

double max_off_diagonal(const Eigen::MatrixXd& m) {
  const auto off = upper_triangle(m);
  return off.empty() ? 0.0 : off.back();
}

double median_off_diagonal(const Eigen::MatrixXd& m) {
  const auto off = upper_triangle(m);
  if (off.empty()) return 0.0;
  const auto n = off.size();
  return n % 2 ? off[n / 2] : 0.5 * (off[n / 2 - 1] + off[n / 2]);
}

}  // namespace dqnlab::theory
