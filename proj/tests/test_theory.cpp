#include <doctest.h>

#include <cmath>
#include <set>

#include "dqnlab/theory/theory.hpp"

using namespace dqnlab;
using namespace dqnlab::theory;

namespace {

double mean_gap(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double total = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) total += xs[i] - xs[i - 1];
  return total / static_cast<double>(xs.size() - 1);
}

approx::PolyApproximator constant(double c) { return approx::PolyApproximator({c}, -6, 6); }

}  // namespace

TEST_SUITE("theory") {

TEST_CASE("true value functions") {
  CHECK(TrueValueFn{TrueFnKind::kSin}(1.0) == std::sin(1.0));
  CHECK(TrueValueFn{TrueFnKind::kGauss}(0.0) == 2.0);
  CHECK(TrueValueFn{TrueFnKind::kGauss}(1.5) == doctest::Approx(2 * std::exp(-2.25)));
}

TEST_CASE("sample sets: in domain, distinct per action, endpoints kept") {
  for (int rotation : {0, 1}) {
    const auto sets = build_sample_sets(rotation);
    REQUIRE(sets.size() == 10);
    std::set<std::vector<double>> unique(sets.begin(), sets.end());
    CHECK(unique.size() == 10);
    for (const auto& s : sets) {
      CHECK(s.size() == 10);
      CHECK(s.front() == -6.0);
      CHECK(s.back() == 6.0);
      CHECK(std::is_sorted(s.begin(), s.end()));
      CHECK(std::find(s.begin(), s.end(), 0.0) != s.end());
    }
  }
  CHECK(build_sample_sets(0) != build_sample_sets(1));
}

TEST_CASE("sample sets are sparser on the left") {
  for (const auto& s : build_sample_sets(0)) {
    std::vector<double> left, right;
    for (double x : s) {
      if (x <= 0) left.push_back(x);
      if (x >= 0) right.push_back(x);
    }
    CHECK(mean_gap(left) > mean_gap(right));
  }
}

TEST_CASE("selector variants shift one state per action, no collisions") {
  const auto base = build_sample_sets(1);
  const auto variants = selector_variants(base);
  REQUIRE(variants.size() == 6);
  CHECK(variants.back() == base);
  for (std::size_t k = 0; k + 1 < variants.size(); ++k) {
    for (std::size_t a = 0; a < base.size(); ++a) {
      const auto& v = variants[k][a];
      CHECK(std::set<double>(v.begin(), v.end()).size() == v.size());
      int moved = 0;
      for (double x : v) moved += std::find(base[a].begin(), base[a].end(), x) == base[a].end();
      CHECK(moved == 1);
    }
  }
}

TEST_CASE("fit_ensemble: exact at samples for d = 9, inexact for sin d = 6") {
  const auto sets = build_sample_sets(0);
  const TrueValueFn sin_fn{TrueFnKind::kSin};
  const auto e9 = fit_ensemble(sets, sin_fn, 9);
  for (int a = 0; a < 10; ++a)
    for (double s : sets[a]) CHECK(std::abs(e9.members[a](s) - sin_fn(s)) <= 1e-8);
  const auto e6 = fit_ensemble(sets, sin_fn, 6);
  double worst = 0.0;
  for (int a = 0; a < 10; ++a)
    for (double s : sets[a]) worst = std::max(worst, std::abs(e6.members[a](s) - sin_fn(s)));
  CHECK(worst > 1e-3);
  const auto zero = fit_ensemble(sets, [](double) { return 0.0; }, 6);
  for (const auto& p : zero.members)
    for (double c : p.coefficients()) CHECK(c == 0.0);
}

TEST_CASE("max and double estimates") {
  PolyEnsemble same{std::vector<approx::PolyApproximator>(10, approx::PolyApproximator({0.5, 1.0}, -6, 6))};
  CHECK(max_estimate(same, 2.0) == 2.5);
  CHECK(double_q_estimate(same, same, 2.0) == max_estimate(same, 2.0));

  // Two actions: selector picks by enumeration, evaluator supplies the value.
  const PolyEnsemble sel{{approx::PolyApproximator({0.0, 1.0}, -6, 6), approx::PolyApproximator({1.0}, -6, 6)}};
  const PolyEnsemble ev{{constant(10.0), constant(-10.0)}};
  for (double s : {-3.0, 0.5, 1.0, 2.0}) {
    const int want = (sel.members[0](s) >= sel.members[1](s)) ? 0 : 1;
    CHECK(double_q_estimate(sel, ev, s) == ev.members[want](s));
  }
  CHECK(double_q_estimate(sel, ev, 1.0) == 10.0);  // tie -> lowest index
}

TEST_CASE("grid curves: max dominates every member; double equals max for self-selection") {
  const auto setting = canonical_settings()[0];
  const auto ens = fit_ensemble(setting.evaluator_sets, setting.truth, setting.degree);
  const auto m = ens.on_grid(setting.grid);
  const auto mx = max_curve(m);
  for (Eigen::Index g = 0; g < m.cols(); ++g) CHECK((m.col(g).array() <= mx[g]).all());
  CHECK(double_curve(m, m) == mx);
  CHECK(mx[17] == max_estimate(ens, setting.grid[17]));
}

TEST_CASE("sse_vs_truth algebra") {
  const auto grid = evaluation_grid(50);
  const TrueValueFn f{TrueFnKind::kGauss};
  CHECK(sse_vs_truth(f, f, grid) == 0.0);
  const double delta = 0.25;
  CHECK(sse_vs_truth([&](double s) { return f(s) + delta; }, f, grid) == doctest::Approx(50 * delta * delta));
  CHECK_THROWS_AS(sse_vs_truth(f, f, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("evaluation grid") {
  const auto g = evaluation_grid();
  REQUIRE(g.size() == 1000);
  CHECK(g.front() == -6.0);
  CHECK(g.back() == 6.0);
}

TEST_CASE("canonical settings are in table order") {
  const auto s = canonical_settings();
  REQUIRE(s.size() == 3);
  CHECK(s[0].label() == "sin_d6");
  CHECK(s[1].label() == "gauss_d6");
  CHECK(s[2].label() == "gauss_d9");
}

TEST_CASE("moving-target grid is symmetric with zero diagonal") {
  for (const auto& setting : canonical_settings()) {
    const auto r = moving_target_grid(setting);
    const auto& p = r.pairwise;
    CHECK(p.rows() == 6);
    for (Eigen::Index i = 0; i < 6; ++i) {
      CHECK(p(i, i) == 0.0);
      for (Eigen::Index j = 0; j < 6; ++j) CHECK(p(i, j) == p(j, i));
    }
    CHECK(r.reference_index == 5);
    CHECK(r.reference_error > 0.0);
  }
}

TEST_CASE("reference variant reproduces the base double estimate") {
  const auto setting = canonical_settings()[1];
  const auto report = run_setting(setting);
  CHECK(report.moving_target.curves[5] == report.double_estimate);
  CHECK(report.moving_target.reference_error == doctest::Approx(report.double_sse));
}

TEST_CASE("max estimate is biased upward on average in every setting") {
  for (const auto& setting : canonical_settings()) {
    const auto r = run_setting(setting);
    CHECK(r.max_mean_bias > 0.0);
    CHECK(std::abs(r.double_mean_bias) < std::abs(r.max_mean_bias));
  }
}

TEST_CASE("off-diagonal statistics") {
  Eigen::MatrixXd m(3, 3);
  m << 0, 1, 5, 1, 0, 2, 5, 2, 0;
  CHECK(max_off_diagonal(m) == 5.0);
  CHECK(median_off_diagonal(m) == 2.0);
  CHECK(max_off_diagonal(Eigen::MatrixXd::Zero(1, 1)) == 0.0);
}

}  // TEST_SUITE
