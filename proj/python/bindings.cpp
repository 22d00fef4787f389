#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dqnlab/agents/targets.hpp"
#include "dqnlab/agents/toy_bias.hpp"
#include "dqnlab/agents/trainer.hpp"
#include "dqnlab/approx/poly.hpp"
#include "dqnlab/cli/config.hpp"
#include "dqnlab/cli/outputs.hpp"
#include "dqnlab/cli/suite.hpp"
#include "dqnlab/env/cartpole.hpp"
#include "dqnlab/env/toy_mdp.hpp"
#include "dqnlab/theory/theory.hpp"

namespace py = pybind11;
using namespace dqnlab;

namespace {

cli::RunConfig make_run(const std::string& algorithm, const std::string& env_name, std::uint64_t seed,
                        const py::dict& overrides) {
  cli::RunConfig run = cli::default_run_config();
  run.env = env_name;
  for (const auto& [k, v] : overrides) {
    cli::apply_run_key(run, py::str(k).cast<std::string>(), py::str(v).cast<std::string>());
  }
  run.spec.algorithm = agents::parse_algorithm(algorithm);
  run.spec.seed = seed;
  run.spec.validate();
  return run;
}

py::dict episode_dict(const agents::EpisodeStats& e) {
  py::dict d;
  d["episode"] = e.episode;
  d["return"] = e.episode_return;
  d["moving_average"] = e.moving_average;
  d["mean_loss"] = e.mean_loss;
  d["updates"] = e.updates;
  d["steps"] = e.steps;
  d["epsilon"] = e.epsilon;
  d["primary_sync"] = e.primary_sync;
  d["secondary_sync"] = e.secondary_sync;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dqnlab, m) {
  m.doc() = "Bindings for the dqnlab core library";

  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<approx::PolyFitError>(m, "PolyFitError", PyExc_ValueError);

  py::class_<approx::Mlp>(m, "Mlp")
      .def(py::init<std::vector<int>, std::uint64_t, bool>(), py::arg("layer_dims"), py::arg("seed"),
           py::arg("use_bias") = true)
      .def_property_readonly("layer_dims", &approx::Mlp::layer_dims)
      .def("forward", [](const approx::Mlp& net, const std::vector<double>& s) { return net.forward(s); })
      .def("parameters", &approx::Mlp::parameters)
      .def("set_parameters",
           [](approx::Mlp& net, const std::vector<double>& p) { net.set_parameters(p); });

  py::class_<env::Transition>(m, "Transition")
      .def(py::init([](std::vector<double> state, int action, double reward, std::vector<double> next_state,
                       bool terminal, int next_action_count) {
             return env::Transition{std::move(state), action, reward, std::move(next_state), terminal,
                                    next_action_count};
           }),
           py::arg("state"), py::arg("action"), py::arg("reward"), py::arg("next_state"),
           py::arg("terminal") = false, py::arg("next_action_count") = 0)
      .def_readwrite("state", &env::Transition::state)
      .def_readwrite("action", &env::Transition::action)
      .def_readwrite("reward", &env::Transition::reward)
      .def_readwrite("next_state", &env::Transition::next_state)
      .def_readwrite("terminal", &env::Transition::terminal)
      .def_readwrite("next_action_count", &env::Transition::next_action_count);

  m.def("greedy_index", [](const Eigen::VectorXd& q, int valid) { return agents::greedy_index(q, valid); },
        py::arg("q"), py::arg("valid") = 0);
  m.def("double_estimate_target", &agents::double_estimate_target, py::arg("transition"),
        py::arg("selector"), py::arg("evaluator"), py::arg("gamma"));
  m.def("dqn_target", &agents::dqn_target, py::arg("transition"), py::arg("net"), py::arg("gamma"));
  m.def("ddqn_target", &agents::ddqn_target, py::arg("transition"), py::arg("online"),
        py::arg("target"), py::arg("gamma"));
  m.def("tdqn_target", &agents::tdqn_target, py::arg("transition"), py::arg("primary"),
        py::arg("secondary"), py::arg("gamma"));

  m.def(
      "poly_fit",
      [](const std::vector<double>& states, const std::vector<double>& values, int degree) {
        if (states.size() != values.size()) throw std::invalid_argument("states and values differ in length");
        std::vector<approx::Sample> samples;
        for (std::size_t i = 0; i < states.size(); ++i) samples.push_back({states[i], values[i]});
        return approx::poly_fit(samples, degree).coefficients();
      },
      py::arg("states"), py::arg("values"), py::arg("degree"),
      "Least-squares power-basis coefficients, lowest order first.");

  m.def(
      "cartpole_step",
      [](const std::array<double, 4>& s, int action) {
        if (action != 0 && action != 1) throw std::invalid_argument("action must be 0 or 1");
        const auto r = env::cartpole_step({s[0], s[1], s[2], s[3]}, static_cast<env::CartPoleAction>(action));
        return py::make_tuple(r.state.as_array(), r.reward, r.done);
      },
      py::arg("state"), py::arg("action"));

  m.def(
      "overestimation_q_star",
      [](double gamma, int branch_actions) {
        return env::value_iteration(env::overestimation_mdp(gamma, branch_actions), 1e-12);
      },
      py::arg("gamma") = 0.99, py::arg("branch_actions") = 10);

  m.def(
      "stability_score",
      [](const std::vector<double>& ma) { return cli::stability_score(ma); }, py::arg("moving_average"));

  m.def(
      "train_run",
      [](const std::string& algorithm, const std::string& env_name, long episodes, std::uint64_t seed,
         const py::dict& overrides) {
        const auto run = make_run(algorithm, env_name, seed, overrides);
        auto environment = cli::make_environment(run, run.spec.gamma);
        agents::RunRecord record;
        {
          py::gil_scoped_release release;
          record = agents::train_run(run.spec, *environment, episodes);
        }
        py::dict out;
        py::list eps;
        for (const auto& e : record.episodes) eps.append(episode_dict(e));
        out["episodes"] = eps;
        out["diverged"] = record.diverged;
        out["diagnostic"] = record.diagnostic;
        out["sync_events"] = record.sync_events.size();
        return out;
      },
      py::arg("algorithm"), py::arg("env") = "cartpole", py::arg("episodes") = 100, py::arg("seed") = 0,
      py::arg("overrides") = py::dict(),
      "Train one learner; `overrides` maps config keys to values.");

  m.def(
      "toy_bias",
      [](const std::string& algorithm, std::uint64_t seed, long episodes) {
        agents::ToyBiasConfig cfg;
        cfg.episodes = episodes;
        const auto r = agents::measure_toy_bias(agents::parse_algorithm(algorithm), env::overestimation_mdp(),
                                                seed, cfg);
        return py::make_tuple(r.mean_bias, r.samples);
      },
      py::arg("algorithm"), py::arg("seed") = 0, py::arg("episodes") = 300);

  m.def(
      "theory_settings", [] {
        std::vector<std::string> labels;
        for (const auto& s : theory::canonical_settings()) labels.push_back(s.label());
        return labels;
      });

  m.def(
      "theory_report",
      [](const std::string& label, int grid_points) {
        for (const auto& s : theory::canonical_settings(grid_points)) {
          if (s.label() != label) continue;
          const auto r = theory::run_setting(s);
          py::dict d;
          d["grid"] = s.grid;
          d["truth"] = r.truth;
          d["estimates"] = r.estimates;
          d["max_estimate"] = r.max_estimate;
          d["double_estimate"] = r.double_estimate;
          d["positive_fraction"] = r.positive_fraction;
          d["max_sse"] = r.max_sse;
          d["double_sse"] = r.double_sse;
          d["pairwise"] = r.moving_target.pairwise;
          d["reference_error"] = r.moving_target.reference_error;
          return d;
        }
        throw std::invalid_argument("unknown setting '" + label + "'");
      },
      py::arg("label"), py::arg("grid_points") = theory::kGridPoints);

  m.def("render_defaults", &cli::render_defaults);
}
