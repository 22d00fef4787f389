import math

import numpy as np
import pytest

import dqnlab


def linear_q(values):
    net = dqnlab.Mlp([1, len(values)], 0, use_bias=False)
    net.set_parameters(list(values))
    return net


def test_targets_hand_example():
    t = dqnlab.Transition([1.0], 0, 1.0, [1.0])
    online = linear_q([1.0, 3.0, 2.0])
    target = linear_q([0.0, 0.5, 4.0])
    assert dqnlab.dqn_target(t, online, 0.5) == pytest.approx(2.5)
    assert dqnlab.ddqn_target(t, online, target, 0.5) == pytest.approx(1.25)
    terminal = dqnlab.Transition([1.0], 0, -2.0, [1.0], terminal=True)
    assert dqnlab.ddqn_target(terminal, online, target, 0.5) == -2.0


def test_greedy_index_ties_and_prefix():
    assert dqnlab.greedy_index(np.array([1.0, 3.0, 3.0])) == 1
    assert dqnlab.greedy_index(np.array([1.0, 0.0, 9.0]), valid=2) == 0


def test_poly_fit_matches_numpy():
    xs = np.linspace(-2, 2, 9)
    ys = np.cos(xs)
    ours = dqnlab.poly_fit(xs.tolist(), ys.tolist(), 4)
    ref = np.polynomial.polynomial.polyfit(xs, ys, 4)
    assert np.allclose(ours, ref, atol=1e-10)
    with pytest.raises(ValueError):
        dqnlab.poly_fit([1.0, 1.0], [0.0, 1.0], 1)


def test_cartpole_step_pushes_right():
    state, reward, done = dqnlab.cartpole_step([0.0, 0.0, 0.0, 0.0], 1)
    assert reward == 1.0 and not done
    assert state[1] > 0.0 and state[3] < 0.0


def test_overestimation_q_star():
    q = dqnlab.overestimation_q_star(0.99)
    assert q[0][1] == pytest.approx(0.0)
    assert q[0][0] == pytest.approx(-0.099)


def test_stability_score():
    assert dqnlab.stability_score([1.0, 2.0, 3.0]) == 0.0
    assert dqnlab.stability_score([100.0, 50.0]) == -0.5


def test_theory_report_shapes():
    assert dqnlab.theory_settings() == ["sin_d6", "gauss_d6", "gauss_d9"]
    r = dqnlab.theory_report("gauss_d6", grid_points=200)
    assert r["estimates"].shape == (10, 200)
    assert np.all(r["max_estimate"] >= r["estimates"].max(axis=0) - 1e-12)
    assert r["pairwise"].shape == (6, 6)
    with pytest.raises(ValueError):
        dqnlab.theory_report("nope")


def test_train_run_toy_is_deterministic():
    kw = dict(env="toy", episodes=30, seed=4, overrides={"min_replay": 8, "batch_size": 4})
    a = dqnlab.train_run("TDQN", **kw)
    b = dqnlab.train_run("TDQN", **kw)
    assert len(a["episodes"]) == 30
    assert a == b
    assert all(math.isfinite(e["return"]) for e in a["episodes"])


def test_bad_override_is_reported():
    with pytest.raises(ValueError, match="no_such_key"):
        dqnlab.train_run("DDQN", env="toy", episodes=1, overrides={"no_such_key": 1})


def test_toy_bias_runs():
    bias, samples = dqnlab.toy_bias("DQN", seed=0, episodes=50)
    assert samples > 0 and math.isfinite(bias)
