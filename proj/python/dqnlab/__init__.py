"""Python access to the dqnlab C++ core."""

from ._dqnlab import (
    ConfigError,
    Mlp,
    PolyFitError,
    Transition,
    cartpole_step,
    ddqn_target,
    double_estimate_target,
    dqn_target,
    greedy_index,
    overestimation_q_star,
    poly_fit,
    render_defaults,
    stability_score,
    tdqn_target,
    theory_report,
    theory_settings,
    toy_bias,
    train_run,
)

__all__ = [
    "ConfigError",
    "Mlp",
    "PolyFitError",
    "Transition",
    "cartpole_step",
    "ddqn_target",
    "double_estimate_target",
    "dqn_target",
    "greedy_index",
    "overestimation_q_star",
    "poly_fit",
    "render_defaults",
    "stability_score",
    "tdqn_target",
    "theory_report",
    "theory_settings",
    "toy_bias",
    "train_run",
]
