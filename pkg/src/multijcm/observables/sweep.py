"""Observable registry and uniform time sweeps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..dynamics import JointState, ModelConfig, evolve
from ..errors import ConfigError, NormDriftError
from ..states import AtomState, FieldState
from .moments import (
    atomic_inversion,
    moment,
    normal_fluctuations,
    quadrature_variances,
    rescaled_q1,
    rescaled_q2,
    squared_fluctuations,
)

__all__ = ["OBSERVABLES", "NORM_BUDGET", "TimeSeries", "sweep", "time_grid"]

NORM_BUDGET = 1e-10


def _uncertainty(joint: JointState) -> float:
    vx, vy = quadrature_variances(joint, 1)
    return vx * vy


# name -> f(joint); None marks the rescaled factors, which evolve their own
# three-photon state from the initial field and atom
OBSERVABLES: dict[str, Callable[[JointState], float] | None] = {
    "inversion": atomic_inversion,
    "mean_photon": lambda j: moment(j, 1, 1).real,
    "F1": lambda j: normal_fluctuations(j).f,
    "S1": lambda j: normal_fluctuations(j).s,
    "F2": lambda j: squared_fluctuations(j).f,
    "S2": lambda j: squared_fluctuations(j).s,
    "Q1": None,
    "Q2": None,
    "Re_a": lambda j: moment(j, 1, 0).real,
    "Im_a": lambda j: moment(j, 1, 0).imag,
    "Re_a2": lambda j: moment(j, 2, 0).real,
    "Im_a2": lambda j: moment(j, 2, 0).imag,
    "uncertainty_product": _uncertainty,
}


@dataclass(frozen=True)
class TimeSeries:
    t_grid: np.ndarray
    columns: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        t = np.asarray(self.t_grid, dtype=float)
        if t.ndim != 1 or t.size < 2 or np.any(np.diff(t) <= 0):
            raise ConfigError("t_grid must be strictly increasing with at least 2 points")
        for name, col in self.columns.items():
            if np.shape(col) != t.shape:
                raise ConfigError(f"column {name!r} does not match the grid length")
        object.__setattr__(self, "t_grid", t)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]


def time_grid(t_max: float, steps: int) -> np.ndarray:
    if int(steps) != steps or steps < 2:
        raise ConfigError(f"steps must be an integer >= 2, got {steps!r}")
    if not (np.isfinite(t_max) and t_max > 0):
        raise ConfigError(f"t_max must be positive for an increasing grid, got {t_max!r}")
    return np.linspace(0.0, float(t_max), int(steps))


def _check_names(names) -> list[str]:
    names = list(names)
    if not names:
        raise ConfigError("no observables requested")
    unknown = [n for n in names if n not in OBSERVABLES]
    if unknown:
        raise ConfigError(
            f"unknown observable(s) {', '.join(map(repr, unknown))}; "
            f"choose from {', '.join(OBSERVABLES)}"
        )
    return names


def sweep(
    field_state: FieldState,
    atom: AtomState,
    config: ModelConfig,
    t_max: float,
    steps: int,
    observables,
) -> TimeSeries:
    """Evaluate the named observables on ``linspace(0, t_max, steps)``."""
    names = _check_names(observables)
    t = time_grid(t_max, steps)
    columns = {name: np.empty(t.size) for name in names}
    needs_joint = any(OBSERVABLES[n] is not None for n in names)
    for i, T in enumerate(t):
        if needs_joint:
            joint = evolve(field_state, atom, config, T)
            drift = abs(joint.norm() - 1.0)
            if drift > NORM_BUDGET:
                raise NormDriftError(f"norm drift {drift:.3e} at T={T!r}")
        for name in names:
            fn = OBSERVABLES[name]
            if name == "Q1":
                columns[name][i] = rescaled_q1(field_state, atom, T)
            elif name == "Q2":
                columns[name][i] = rescaled_q2(field_state, atom, T)
            else:
                columns[name][i] = fn(joint)
    metadata = {
        "state": field_state.label,
        "n_max": field_state.n_max,
        "theta": atom.theta,
        "phi": atom.phi,
        "m": config.m,
        "approach": config.approach.value,
        "beta1": config.beta1,
        "beta2": config.beta2,
        "lambda": config.lam,
        "t_max": float(t_max),
        "steps": int(steps),
    }
    return TimeSeries(t, columns, metadata)
