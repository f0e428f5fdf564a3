"""Brute-force reference: explicit generator matrix plus fixed-step RK4.

Nothing here evaluates the closed-form amplitudes.  The generator is built
element by element over the joint basis ``|atom, n>`` (flat index
``2n`` for ``+`` and ``2n + 1`` for ``-``) and the Schroedinger equation
``i d psi/dT = H psi`` is integrated with the classical fourth-order
Runge-Kutta step.

For a linear, time-independent generator one RK4 step is the fixed matrix
``R = 1 + z + z^2/2 + z^3/6 + z^4/24`` with ``z = -i dt H``.  ``integrate``
applies ``R`` N times by binary powering, which yields the same iterate as
N explicit steps at ``O(log N)`` matrix products; ``method="step"`` runs the
literal loop.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import Approach, JointState, ModelConfig
from .errors import ConfigError, StepSizeError
from .states import AtomState, FieldState

__all__ = [
    "NORM_DRIFT_BUDGET",
    "HamiltonianMatrix",
    "flat_index",
    "build_generator",
    "initial_state",
    "default_dt",
    "rk4_step",
    "integrate",
    "max_deviation",
]

NORM_DRIFT_BUDGET = 1e-8


def flat_index(atom: str, n: int) -> int:
    if atom not in ("+", "-"):
        raise ConfigError(f"atom label must be '+' or '-', got {atom!r}")
    return 2 * n + (0 if atom == "+" else 1)


def _rising(n: int, m: int) -> float:
    out = 1.0
    for j in range(1, m + 1):
        out *= n + j
    return out


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Real symmetric generator of the scaled-time evolution."""

    matrix: np.ndarray
    n_max: int
    config: ModelConfig

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_generator(config: ModelConfig, n_max: int) -> HamiltonianMatrix:
    """Generator over ``n = 0..n_max`` for both atomic levels.

    Off-diagonal ``<+, n|H|-, n+m> = sqrt((n+1)...(n+m))``; under MEHA the
    Stark term adds ``-n beta1 / lambda`` on ``|+, n>`` and
    ``-n beta2 / lambda`` on ``|-, n>``.
    """
    m = config.m
    if n_max < m:
        raise ConfigError(f"n_max={n_max} cannot hold an m={m} transition")
    dim = 2 * (n_max + 1)
    mat = np.zeros((dim, dim))
    for n in range(n_max - m + 1):
        i, j = flat_index("+", n), flat_index("-", n + m)
        mat[i, j] = mat[j, i] = math.sqrt(_rising(n, m))
    if config.approach is Approach.MEHA:
        for n in range(n_max + 1):
            mat[flat_index("+", n), flat_index("+", n)] = -n * config.beta1 / config.lam
            mat[flat_index("-", n), flat_index("-", n)] = -n * config.beta2 / config.lam
    return HamiltonianMatrix(mat, n_max, config)


def initial_state(field: FieldState, atom: AtomState, config: ModelConfig) -> JointState:
    """Product state ``|field> (x) |atom>`` laid out as a :class:`JointState`."""
    c = field.amplitudes
    m = config.m
    size = c.size
    plus = atom.excited_amplitude * c
    minus = np.zeros(size + m, dtype=complex)
    minus[:size] = atom.ground_amplitude * c
    return JointState(plus, minus[m:], minus[:m], 0.0, config)


def _to_flat(state: JointState, n_max: int) -> np.ndarray:
    m = state.config.m
    size = state.g1.size
    if n_max < size - 1 + m:
        raise ConfigError(
            f"generator cutoff {n_max} is below the state's reach {size - 1 + m}"
        )
    psi = np.zeros(2 * (n_max + 1), dtype=complex)
    psi[0 : 2 * size : 2] = state.g1
    minus = np.concatenate([state.dark, state.g2])
    psi[1 : 2 * minus.size : 2] = minus
    return psi


def _from_flat(psi: np.ndarray, template: JointState, T: float) -> JointState:
    m = template.config.m
    size = template.g1.size
    plus = psi[0::2]
    minus = psi[1::2]
    return JointState(plus[:size], minus[m : m + size], minus[:m], T, template.config)


def default_dt(H: HamiltonianMatrix) -> float:
    """``0.01`` divided by the largest generator frequency (Gershgorin bound)."""
    bound = float(np.max(np.sum(np.abs(H.matrix), axis=1)))
    bound = max(bound, math.sqrt(_rising(H.n_max, H.config.m)), 1.0)
    return 0.01 / bound


def rk4_step(H: HamiltonianMatrix, psi: np.ndarray, dt: float) -> np.ndarray:
    """One classical Runge-Kutta step of ``d psi/dT = -i H psi``."""

    def f(y):
        return -1j * (H.matrix @ y)

    k1 = f(psi)
    k2 = f(psi + 0.5 * dt * k1)
    k3 = f(psi + 0.5 * dt * k2)
    k4 = f(psi + dt * k3)
    return psi + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def _step_matrix(H: HamiltonianMatrix, dt: float) -> np.ndarray:
    z = -1j * dt * H.matrix
    eye = np.eye(H.dim, dtype=complex)
    # Horner form of 1 + z + z^2/2 + z^3/6 + z^4/24
    r = eye + z / 4.0
    r = eye + (z @ r) / 3.0
    r = eye + (z @ r) / 2.0
    return eye + z @ r


def integrate(
    H: HamiltonianMatrix,
    initial: JointState,
    T: float,
    dt: float | None = None,
    *,
    method: str = "power",
    budget: float = NORM_DRIFT_BUDGET,
) -> JointState:
    """Integrate ``initial`` from its time to ``initial.time + T``.

    The step is ``T / ceil(T / dt)`` so that the final time is hit exactly.
    Raises :class:`StepSizeError` when the norm drifts by more than
    ``budget``.
    """
    if not math.isfinite(T) or T < 0:
        raise ConfigError(f"integration span must be finite and >= 0, got {T!r}")
    if dt is None:
        dt = default_dt(H)
    if not dt > 0:
        raise ConfigError(f"dt must be positive, got {dt!r}")
    psi = _to_flat(initial, H.n_max)
    norm0 = float(np.vdot(psi, psi).real)
    steps = math.ceil(T / dt) if T > 0 else 0
    if steps:
        h = T / steps
        if method == "step":
            for _ in range(steps):
                psi = rk4_step(H, psi, h)
        elif method == "power":
            power = _step_matrix(H, h)
            k = steps
            while True:
                if k & 1:
                    psi = power @ psi
                k >>= 1
                if not k:
                    break
                power = power @ power
        else:
            raise ConfigError(f"unknown integration method {method!r}")
    norm = float(np.vdot(psi, psi).real)
    if not math.isfinite(norm) or abs(norm - norm0) > budget:
        raise StepSizeError(
            f"norm drift {abs(norm - norm0):.3e} exceeds budget {budget:g} "
            f"(dt={dt:g}, {steps} steps)"
        )
    return _from_flat(psi, initial, initial.time + T)


def max_deviation(a: JointState, b: JointState) -> float:
    """Largest componentwise modulus difference over g1, g2 and dark."""
    if a.g1.shape != b.g1.shape or a.g2.shape != b.g2.shape or a.dark.shape != b.dark.shape:
        raise ConfigError("joint states live on different truncations")
    return float(
        max(
            np.max(np.abs(a.g1 - b.g1), initial=0.0),
            np.max(np.abs(a.g2 - b.g2), initial=0.0),
            np.max(np.abs(a.dark - b.dark), initial=0.0),
        )
    )
