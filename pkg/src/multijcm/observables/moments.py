"""Field moments, atomic inversion and quadrature fluctuation factors."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..dynamics import JointState, ModelConfig, evolve_eha, h
from ..errors import ConfigError, HeadroomError
from ..states import AtomState, FieldState, mean_photon

__all__ = [
    "HEADROOM_BUDGET",
    "FluctuationPair",
    "moment",
    "atomic_inversion",
    "mean_photon_number",
    "normal_fluctuations",
    "squared_fluctuations",
    "quadrature_variances",
    "rescaled_q1",
    "rescaled_q2",
]

# probability allowed in the levels a shifted moment sum cannot see
HEADROOM_BUDGET = 1e-12
CUBIC = ModelConfig(m=3)


@dataclass(frozen=True)
class FluctuationPair:
    """X- and Y-quadrature fluctuation factors of the field (order 1)
    or of its square (order 2)."""

    f: float
    s: float
    order: int

    def __post_init__(self):
        if self.order not in (1, 2):
            raise ConfigError(f"order must be 1 or 2, got {self.order!r}")
        if not (math.isfinite(self.f) and math.isfinite(self.s)):
            raise ArithmeticError("fluctuation factors must be finite")
        # 2 Var - 1/2 with Var >= 0
        if self.order == 1 and min(self.f, self.s) < -0.5 - 1e-12:
            raise ArithmeticError(f"normal fluctuation factor below -1/2: {self!r}")


def _sector_moment(psi: np.ndarray, s1: int, s2: int) -> complex:
    """``sum_k conj(psi[k+s2]) psi[k+s1] sqrt(h(k, s1) h(k, s2))``."""
    shift = max(s1, s2)
    if shift >= psi.size:
        raise HeadroomError(f"a shift of {shift} needs more than {psi.size} Fock levels")
    if shift:
        top = float(np.vdot(psi[-shift:], psi[-shift:]).real)
        if top > HEADROOM_BUDGET:
            raise HeadroomError(
                f"{top:.3e} probability sits in the top {shift} Fock levels; raise n_max"
            )
    k = np.arange(psi.size - shift)
    weight = np.sqrt(h(k, s1) * h(k, s2))
    return complex(np.sum(np.conj(psi[k + s2]) * psi[k + s1] * weight))


def moment(joint: JointState, s1: int, s2: int) -> complex:
    """Normally ordered moment ``<a^+^s2 a^s1>`` of the joint state."""
    if s1 < 0 or s2 < 0:
        raise ConfigError("moment orders must be non-negative")
    return _sector_moment(joint.excited(), s1, s2) + _sector_moment(joint.ground(), s1, s2)


def atomic_inversion(joint: JointState) -> float:
    """``<sigma_z>`` with eigenvalues +1 on ``|+>`` and -1 on ``|->``."""
    return float(
        np.vdot(joint.g1, joint.g1).real
        - np.vdot(joint.g2, joint.g2).real
        - np.vdot(joint.dark, joint.dark).real
    )


def mean_photon_number(joint: JointState) -> float:
    return moment(joint, 1, 1).real


def normal_fluctuations(joint: JointState) -> FluctuationPair:
    n = moment(joint, 1, 1).real
    a = moment(joint, 1, 0)
    a2 = moment(joint, 2, 0)
    return FluctuationPair(n + a2.real - 2 * a.real**2, n - a2.real - 2 * a.imag**2, 1)


def squared_fluctuations(joint: JointState) -> FluctuationPair:
    n2 = moment(joint, 2, 2).real
    a2 = moment(joint, 2, 0)
    a4 = moment(joint, 4, 0)
    return FluctuationPair(n2 + a4.real - 2 * a2.real**2, n2 - a4.real - 2 * a2.imag**2, 2)


def quadrature_variances(joint: JointState, order: int = 1) -> tuple[float, float]:
    """Variances of ``X, Y`` (order 1) or ``X2, Y2`` (order 2).

    Order 1: ``X = (a + a^+)/2``.  Order 2: ``X2 = (a^2 + a^+2)/4``, using
    ``a^2 a^+2 = a^+2 a^2 + 4 a^+ a + 2``.
    """
    if order == 1:
        pair = normal_fluctuations(joint)
        return (pair.f + 0.5) / 2.0, (pair.s + 0.5) / 2.0
    if order == 2:
        pair = squared_fluctuations(joint)
        n = moment(joint, 1, 1).real
        return (pair.f + 2 * n + 1) / 8.0, (pair.s + 2 * n + 1) / 8.0
    raise ConfigError(f"order must be 1 or 2, got {order!r}")


def _initial_mean(field: FieldState) -> float:
    n0 = mean_photon(field)
    if n0 <= 0.0:
        raise ZeroDivisionError("rescaled factors need a field with <n(0)> > 0")
    return n0


def rescaled_q1(field: FieldState, atom: AtomState, T: float) -> float:
    """``(S1(2T/3) - <n(0)>) / <n(0)>`` for the three-photon model.

    Its collapses and revivals follow the one-photon inversion of the same
    initial field.
    """
    n0 = _initial_mean(field)
    s1 = normal_fluctuations(evolve_eha(field, atom, CUBIC, 2.0 * T / 3.0)).s
    return (s1 - n0) / n0


def rescaled_q2(field: FieldState, atom: AtomState, T: float) -> float:
    """``(S2(T/3) - <n(0)>^2) / <n(0)>^2`` for the three-photon model."""
    n0 = _initial_mean(field)
    s2 = squared_fluctuations(evolve_eha(field, atom, CUBIC, T / 3.0)).s
    return (s2 - n0 * n0) / (n0 * n0)
