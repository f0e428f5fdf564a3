"""Analytic predictions and closed-form series used as cross-checks.

None of these functions drive the primary computation; they exist to be
compared against the moment engine in :mod:`.moments`.
"""
from __future__ import annotations

import math

import numpy as np

from ..dynamics import sqrt_h
from ..errors import ConfigError
from ..states import AtomState, FieldState, mean_photon, photon_distribution

__all__ = [
    "revival_time",
    "f_normal_exact",
    "f_asymptotic",
    "trapping_defect",
    "reference_a_a2_m1",
    "reference_a2_strong",
    "reference_inversion",
    "reference_inversion_m1",
    "reference_f2_threephoton",
    "reference_inversion_threephoton",
]


def revival_time(n_mean: float, spacing: int = 1) -> float:
    """Time at which neighbouring occupied terms rephase.

    Solves ``2 T (sqrt(n + spacing) - sqrt(n)) = 2 pi`` exactly; for large
    ``n`` this tends to ``(2 pi / spacing) sqrt(n)``.
    """
    if not n_mean > 0:
        raise ConfigError(f"n_mean must be positive, got {n_mean!r}")
    if spacing < 1:
        raise ConfigError(f"spacing must be a positive integer, got {spacing!r}")
    return math.pi * (math.sqrt(n_mean + spacing) + math.sqrt(n_mean)) / spacing


def f_normal_exact(n: int, m: int) -> float:
    """``(sqrt(h(n+2, m)) - sqrt(h(n, m))) / (2 sqrt(n+1))``.

    The difference is rewritten through
    ``h(n+2, m) / h(n, m) = (n+m+1)(n+m+2) / ((n+1)(n+2))`` so that no
    cancellation occurs for large ``n``.
    """
    if n < 0 or m < 1:
        raise ConfigError(f"need n >= 0 and m >= 1, got n={n!r}, m={m!r}")
    ratio_minus_one = m * (2.0 * n + m + 3.0) / ((n + 1.0) * (n + 2.0))
    diff = sqrt_h(n, m) * ratio_minus_one / (math.sqrt(1.0 + ratio_minus_one) + 1.0)
    return float(diff / (2.0 * math.sqrt(n + 1.0)))


def f_asymptotic(n: float, m: int, order: int = 1) -> float:
    """Strong-intensity proportionality factor between the m-photon moment
    phases and the one-photon inversion phases."""
    if not n > 0:
        raise ConfigError(f"n must be positive, got {n!r}")
    if order == 1:
        return 0.5 * m * n ** ((m - 3) / 2.0)
    if order == 2:
        return m * n ** ((m - 3) / 2.0)
    raise ConfigError(f"order must be 1 or 2, got {order!r}")


def trapping_defect(state: FieldState, m: int) -> float:
    """``sum_n |P(n) - P(n+m)|`` over n >= 0 (L1 mismatch of the pairs that
    an m-photon transition couples)."""
    if m < 1:
        raise ConfigError(f"m must be positive, got {m!r}")
    p = photon_distribution(state)
    padded = np.concatenate([p, np.zeros(m)])
    return float(np.sum(np.abs(padded[:-m] - padded[m:])))


def reference_a_a2_m1(field: FieldState, T: float) -> tuple[complex, complex]:
    """``<a(T)>`` and ``<a^2(T)>`` for m = 1 and an excited atom, summed
    term by term from the field amplitudes."""
    c = field.amplitudes
    a = 0.0
    a2 = 0.0
    for n in range(c.size):
        r0 = math.sqrt(n + 1.0)
        if n + 1 < c.size and c[n] * c[n + 1] != 0.0:
            r1 = math.sqrt(n + 2.0)
            a += c[n] * c[n + 1] * math.sqrt(n + 1.0) * (
                math.cos(T * r0) * math.cos(T * r1)
                + math.sqrt((n + 2.0) / (n + 1.0)) * math.sin(T * r0) * math.sin(T * r1)
            )
        if n + 2 < c.size and c[n] * c[n + 2] != 0.0:
            r2 = math.sqrt(n + 3.0)
            a2 += c[n] * c[n + 2] * math.sqrt((n + 1.0) * (n + 2.0)) * (
                math.cos(T * r0) * math.cos(T * r2)
                + math.sqrt((n + 3.0) / (n + 1.0)) * math.sin(T * r0) * math.sin(T * r2)
            )
    return complex(a), complex(a2)


def reference_a2_strong(field: FieldState, m: int, T: float) -> float:
    """Strong-intensity form ``<n(0)> sum_n P(n) cos[T (sqrt h(n+2,m) - sqrt h(n,m))]``."""
    p = photon_distribution(field)
    n = np.arange(p.size)
    phase = T * (sqrt_h(n + 2, m) - sqrt_h(n, m))
    return float(mean_photon(field) * np.sum(p * np.cos(phase)))


def reference_inversion(field: FieldState, atom: AtomState, m: int, T: float) -> float:
    """Inversion series for an arbitrary atomic superposition.

    The textbook series covers the coupled pairs only; the constant
    ``-sin^2(theta) sum_{j<m} P(j)`` of the uncoupled ground levels is added.
    """
    c = field.amplitudes
    p = c**2
    n = np.arange(c.size)
    upper = np.zeros_like(c)
    upper[: max(c.size - m, 0)] = c[m:]
    phase = 2.0 * T * sqrt_h(n, m)
    cos2, sin2 = math.cos(atom.theta) ** 2, math.sin(atom.theta) ** 2
    coupled = np.sum(
        (p * cos2 - upper**2 * sin2) * np.cos(phase)
        - c * upper * math.sin(atom.phi) * math.sin(2 * atom.theta) * np.sin(phase)
    )
    return float(coupled - sin2 * np.sum(p[:m]))


def reference_inversion_m1(field: FieldState, T: float) -> float:
    """``sum_n P(n) cos(2 T sqrt(n+1))``: one-photon model, excited atom."""
    p = photon_distribution(field)
    return float(np.sum(p * np.cos(2.0 * T * np.sqrt(np.arange(p.size) + 1.0))))


def _threephoton_weights(field: FieldState) -> np.ndarray:
    c = field.amplitudes
    off = np.ones(c.size, dtype=bool)
    off[::3] = False
    if np.any(c[off] != 0.0):
        raise ConfigError("expected a 3-photon state (support on levels 0, 3, 6, ...)")
    return c[::3] ** 2


def reference_f2_threephoton(field: FieldState, T: float) -> float:
    """``<n(0)>^2 - <n(0)> sum_n P(n) cos(2 T sqrt(3n + 4))``.

    ``P(n)`` is the weight of level ``3n``.  Valid for m = 1 and an excited
    atom in the strong-intensity regime.
    """
    p = _threephoton_weights(field)
    n0 = mean_photon(field)
    j = np.arange(p.size)
    return float(n0 * n0 - n0 * np.sum(p * np.cos(2.0 * T * np.sqrt(3.0 * j + 4.0))))


def reference_inversion_threephoton(field: FieldState, T: float) -> float:
    """``sum_n P(n) cos(2 T sqrt(3n + 1))`` for a 3-photon field, m = 1."""
    p = _threephoton_weights(field)
    j = np.arange(p.size)
    return float(np.sum(p * np.cos(2.0 * T * np.sqrt(3.0 * j + 1.0))))
