"""Closed-form evolution of the resonant m-photon Jaynes-Cummings model.

The coupling ``a^m s+ + a^+m s-`` only connects ``|+, n>`` with ``|-, n+m>``,
so the dynamics splits into independent two-level blocks with Rabi
frequency ``sqrt(h(n, m))``, ``h(n, m) = (n+1)(n+2)...(n+m)``.  The ground
levels ``|-, j>`` with ``j < m`` have no partner; they are carried as the
``dark`` components of :class:`JointState`.

Time is always the scaled time ``T = lambda t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigError
from .states import AtomState, FieldState

__all__ = ["Approach", "ModelConfig", "JointState", "h", "sqrt_h", "evolve", "evolve_eha", "evolve_meha", "initial_joint_state"]


class Approach(str, Enum):
    EHA = "eha"
    MEHA = "meha"


@dataclass(frozen=True)
class ModelConfig:
    """Model parameters.

    ``omega0`` is documentation only: exact resonance ``omega_a = m omega0``
    is enforced, and neither frequency enters interaction-picture amplitudes.
    ``beta1`` and ``beta2`` are the Stark-shift parameters (MEHA only).
    """

    m: int = 1
    approach: Approach = Approach.EHA
    beta1: float = 0.0
    beta2: float = 0.0
    lam: float = 1.0
    omega0: float = 1.0

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ConfigError(f"m must be a positive integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        try:
            object.__setattr__(self, "approach", Approach(self.approach))
        except ValueError:
            raise ConfigError(f"unknown approach {self.approach!r} (use 'eha' or 'meha')") from None
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ConfigError(f"coupling lambda must be positive, got {self.lam!r}")
        for name in ("beta1", "beta2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ConfigError(f"{name} must be a non-negative real, got {value!r}")

    @property
    def omegaa(self) -> float:
        return self.m * self.omega0


@dataclass(frozen=True)
class JointState:
    """Atom-field state at scaled time ``time``.

    ``g1[n]`` is the amplitude of ``|+, n>``, ``g2[n]`` that of ``|-, n+m>``
    (both for n = 0..n_max) and ``dark[j]`` that of ``|-, j>`` for j < m.
    """

    g1: np.ndarray
    g2: np.ndarray
    dark: np.ndarray
    time: float
    config: ModelConfig

    def __post_init__(self):
        for name in ("g1", "g2", "dark"):
            arr = np.array(getattr(self, name), dtype=complex, copy=True)
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.g1.shape != self.g2.shape:
            raise ConfigError("g1 and g2 must have the same length")
        if self.dark.size != self.config.m:
            raise ConfigError(f"dark must have m={self.config.m} entries, got {self.dark.size}")

    @property
    def n_max(self) -> int:
        return self.g1.size - 1

    def norm(self) -> float:
        return float(
            np.vdot(self.g1, self.g1).real
            + np.vdot(self.g2, self.g2).real
            + np.vdot(self.dark, self.dark).real
        )

    def excited(self) -> np.ndarray:
        """Amplitudes on ``|+, n>``, n = 0..n_max."""
        return self.g1

    def ground(self) -> np.ndarray:
        """Amplitudes on ``|-, n>``, n = 0..n_max + m (dark levels first)."""
        return np.concatenate([self.dark, self.g2])


def h(n, m: int):
    """``(n+m)!/n!`` as the rising product ``(n+1)(n+2)...(n+m)``.

    Accepts a scalar or an integer array for ``n``; ``h(n, 0) == 1``.
    """
    if m < 0:
        raise ConfigError(f"m must be non-negative, got {m!r}")
    n_arr = np.asarray(n, dtype=float)
    out = np.ones_like(n_arr)
    for j in range(1, m + 1):
        out = out * (n_arr + j)
    if not np.all(np.isfinite(out)):
        raise OverflowError(f"h(n, {m}) overflows double precision")
    if out.ndim == 0:
        return float(out)
    return out


def sqrt_h(n, m: int):
    return np.sqrt(h(n, m))


def _check(field: FieldState, atom: AtomState, T: float):
    if not math.isfinite(T):
        raise ConfigError(f"time must be finite, got {T!r}")
    if not isinstance(field, FieldState):
        raise ConfigError("field must be a FieldState")
    if not isinstance(atom, AtomState):
        raise ConfigError("atom must be an AtomState")


def _shifted(c: np.ndarray, m: int) -> np.ndarray:
    """``C_{n+m}`` for n = 0..len(c)-1, zero beyond the truncation."""
    out = np.zeros_like(c)
    if m < c.size:
        out[: c.size - m] = c[m:]
    return out


def initial_joint_state(field: FieldState, atom: AtomState, config: ModelConfig) -> JointState:
    c = field.amplitudes
    m = config.m
    ce, cg = atom.excited_amplitude, atom.ground_amplitude
    dark = np.zeros(m, dtype=complex)
    k = min(m, c.size)
    dark[:k] = cg * c[:k]
    return JointState(ce * c, cg * _shifted(c, m), dark, 0.0, config)


def evolve_eha(field: FieldState, atom: AtomState, config: ModelConfig, T: float) -> JointState:
    """Exact EHA state at scaled time ``T``."""
    _check(field, atom, T)
    if config.approach is not Approach.EHA:
        raise ConfigError("evolve_eha needs an EHA configuration")
    m = config.m
    c = field.amplitudes
    n = np.arange(c.size)
    ce, cg = atom.excited_amplitude, atom.ground_amplitude
    a = ce * c
    b = cg * _shifted(c, m)
    phase = T * sqrt_h(n, m)
    cos, sin = np.cos(phase), np.sin(phase)
    g1 = a * cos - 1j * b * sin
    g2 = b * cos - 1j * a * sin
    dark = np.zeros(m, dtype=complex)
    k = min(m, c.size)
    dark[:k] = cg * c[:k]
    return JointState(g1, g2, dark, float(T), config)


def evolve_meha(field: FieldState, atom: AtomState, config: ModelConfig, T: float) -> JointState:
    """Exact MEHA state (EHA plus the Stark term) at scaled time ``T``.

    Each block is rotated about its mean diagonal energy ``-V_n`` with
    frequency ``Omega_n = sqrt((n b1 - (n+m) b2)^2 + 4 lam^2 h(n, m)) / 2``.
    Dark levels pick up the free Stark phase ``exp(i t j beta2)``.
    """
    _check(field, atom, T)
    if config.approach is not Approach.MEHA:
        raise ConfigError("evolve_meha needs a MEHA configuration")
    m, b1, b2, lam = config.m, config.beta1, config.beta2, config.lam
    t = T / lam
    c = field.amplitudes
    n = np.arange(c.size, dtype=float)
    ce, cg = atom.excited_amplitude, atom.ground_amplitude
    a = ce * c
    b = cg * _shifted(c, m)
    coupling = lam * sqrt_h(n, m)
    v = 0.5 * (n * b1 + (n + m) * b2)
    omega = 0.5 * np.sqrt((n * b1 - (n + m) * b2) ** 2 + 4.0 * coupling**2)
    cos, sin = np.cos(t * omega), np.sin(t * omega)
    sinc = sin / omega
    overall = np.exp(1j * t * v)
    g1 = overall * (a * cos + 1j * ((n * b1 - v) * a - coupling * b) * sinc)
    g2 = overall * (b * cos - 1j * ((v - (n + m) * b2) * b + coupling * a) * sinc)
    dark = np.zeros(m, dtype=complex)
    k = min(m, c.size)
    j = np.arange(k)
    dark[:k] = cg * c[:k] * np.exp(1j * t * j * b2)
    return JointState(g1, g2, dark, float(T), config)


def evolve(field: FieldState, atom: AtomState, config: ModelConfig, T: float) -> JointState:
    """Dispatch on ``config.approach``."""
    if config.approach is Approach.EHA:
        return evolve_eha(field, atom, config, T)
    return evolve_meha(field, atom, config, T)
