"""Initial field and atom states.

Field states are real Fock-amplitude vectors.  Every constructor builds the
amplitudes from a multiplicative recurrence (carried in log space so that
large amplitudes neither overflow nor underflow), checks the probability left
beyond the truncation against ``TAIL_BUDGET`` and renormalizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InvalidStateError, TruncationError

__all__ = [
    "TAIL_BUDGET",
    "FieldState",
    "AtomState",
    "truncation_bound",
    "vacuum",
    "coherent_state",
    "k_photon_coherent_state",
    "orthogonal_even_coherent_state",
    "orthogonal_even_normalization",
    "parity_coherent_state",
    "photon_distribution",
    "mean_photon",
    "natural_phenomenon_class",
]

TAIL_BUDGET = 1e-14
NORM_TOL = 1e-12


@dataclass(frozen=True)
class FieldState:
    """Pure single-mode field state ``sum_n C_n |n>`` with real ``C_n``."""

    amplitudes: np.ndarray
    label: str = ""

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=float, copy=True)
        if amps.ndim != 1 or amps.size == 0:
            raise InvalidStateError("amplitudes must be a non-empty 1-D vector")
        if not np.all(np.isfinite(amps)):
            raise InvalidStateError("amplitudes must be finite")
        norm = float(np.dot(amps, amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state is not normalized: sum C_n^2 = {norm!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1

    @classmethod
    def from_amplitudes(cls, amplitudes, label: str = "custom") -> "FieldState":
        """Normalize an arbitrary real amplitude vector and wrap it."""
        amps = np.asarray(amplitudes, dtype=float)
        norm = math.sqrt(float(np.dot(amps, amps)))
        if norm == 0.0:
            raise InvalidStateError("all amplitudes are zero")
        return cls(amps / norm, label)


@dataclass(frozen=True)
class AtomState:
    """Atomic superposition ``cos(theta)|+> + exp(-i phi) sin(theta)|->``.

    Angles are reduced to ``theta in [0, pi/2]`` and ``phi in [0, 2 pi)``
    using equivalences up to a global phase: ``theta -> theta + pi`` flips
    both components, and ``theta -> pi - theta`` equals ``phi -> phi + pi``.
    """

    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ConfigError("atomic angles must be finite")
        theta = math.fmod(theta, math.pi)
        if theta < 0.0:
            theta += math.pi
        if theta > math.pi / 2:
            theta = math.pi - theta
            phi += math.pi
        phi = math.fmod(phi, 2 * math.pi)
        if phi < 0.0:
            phi += 2 * math.pi
        if phi >= 2 * math.pi:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def excited_amplitude(self) -> complex:
        return complex(math.cos(self.theta))

    @property
    def ground_amplitude(self) -> complex:
        return complex(math.cos(self.phi), -math.sin(self.phi)) * math.sin(self.theta)


def truncation_bound(n_mean: float, m: int = 1) -> int:
    """Default Fock cutoff for a state with mean photon number ``n_mean``."""
    return math.ceil(n_mean + 10.0 * math.sqrt(n_mean + 1.0)) + m + 4


def _log_poisson_amplitudes(alpha: float, n_stop: int) -> np.ndarray:
    """``log(exp(-alpha^2/2) alpha^n / sqrt(n!))`` for n = 0..n_stop.

    Entries are ``-inf`` where the amplitude vanishes (alpha = 0, n > 0).
    """
    out = np.full(n_stop + 1, -np.inf)
    out[0] = -0.5 * alpha * alpha
    if alpha == 0.0:
        return out
    steps = math.log(alpha) - 0.5 * np.log(np.arange(1, n_stop + 1, dtype=float))
    out[1:] = out[0] + np.cumsum(steps)
    return out


def _extended_stop(alpha: float) -> int:
    # beyond this index the Poisson weights are < exp(-200) relative to the peak
    return math.ceil(alpha * alpha + 25.0 * (alpha + 1.0) + 60)


def _build(
    alpha: float,
    n_max: int | None,
    m: int,
    label: str,
    keep,
    k: int = 1,
) -> FieldState:
    """Place Poisson-type amplitudes ``alpha^j / sqrt(j!)`` at levels ``k*j``.

    ``keep(j)`` is a boolean mask over the underlying index j.
    """
    if not math.isfinite(alpha) or alpha < 0.0:
        raise ConfigError(f"alpha must be a finite non-negative real, got {alpha!r}")
    if k < 1:
        raise ConfigError(f"k must be a positive integer, got {k!r}")
    auto = n_max is None
    if auto:
        base = math.ceil(alpha * alpha + 10.0 * math.sqrt(alpha * alpha + 1.0))
        n_max = k * base + m + 4
    elif n_max < 0:
        raise ConfigError(f"n_max must be non-negative, got {n_max!r}")

    j_stop = max(_extended_stop(alpha), n_max // k + 1)
    logs = _log_poisson_amplitudes(alpha, j_stop)
    j = np.arange(j_stop + 1)
    mask = keep(j) & np.isfinite(logs)
    if not mask.any():
        raise InvalidStateError(f"{label}: no occupied Fock levels")
    # scale by the largest term so nothing under/overflows
    shift = logs[mask].max()
    weights = np.where(mask, np.exp(np.where(mask, logs - shift, 0.0)), 0.0)
    total = float(np.dot(weights, weights))

    while True:
        levels = k * j
        # probability at levels >= n_max
        tail = float(np.dot(weights[levels >= n_max], weights[levels >= n_max])) / total
        if tail < TAIL_BUDGET:
            break
        if not auto:
            raise TruncationError(
                f"{label}: n_max={n_max} leaves {tail:.3e} probability at levels >= n_max "
                f"(budget {TAIL_BUDGET:g})"
            )
        n_max += max(8, n_max // 4)

    amps = np.zeros(n_max + 1)
    inside = levels <= n_max
    amps[levels[inside]] = weights[inside]
    amps /= math.sqrt(float(np.dot(amps, amps)))
    return FieldState(amps, label)


def vacuum(n_max: int = 16) -> FieldState:
    amps = np.zeros(n_max + 1)
    amps[0] = 1.0
    return FieldState(amps, "vacuum")


def coherent_state(alpha: float, n_max: int | None = None, *, m: int = 1) -> FieldState:
    """Glauber coherent state with real amplitude ``alpha``.

    ``m`` only enters the automatic cutoff (extra headroom for m-photon
    shifts); an explicit ``n_max`` is used as given.
    """
    return _build(alpha, n_max, m, f"coherent(alpha={alpha:g})", lambda j: j >= 0)


def k_photon_coherent_state(
    alpha: float, k: int, n_max: int | None = None, *, m: int = 1
) -> FieldState:
    """Coherent amplitudes moved to Fock levels ``0, k, 2k, ...``."""
    if int(k) != k or k < 1:
        raise ConfigError(f"k must be a positive integer, got {k!r}")
    return _build(
        alpha, n_max, m, f"{k}-photon coherent(alpha={alpha:g})", lambda j: j >= 0, k=int(k)
    )


def orthogonal_even_coherent_state(
    alpha: float, n_max: int | None = None, *, m: int = 1
) -> FieldState:
    """Four-component cat state with support on levels ``0, 4, 8, ...``.

    ``C_2n = B alpha^2n / sqrt((2n)!) [1 + (-1)^n]``: the factor ``[1 + (-1)^n]``
    leaves every fourth level.  The constant ``2B`` is restored by the final
    renormalization (see :func:`orthogonal_even_normalization`).
    """
    return _build(
        alpha, n_max, m, f"orthogonal-even coherent(alpha={alpha:g})", lambda j: j % 4 == 0
    )


def orthogonal_even_normalization(alpha: float) -> float:
    """``B = (2 cosh alpha^2 + 2 cos alpha^2)^(-1/2)``."""
    a2 = alpha * alpha
    # factor out exp(a2) so large alpha does not overflow cosh
    inner = 1.0 + math.exp(-2.0 * a2) + 2.0 * math.exp(-a2) * math.cos(a2)
    return math.exp(-0.5 * a2) / math.sqrt(inner)


def parity_coherent_state(
    alpha: float, parity: str = "even", n_max: int | None = None, *, m: int = 1
) -> FieldState:
    """Even or odd coherent (cat) state."""
    if parity not in ("even", "odd"):
        raise ConfigError(f"parity must be 'even' or 'odd', got {parity!r}")
    if parity == "odd" and alpha == 0.0:
        raise InvalidStateError("odd coherent state does not exist for alpha = 0")
    rem = 0 if parity == "even" else 1
    return _build(
        alpha, n_max, m, f"{parity} coherent(alpha={alpha:g})", lambda j: j % 2 == rem
    )


def photon_distribution(state: FieldState) -> np.ndarray:
    return state.amplitudes**2


def mean_photon(state: FieldState) -> float:
    p = photon_distribution(state)
    return float(np.dot(np.arange(p.size), p))


def natural_phenomenon_class(state: FieldState, tolerance: float = 1e-14) -> bool:
    """True when ``C_n C_{n+1}`` and ``C_n C_{n+2}`` vanish for every n.

    Such states have ``<a> = <a^2> = 0`` at all times under one-photon
    evolution from the excited atom, so both quadrature factors reduce to
    the mean photon number.
    """
    c = state.amplitudes
    worst = 0.0
    for shift in (1, 2):
        if c.size > shift:
            worst = max(worst, float(np.max(np.abs(c[:-shift] * c[shift:]))))
    return worst <= tolerance
