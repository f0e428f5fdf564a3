"""Locating revival centers in a sampled collapse-revival signal.

The envelope is the moving-window RMS of the mean-subtracted series with a
window of one tenth of the expected revival time.  Revival centers are the
envelope's local maxima that rise above ``threshold`` times the quiet
(collapse) level, taken as a low quantile of the envelope.
"""
from __future__ import annotations

import numpy as np

from ..errors import ConfigError

__all__ = ["envelope", "plateau_level", "revival_centers", "pearson"]

PLATEAU_QUANTILE = 0.1


def _uniform_step(t: np.ndarray) -> float:
    t = np.asarray(t, dtype=float)
    if t.ndim != 1 or t.size < 3:
        raise ConfigError("need a 1-D time grid with at least 3 points")
    steps = np.diff(t)
    if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise ConfigError("time grid must be uniform and strictly increasing")
    return float(steps[0])


def envelope(t, y, window: float) -> np.ndarray:
    """Moving-window RMS of ``y - mean(y)``."""
    dt = _uniform_step(t)
    y = np.asarray(y, dtype=float)
    width = max(1, int(round(window / dt)))
    centered = y - y.mean()
    kernel = np.full(width, 1.0 / width)
    return np.sqrt(np.convolve(centered**2, kernel, mode="same"))


def plateau_level(env: np.ndarray) -> float:
    return float(np.quantile(env, PLATEAU_QUANTILE))


def revival_centers(t, y, t_revival: float, threshold: float = 3.0) -> np.ndarray:
    """Times of revival centers in ``y(t)``.

    ``t_revival`` sets the envelope window (``t_revival / 10``) and the
    minimum separation of two centers (``t_revival / 2``).  Maxima closer
    than ``t_revival / 2`` to the first sample belong to the initial Rabi
    burst and are skipped.
    """
    if not t_revival > 0:
        raise ConfigError(f"t_revival must be positive, got {t_revival!r}")
    t = np.asarray(t, dtype=float)
    env = envelope(t, y, t_revival / 10.0)
    level = threshold * plateau_level(env)
    interior = np.arange(1, env.size - 1)
    is_peak = (env[interior] >= env[interior - 1]) & (env[interior] > env[interior + 1])
    peaks = interior[is_peak & (env[interior] > level)]
    peaks = peaks[t[peaks] - t[0] >= 0.5 * t_revival]

    kept: list[int] = []
    for idx in peaks:
        if kept and t[idx] - t[kept[-1]] < 0.5 * t_revival:
            if env[idx] > env[kept[-1]]:
                kept[-1] = idx
            continue
        kept.append(int(idx))
    return t[np.array(kept, dtype=int)]


def pearson(x, y) -> float:
    return float(np.corrcoef(np.asarray(x, float), np.asarray(y, float))[0, 1])
