"""Measurable quantities: moments, inversion, fluctuation factors, analytic
predictors, revival detection and time sweeps."""
from .analytic import (
    f_asymptotic,
    f_normal_exact,
    reference_a2_strong,
    reference_a_a2_m1,
    reference_f2_threephoton,
    reference_inversion,
    reference_inversion_m1,
    reference_inversion_threephoton,
    revival_time,
    trapping_defect,
)
from .moments import (
    FluctuationPair,
    atomic_inversion,
    mean_photon_number,
    moment,
    normal_fluctuations,
    quadrature_variances,
    rescaled_q1,
    rescaled_q2,
    squared_fluctuations,
)
from .revivals import envelope, pearson, plateau_level, revival_centers
from .sweep import OBSERVABLES, TimeSeries, sweep, time_grid

__all__ = [
    "FluctuationPair",
    "OBSERVABLES",
    "TimeSeries",
    "atomic_inversion",
    "envelope",
    "f_asymptotic",
    "f_normal_exact",
    "mean_photon_number",
    "moment",
    "normal_fluctuations",
    "pearson",
    "plateau_level",
    "quadrature_variances",
    "reference_a2_strong",
    "reference_a_a2_m1",
    "reference_f2_threephoton",
    "reference_inversion",
    "reference_inversion_m1",
    "reference_inversion_threephoton",
    "rescaled_q1",
    "rescaled_q2",
    "revival_centers",
    "revival_time",
    "squared_fluctuations",
    "sweep",
    "time_grid",
    "trapping_defect",
]
