"""Multiphoton Jaynes-Cummings dynamics and quadrature fluctuation factors."""
from .dynamics import Approach, JointState, ModelConfig, evolve, evolve_eha, evolve_meha, h
from .states import (
    AtomState,
    FieldState,
    coherent_state,
    k_photon_coherent_state,
    mean_photon,
    orthogonal_even_coherent_state,
    parity_coherent_state,
    photon_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "Approach",
    "AtomState",
    "FieldState",
    "JointState",
    "ModelConfig",
    "coherent_state",
    "evolve",
    "evolve_eha",
    "evolve_meha",
    "h",
    "k_photon_coherent_state",
    "mean_photon",
    "orthogonal_even_coherent_state",
    "parity_coherent_state",
    "photon_distribution",
]
