"""Entropy bookkeeping for erasure, quantum error correction and entanglement.

All entropies are in nats. Matrices are complex numpy arrays; reports are dicts.
"""

from ._core import (
    InputError,
    SupportError,
    UnsupportedScenarioError,
    binary_entropy,
    bit_flip_cycle,
    classical_cycle,
    entanglement_of_creation,
    entropy_of_entanglement,
    erasure_entropy,
    free_energy,
    gibbs_state,
    mutual_information,
    partial_trace,
    recovery_fidelity_vs_overlap,
    relative_entropy,
    relative_entropy_of_entanglement,
    schumacher_rate,
    single_shot_probability,
    thermalize,
    von_neumann_entropy,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
