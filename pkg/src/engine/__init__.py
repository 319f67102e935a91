"""Quartet-level dynamics: Fock-space operators, mode Hamiltonians, correlators"""

from src.engine.fermions import FermionOpMatrix, quartet_operators, quartet_vacuum, single_particle_state
from src.engine.mode_hamiltonian import (
    ModeHamiltonian,
    ModeState,
    apply_evolved_operator,
    build_mode_hamiltonian,
    correlator_C,
    creator_beta,
    evolve_vacuum,
    gamma_matrix,
    heisenberg_beta,
    mode_ground_state,
    numerical_beta,
    overlap_amplitude,
    sector_matrix,
)

__all__ = [
    "FermionOpMatrix",
    "ModeHamiltonian",
    "ModeState",
    "apply_evolved_operator",
    "build_mode_hamiltonian",
    "correlator_C",
    "creator_beta",
    "evolve_vacuum",
    "gamma_matrix",
    "heisenberg_beta",
    "mode_ground_state",
    "numerical_beta",
    "overlap_amplitude",
    "quartet_operators",
    "quartet_vacuum",
    "sector_matrix",
    "single_particle_state",
]
