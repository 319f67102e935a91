"""Exact-diagonalization reference for small chains"""

from src.oracle.exact import (
    FullHamiltonian,
    build_full_hamiltonian,
    check_cap,
    momentum_creation,
    oracle_ground_energy,
    oracle_kicked,
    oracle_loschmidt,
    oracle_momentum_dist,
    oracle_momentum_dist_heisenberg,
    oracle_momentum_profile,
    oracle_spectrum,
)
from src.oracle.spin import spin_hamiltonian, spin_vacuum_loschmidt

__all__ = [
    'FullHamiltonian',
    'build_full_hamiltonian',
    'check_cap',
    'momentum_creation',
    'oracle_ground_energy',
    'oracle_kicked',
    'oracle_loschmidt',
    'oracle_momentum_dist',
    'oracle_momentum_dist_heisenberg',
    'oracle_momentum_profile',
    'oracle_spectrum',
    'spin_hamiltonian',
    'spin_vacuum_loschmidt',
]
