"""Jordan-Wigner matrix representations of fermion modes.

Mode p is the (p+1)-th tensor factor, most significant bit first, so a basis
index b has n_p = (b >> (n_modes - 1 - p)) & 1. For a quartet with modes
(q-pi, -q, q, pi-q) this is b = 8 n_{q-pi} + 4 n_{-q} + 2 n_q + n_{pi-q}.
"""

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Tuple

import numpy as np
import scipy.sparse as sp

_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]])  # |1> -> |0>
_STRING = np.diag([1.0, -1.0])
_EYE = np.eye(2)

QUARTET_MODES = 4
QUARTET_DIM = 2 ** QUARTET_MODES


def annihilation_operators(n_modes: int, sparse: bool = False) -> list:
    """Annihilators c_0..c_{n-1} with the parity string on all earlier modes."""
    ops = []
    for p in range(n_modes):
        factors = [_STRING] * p + [_LOWER] + [_EYE] * (n_modes - p - 1)
        if sparse:
            op = reduce(lambda a, b: sp.kron(a, b, format="csr"), factors)
        else:
            op = reduce(np.kron, factors)
        ops.append(op)
    return ops


def occupation_numbers(n_modes: int) -> np.ndarray:
    """Particle number of every basis index."""
    index = np.arange(2 ** n_modes)
    return np.array([bin(b).count("1") for b in index])


@dataclass(frozen=True)
class FermionOpMatrix:
    """Annihilators of the four quartet slots as 16x16 matrices (slot s -> index s-1)."""

    annihilators: Tuple[np.ndarray, ...]

    @property
    def creators(self) -> Tuple[np.ndarray, ...]:
        return tuple(c.conj().T for c in self.annihilators)

    def annihilator(self, slot: int) -> np.ndarray:
        return self.annihilators[slot - 1]

    def creator(self, slot: int) -> np.ndarray:
        return self.annihilators[slot - 1].conj().T

    def sector_basis(self) -> Tuple[np.ndarray, ...]:
        """Operator basis O = (c+_{q-pi}, c_{-q}, c+_q, c_{pi-q}) closed under evolution."""
        return (self.creator(1), self.annihilator(2), self.creator(3), self.annihilator(4))


@lru_cache(maxsize=1)
def quartet_operators() -> FermionOpMatrix:
    ops = [op.astype(complex) for op in annihilation_operators(QUARTET_MODES)]
    for op in ops:
        op.setflags(write=False)
    return FermionOpMatrix(tuple(ops))


def quartet_vacuum() -> np.ndarray:
    state = np.zeros(QUARTET_DIM, dtype=complex)
    state[0] = 1.0
    return state


def single_particle_state(slot: int) -> np.ndarray:
    """c+_slot |0000>."""
    return quartet_operators().creator(slot) @ quartet_vacuum()
