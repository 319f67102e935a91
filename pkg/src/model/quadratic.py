"""Real-space quadratic form of the Jordan-Wigner transformed chain"""

from functools import lru_cache
from typing import Tuple

import numpy as np

from src.model.chain import ChainSpec


@lru_cache(maxsize=128)
def real_space_quadratic_form(spec: ChainSpec) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Return (A, B, constant) with

        H = sum_ij A_ij c_i^+ c_j + 1/2 sum_ij (B_ij c_i^+ c_j^+ + h.c.) + constant.

    Site j (1-based) sits at index j-1. Bond (j, j+1) carries hopping j_x and
    pairing +j_x when j is odd, hopping j_y and pairing -j_y when j is even.
    The field h*sigma^z_j becomes h*(2 n_j - 1). The (N, 1) bond uses
    c_{N+1} = -c_1.
    """
    n = spec.n_sites
    hopping = np.zeros((n, n))
    pairing = np.zeros((n, n))

    for j in range(1, n + 1):
        odd = j % 2 == 1
        t_bond = spec.j_x if odd else spec.j_y
        d_bond = spec.j_x if odd else -spec.j_y
        a, b = j - 1, j % n
        sign = -1.0 if j == n else 1.0
        hopping[a, b] += sign * t_bond
        hopping[b, a] += sign * t_bond
        pairing[a, b] += sign * d_bond
        pairing[b, a] -= sign * d_bond

    hopping[np.diag_indices(n)] += 2.0 * spec.h
    for matrix in (hopping, pairing):
        matrix.setflags(write=False)
    return hopping, pairing, -spec.h * n
