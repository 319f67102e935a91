"""Shared spectral evolution over a quartet.

Anything with a unitary eigenbasis `vectors` and `frequencies` w evolves a
state as V diag(exp(-i w x)) V^+ at "time" x. Constant-field Hamiltonians use
x = t, Floquet operators use x = number of kicks.
"""

from typing import Protocol, Union

import numpy as np

ArrayLike = Union[float, int, np.ndarray]


class SpectralPropagator(Protocol):
    vectors: np.ndarray
    frequencies: np.ndarray


def phases(frequencies: np.ndarray, x: ArrayLike) -> np.ndarray:
    """exp(-i w x) with shape (T, dim); T = 1 for scalar x."""
    grid = np.atleast_1d(np.asarray(x, dtype=float))
    return np.exp(-1j * np.outer(grid, frequencies))


def evolve_states(prop: SpectralPropagator, states: np.ndarray, x: ArrayLike) -> np.ndarray:
    """Evolve one state (dim,) or a stack (dim, S); returns (T, dim) or (T, dim, S)."""
    coeff = prop.vectors.conj().T @ states
    ph = phases(prop.frequencies, x)
    if coeff.ndim == 1:
        return (ph * coeff) @ prop.vectors.T
    return np.einsum("mn,tn,ns->tms", prop.vectors, ph, coeff)


def transition_amplitudes(
    prop_b: SpectralPropagator,
    bras: np.ndarray,
    prop_f: SpectralPropagator,
    kets: np.ndarray,
    x: ArrayLike,
) -> np.ndarray:
    """
    <U_b(x) bra_k | U_f(x) ket_q> for stacks bras (dim, K) and kets (dim, Q).

    Returns shape (T, K, Q).
    """
    overlap = prop_b.vectors.conj().T @ prop_f.vectors
    coeff_f = prop_f.vectors.conj().T @ kets
    coeff_b = prop_b.vectors.conj().T @ bras
    ph_f = phases(prop_f.frequencies, x)
    ph_b = phases(prop_b.frequencies, x)
    ket_t = ph_f[:, :, None] * coeff_f[None, :, :]
    bra_t = ph_b[:, :, None] * coeff_b[None, :, :]
    moved = np.einsum("mn,tnq->tmq", overlap, ket_t)
    return np.einsum("tmk,tmq->tkq", bra_t.conj(), moved)


def squeeze_time(values: np.ndarray, x: ArrayLike) -> np.ndarray:
    """Drop the leading time axis when x was a scalar."""
    return values[0] if np.ndim(x) == 0 else values
