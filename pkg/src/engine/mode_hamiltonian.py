"""Exact dynamics inside one momentum quartet"""

import logging
import math
from functools import lru_cache
from typing import Tuple

import numpy as np
import scipy.linalg as la

from src.errors import DegenerateSpectrumError
from src.engine.fermions import (
    QUARTET_DIM,
    occupation_numbers,
    quartet_operators,
    quartet_vacuum,
    single_particle_state,
)
from src.engine.propagator import ArrayLike, evolve_states, squeeze_time, transition_amplitudes
from src.model.chain import ChainSpec, ModeQuartet, mode_spectrum
from src.model.quadratic import real_space_quadratic_form

logger = logging.getLogger(__name__)

# A ModeState is a complex vector of length 16 over the quartet occupation basis.
ModeState = np.ndarray


class ModeHamiltonian:
    """H_q of one quartet with its cached eigendecomposition.

    The chain Hamiltonian is H = 2 sum_q H_q, so states evolve with
    exp(-2i H_q t); `frequencies` are therefore 2 * energies.
    """

    def __init__(self, matrix: np.ndarray):
        self.matrix = 0.5 * (matrix + matrix.conj().T)
        self.energies, self.vectors = la.eigh(self.matrix)
        self.frequencies = 2.0 * self.energies
        for array in (self.matrix, self.energies, self.vectors, self.frequencies):
            array.setflags(write=False)

    def propagator(self, t: float) -> np.ndarray:
        """exp(-2i H_q t) as a dense matrix."""
        return (self.vectors * np.exp(-2j * self.energies * t)) @ self.vectors.conj().T

    def evolve(self, state: ModeState, t: ArrayLike) -> np.ndarray:
        return squeeze_time(evolve_states(self, state, t), t)

    def heisenberg(self, operator: np.ndarray, s: float) -> np.ndarray:
        """exp(2i H_q s) O exp(-2i H_q s)."""
        u = self.propagator(s)
        return u.conj().T @ operator @ u


def _fourier_columns(n_sites: int, quartet: ModeQuartet) -> np.ndarray:
    sites = np.arange(1, n_sites + 1)[:, None]
    momenta = np.asarray(quartet.partners)[None, :]
    return np.exp(1j * sites * momenta) / math.sqrt(n_sites)


def quartet_block(spec: ChainSpec, quartet: ModeQuartet) -> np.ndarray:
    """
    Quartet part of the full chain Hamiltonian in the 16-dim Fock basis.

    Built by Fourier-restricting the real-space quadratic form to the four
    partner momenta; carries the constant -4h so that the chain Hamiltonian is
    exactly the sum of its quartet blocks.
    """
    hopping, pairing, constant = real_space_quadratic_form(spec)
    columns = _fourier_columns(spec.n_sites, quartet)
    hop_k = columns.conj().T @ hopping @ columns
    pair_k = columns.conj().T @ pairing @ columns.conj()

    ops = quartet_operators()
    c = np.stack(ops.annihilators)
    cd = np.stack(ops.creators)
    number_part = np.einsum("ab,aij,bjk->ik", hop_k, cd, c)
    pair_part = 0.5 * np.einsum("ab,aij,bjk->ik", pair_k, cd, cd)
    shift = constant * 4.0 / spec.n_sites
    return number_part + pair_part + pair_part.conj().T + shift * np.eye(QUARTET_DIM)


def field_block(h: float) -> np.ndarray:
    """h * sum sigma^z restricted to a quartet: diag(2h n - 4h)."""
    return np.diag(2.0 * h * occupation_numbers(4) - 4.0 * h).astype(complex)


@lru_cache(maxsize=4096)
def build_mode_hamiltonian(spec: ChainSpec, quartet: ModeQuartet) -> ModeHamiltonian:
    """H_q = (quartet block of H) / 2."""
    logger.debug(f"Building mode Hamiltonian N={spec.n_sites} m={quartet.index_m} h={spec.h}")
    return ModeHamiltonian(0.5 * quartet_block(spec, quartet))


def evolve_vacuum(h_q: ModeHamiltonian, t: ArrayLike) -> np.ndarray:
    return h_q.evolve(quartet_vacuum(), t)


def overlap_amplitude(spec_f: ChainSpec, spec_b: ChainSpec, quartet: ModeQuartet, t: ArrayLike):
    """A_q = <phi'_q(t)|phi_q(t)>."""
    prop_f = build_mode_hamiltonian(spec_f, quartet)
    prop_b = build_mode_hamiltonian(spec_b, quartet)
    vac = quartet_vacuum()[:, None]
    return squeeze_time(transition_amplitudes(prop_b, vac, prop_f, vac, t)[:, 0, 0], t)


def apply_evolved_operator(
    state: ModeState, h_q: ModeHamiltonian, momentum_slot: int, t: float, dagger: bool
) -> ModeState:
    """(exp(2i H_q t) O exp(-2i H_q t)) state for the slot's c or c+."""
    if momentum_slot not in (1, 2, 3, 4):
        raise ValueError(f"slot must be 1..4, got {momentum_slot}")
    ops = quartet_operators()
    operator = ops.creator(momentum_slot) if dagger else ops.annihilator(momentum_slot)
    return h_q.heisenberg(operator, t) @ state


def correlator_C(
    spec_f: ChainSpec, spec_b: ChainSpec, quartet: ModeQuartet, k_slot: int, q_slot: int, t: ArrayLike
):
    """
    C(k,q) = <phi'_q| c'_k(-t) c+_q(-t) |phi_q> = <0| c_k e^{2iH'_q t} e^{-2iH_q t} c+_q |0>.
    """
    prop_f = build_mode_hamiltonian(spec_f, quartet)
    prop_b = build_mode_hamiltonian(spec_b, quartet)
    bra = single_particle_state(k_slot)[:, None]
    ket = single_particle_state(q_slot)[:, None]
    return squeeze_time(transition_amplitudes(prop_b, bra, prop_f, ket, t)[:, 0, 0], t)


def sector_matrix(h_q: ModeHamiltonian) -> np.ndarray:
    """K with [H_q, O_j] = sum_l K_lj O_l on the basis (c+_{q-pi}, c_{-q}, c+_q, c_{pi-q})."""
    basis = quartet_operators().sector_basis()
    k = np.empty((4, 4), dtype=complex)
    for j, o_j in enumerate(basis):
        moved = h_q.matrix @ o_j - o_j @ h_q.matrix
        for l, o_l in enumerate(basis):
            o_l_dag = o_l.conj().T
            k[l, j] = np.trace(moved @ o_l_dag + o_l_dag @ moved) / QUARTET_DIM
    return k


def expand_in_sector_basis(operator: np.ndarray) -> np.ndarray:
    """Coefficients of an operator in the sector basis via {X, O_j+} = coeff_j."""
    basis = quartet_operators().sector_basis()
    coeffs = np.empty(4, dtype=complex)
    for j, o_j in enumerate(basis):
        o_dag = o_j.conj().T
        coeffs[j] = np.trace(operator @ o_dag + o_dag @ operator) / QUARTET_DIM
    return coeffs


def gamma_matrix(spec: ChainSpec, quartet: ModeQuartet) -> np.ndarray:
    """
    Normalized eigenoperator matrix: row i holds xi_i+ in the sector basis,
    [H_q, xi_i+] = lambda_i xi_i+.

    Rows pair each h_i = h / lambda_i with C = cos(theta/2), S = sin(theta/2).
    """
    spectrum = mode_spectrum(spec, quartet)
    if spectrum.degenerate:
        raise DegenerateSpectrumError(
            f"zero mode energy in quartet m={quartet.index_m} (h={spec.h}); use the numerical path"
        )
    cos_half = math.cos(spectrum.mixing_angle / 2)
    sin_half = math.sin(spectrum.mixing_angle / 2)
    gamma = np.empty((4, 4), dtype=complex)
    for i, h_i in enumerate(spectrum.h_over_lambda):
        plus, minus = 1.0 + h_i, 1.0 - h_i
        if i % 2 == 0:  # lambda_1, lambda_3
            row = [1j * cos_half * plus, 1j * cos_half * minus, sin_half * plus, sin_half * minus]
        else:  # lambda_2, lambda_4
            row = [-1j * sin_half * plus, -1j * sin_half * minus, cos_half * plus, cos_half * minus]
        gamma[i] = np.asarray(row) / math.sqrt(2.0 * (1.0 + h_i ** 2))
    return gamma


def heisenberg_beta(spec: ChainSpec, quartet: ModeQuartet, t: float) -> np.ndarray:
    """beta_j = sum_i exp(-2i lambda_i t) conj(Gamma_i3) Gamma_ij."""
    gamma = gamma_matrix(spec, quartet)
    lambdas = np.asarray(mode_spectrum(spec, quartet).lambdas)
    weights = np.exp(-2j * lambdas * t) * gamma[:, 2].conj()
    return weights @ gamma


def numerical_beta(h_q: ModeHamiltonian, t: float) -> np.ndarray:
    """beta from direct evolution of c+_q at Heisenberg time -t."""
    return expand_in_sector_basis(h_q.heisenberg(quartet_operators().creator(3), -t))


def creator_beta(spec: ChainSpec, quartet: ModeQuartet, t: float) -> np.ndarray:
    """Closed-form beta, or the numerical one when a mode energy is zero."""
    if mode_spectrum(spec, quartet).degenerate:
        logger.warning(
            f"zero mode energy in quartet m={quartet.index_m} (h={spec.h}); falling back to numerical beta"
        )
        return numerical_beta(build_mode_hamiltonian(spec, quartet), t)
    return heisenberg_beta(spec, quartet, t)


def mode_ground_state(spec: ChainSpec, quartet: ModeQuartet) -> Tuple[float, ModeState]:
    """Lowest eigenpair of H_q."""
    h_q = build_mode_hamiltonian(spec, quartet)
    return float(h_q.energies[0]), np.array(h_q.vectors[:, 0])
