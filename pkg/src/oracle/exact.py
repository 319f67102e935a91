"""Brute-force Fock-space reference for every echo observable.

The full 2^N fermion Hamiltonian is assembled from the same real-space
quadratic form the quartet engine uses, then diagonalized per fermion-parity
sector. Observables are evaluated literally from their definitions.
"""

import logging
import math
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from src.echo.states import DEFINITE, UNIFORM, InitialState
from src.engine.fermions import annihilation_operators, occupation_numbers
from src.engine.propagator import ArrayLike
from src.errors import OracleCapError
from src.floquet.kicked import KickSpec
from src.model.chain import ChainSpec, allowed_momenta, locate_momentum
from src.model.quadratic import real_space_quadratic_form
from src.utils.config import get_config

logger = logging.getLogger(__name__)


def oracle_cap() -> int:
    return int(get_config().get('oracle.max_sites', 12))


def check_cap(n_sites: int, max_sites: Optional[int] = None):
    cap = oracle_cap() if max_sites is None else max_sites
    if n_sites > cap:
        raise OracleCapError(f"exact diagonalization is capped at N={cap}, got N={n_sites}")


@lru_cache(maxsize=4)
def site_operators(n_sites: int) -> Tuple[sp.csr_matrix, ...]:
    """Real-space annihilators c_1..c_N (index j-1) with Jordan-Wigner strings."""
    return tuple(annihilation_operators(n_sites, sparse=True))


@lru_cache(maxsize=4)
def parity_sectors(n_sites: int) -> Dict[int, np.ndarray]:
    parity = occupation_numbers(n_sites) % 2
    return {p: np.flatnonzero(parity == p) for p in (0, 1)}


class SectorEigen:
    """Eigenpairs of one parity block; `frequencies` are the energies (evolution exp(-iEt))."""

    def __init__(self, indices: np.ndarray, energies: np.ndarray, vectors: np.ndarray):
        self.indices = indices
        self.energies = energies
        self.vectors = vectors
        self.frequencies = energies


class FullHamiltonian:
    def __init__(self, spec: ChainSpec, matrix: sp.csr_matrix):
        self.spec = spec
        self.matrix = matrix
        self._sectors: Dict[int, SectorEigen] = {}

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def sector(self, parity: int) -> SectorEigen:
        if parity not in self._sectors:
            indices = parity_sectors(self.spec.n_sites)[parity]
            block = self.matrix[indices][:, indices].toarray()
            energies, vectors = la.eigh(block)
            self._sectors[parity] = SectorEigen(indices, energies, vectors)
        return self._sectors[parity]

    def spectrum(self) -> np.ndarray:
        return np.sort(np.concatenate([self.sector(p).energies for p in (0, 1)]))

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


def build_full_hamiltonian(spec: ChainSpec, max_sites: Optional[int] = None) -> FullHamiltonian:
    """H = sum A_ij c_i+ c_j + 1/2 sum (B_ij c_i+ c_j+ + h.c.) + constant on 2^N states."""
    check_cap(spec.n_sites, max_sites)
    return _assemble(spec)


@lru_cache(maxsize=32)
def _assemble(spec: ChainSpec) -> FullHamiltonian:
    hopping, pairing, constant = real_space_quadratic_form(spec)
    c = site_operators(spec.n_sites)
    dim = 2 ** spec.n_sites
    matrix = constant * sp.identity(dim, format="csr")
    pair_part = sp.csr_matrix((dim, dim))
    for i, j in zip(*np.nonzero(hopping)):
        matrix = matrix + hopping[i, j] * (c[i].T @ c[j])
    for i, j in zip(*np.nonzero(pairing)):
        pair_part = pair_part + 0.5 * pairing[i, j] * (c[i].T @ c[j].T)
    matrix = (matrix + pair_part + pair_part.T).tocsr()
    logger.debug(f"Full Hamiltonian built: N={spec.n_sites}, nnz={matrix.nnz}")
    return FullHamiltonian(spec, matrix)


def oracle_spectrum(spec: ChainSpec) -> np.ndarray:
    return build_full_hamiltonian(spec).spectrum()


def oracle_ground_energy(spec: ChainSpec) -> float:
    return float(oracle_spectrum(spec)[0])


def momentum_creation(spec: ChainSpec, q: float) -> sp.csr_matrix:
    """c_q+ = N^{-1/2} sum_j exp(i q j) c_j+."""
    locate_momentum(spec.n_sites, q)
    c = site_operators(spec.n_sites)
    n = spec.n_sites
    op = sp.csr_matrix((2 ** n, 2 ** n), dtype=complex)
    for j in range(1, n + 1):
        op = op + (np.exp(1j * q * j) / math.sqrt(n)) * c[j - 1].T
    return op.tocsr()


def vacuum_vector(n_sites: int) -> np.ndarray:
    state = np.zeros(2 ** n_sites, dtype=complex)
    state[0] = 1.0
    return state


def initial_vector(n_sites: int, state: InitialState) -> np.ndarray:
    vacuum = vacuum_vector(n_sites)
    if state.kind == DEFINITE:
        return momentum_creation(ChainSpec(n_sites), state.momentum) @ vacuum
    if state.kind == UNIFORM:
        return site_operators(n_sites)[0].T @ vacuum
    return vacuum


def _parity_of(state: np.ndarray, n_sites: int) -> int:
    support = np.flatnonzero(np.abs(state) > 1e-14)
    parities = set(occupation_numbers(n_sites)[support] % 2)
    if len(parities) != 1:
        raise ValueError("state has no definite fermion parity")
    return parities.pop()


def _hamiltonian_pair(spec_f: ChainSpec, spec_b: ChainSpec) -> Tuple[FullHamiltonian, FullHamiltonian]:
    return build_full_hamiltonian(spec_f), build_full_hamiltonian(spec_b)


@lru_cache(maxsize=16)
def _sector_overlap(ham_b: FullHamiltonian, ham_f: FullHamiltonian, parity: int) -> np.ndarray:
    return ham_b.sector(parity).vectors.conj().T @ ham_f.sector(parity).vectors


def echo_amplitudes(ham_f: FullHamiltonian, ham_b: FullHamiltonian, bras: np.ndarray, ket: np.ndarray, t: ArrayLike) -> np.ndarray:
    """<bra_k| e^{iH_b t} e^{-iH_f t} |ket> for bras (dim, K); returns (T, K)."""
    parity = _parity_of(ket, ham_f.spec.n_sites)
    sec_f, sec_b = ham_f.sector(parity), ham_b.sector(parity)
    times = np.atleast_1d(np.asarray(t, dtype=float))

    coeff_f = sec_f.vectors.conj().T @ ket[sec_f.indices]
    coeff_b = sec_b.vectors.conj().T @ bras[sec_b.indices]
    evolved = np.exp(-1j * np.outer(times, sec_f.energies)) * coeff_f
    moved = evolved @ _sector_overlap(ham_b, ham_f, parity).T
    bra_phases = np.exp(-1j * np.outer(times, sec_b.energies))
    return np.einsum("tm,mk,tm->tk", bra_phases.conj(), coeff_b.conj(), moved)


def oracle_loschmidt(spec_f: ChainSpec, spec_b: ChainSpec, state: InitialState, t: ArrayLike):
    """|<psi| e^{iH_b t} e^{-iH_f t} |psi>|^2."""
    psi = initial_vector(spec_f.n_sites, state)
    values = np.abs(echo_amplitudes(*_hamiltonian_pair(spec_f, spec_b), psi[:, None], psi, t)[:, 0]) ** 2
    return values[0] if np.ndim(t) == 0 else values


def oracle_momentum_dist(spec_f: ChainSpec, spec_b: ChainSpec, state: InitialState, k: float, t: ArrayLike):
    """|<0| c_k e^{iH_b t} e^{-iH_f t} |psi>|^2."""
    n = spec_f.n_sites
    psi = initial_vector(n, state)
    if state.kind not in (DEFINITE, UNIFORM):
        values = np.zeros(np.atleast_1d(t).shape)
        return values[0] if np.ndim(t) == 0 else values
    bra = momentum_creation(spec_f, k) @ vacuum_vector(n)
    values = np.abs(echo_amplitudes(*_hamiltonian_pair(spec_f, spec_b), bra[:, None], psi, t)[:, 0]) ** 2
    return values[0] if np.ndim(t) == 0 else values


def oracle_momentum_profile(spec_f: ChainSpec, spec_b: ChainSpec, state: InitialState, t: float) -> np.ndarray:
    """P(k, t) for every allowed momentum in ascending order."""
    n = spec_f.n_sites
    psi = initial_vector(n, state)
    vacuum = vacuum_vector(n)
    bras = np.stack([momentum_creation(spec_f, k) @ vacuum for k in allowed_momenta(n)], axis=1)
    return np.abs(echo_amplitudes(*_hamiltonian_pair(spec_f, spec_b), bras, psi, t)[0]) ** 2


def _dense_propagator(ham: FullHamiltonian, t: float) -> np.ndarray:
    energies, vectors = la.eigh(ham.dense())
    return (vectors * np.exp(-1j * energies * t)) @ vectors.conj().T


def oracle_momentum_dist_heisenberg(spec_f: ChainSpec, spec_b: ChainSpec, q: float, k: float, t: float) -> float:
    """
    |<phi'(t)| c'_k(-t) c_q+(-t) |phi(t)>|^2 with operators evolved on the full space.

    Same quantity as oracle_momentum_dist for a definite-momentum state, written with
    Heisenberg-evolved operators; dense, so meant for N = 8.
    """
    n = spec_f.n_sites
    u_f = _dense_propagator(build_full_hamiltonian(spec_f), t)
    u_b = _dense_propagator(build_full_hamiltonian(spec_b), t)
    vacuum = vacuum_vector(n)
    create_q = momentum_creation(spec_f, q).toarray()
    annihilate_k = momentum_creation(spec_f, k).toarray().conj().T
    phi_f = u_f @ vacuum
    phi_b = u_b @ vacuum
    create_evolved = u_f @ create_q @ u_f.conj().T
    annihilate_evolved = u_b @ annihilate_k @ u_b.conj().T
    return float(abs(phi_b.conj() @ annihilate_evolved @ create_evolved @ phi_f) ** 2)


def _sector_floquet(kick: KickSpec, parity: int) -> Tuple[np.ndarray, np.ndarray]:
    """(indices, U) of one parity block: exp(-i tau H_int) exp(-i tau H_z)."""
    interaction = build_full_hamiltonian(kick.base.with_field(0.0)).sector(parity)
    n = kick.n_sites
    field = kick.h_kick * (2.0 * occupation_numbers(n) - n)
    field_phases = np.exp(-1j * kick.tau * field[interaction.indices])
    u_int = (interaction.vectors * np.exp(-1j * kick.tau * interaction.energies)) @ interaction.vectors.conj().T
    return interaction.indices, u_int * field_phases[None, :]


def oracle_kicked(kick_f: KickSpec, kick_b: KickSpec, state: InitialState, n: ArrayLike):
    """|<psi| (U_b^n)+ U_f^n |psi>|^2 by repeated exact period operators."""
    check_cap(kick_f.n_sites)
    psi = initial_vector(kick_f.n_sites, state)
    parity = _parity_of(psi, kick_f.n_sites)
    indices, u_f = _sector_floquet(kick_f, parity)
    _, u_b = _sector_floquet(kick_b, parity)

    counts = np.atleast_1d(np.asarray(n, dtype=int))
    psi_f = psi[indices]
    psi_b = psi[indices].copy()
    values_by_count = {}
    for step in range(int(counts.max()) + 1):
        values_by_count[step] = abs(np.vdot(psi_b, psi_f)) ** 2
        psi_f = u_f @ psi_f
        psi_b = u_b @ psi_b
    values = np.array([values_by_count[int(c)] for c in counts])
    return values[0] if np.ndim(n) == 0 else values
