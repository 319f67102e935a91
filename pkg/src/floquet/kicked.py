"""Stroboscopic dynamics under a delta-kicked transverse field.

One period is U = exp(-i tau (H_xx + H_yy)) exp(-i tau H_z), field factor
first. Powers U^n come from a unitary Schur basis with unimodular
eigenvalues, so n can be large without norm drift.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as la

from src.echo.assembly import EchoEngine
from src.echo.series import EchoSeries
from src.echo.states import InitialState
from src.engine.mode_hamiltonian import ModeState, build_mode_hamiltonian, field_block
from src.engine.propagator import evolve_states, squeeze_time
from src.errors import InvalidChainSpecError
from src.model.chain import ChainSpec, ModeQuartet, mode_spectrum
from src.processing.runner import ParallelRunner

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KickSpec:
    """Kick period, kick field and the chain whose couplings act between kicks (its h is ignored)."""

    base: ChainSpec
    tau: float
    h_kick: float

    def __post_init__(self):
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise InvalidChainSpecError(f"kick period must be positive, got {self.tau}")
        if not math.isfinite(self.h_kick):
            raise InvalidChainSpecError("kick field must be finite")

    @property
    def n_sites(self) -> int:
        return self.base.n_sites


class FloquetOperator:
    """One-period unitary of a quartet with a unitary eigenbasis."""

    def __init__(self, matrix: np.ndarray):
        self.matrix = matrix
        schur_form, basis = la.schur(matrix, output="complex")
        eigenvalues = np.diag(schur_form)
        self.eigenvalues = eigenvalues / np.abs(eigenvalues)
        self.vectors = basis
        self.frequencies = -np.angle(self.eigenvalues)
        for array in (self.matrix, self.eigenvalues, self.vectors, self.frequencies):
            array.setflags(write=False)

    def power(self, n: int) -> np.ndarray:
        return (self.vectors * np.exp(-1j * self.frequencies * n)) @ self.vectors.conj().T


@lru_cache(maxsize=4096)
def build_floquet(kick: KickSpec, quartet: ModeQuartet) -> FloquetOperator:
    interaction = build_mode_hamiltonian(kick.base.with_field(0.0), quartet)
    field_phases = np.exp(-1j * kick.tau * np.diag(field_block(kick.h_kick)).real)
    matrix = interaction.propagator(kick.tau) * field_phases[None, :]
    logger.debug(f"Floquet operator built for m={quartet.index_m}, tau={kick.tau}, h={kick.h_kick}")
    return FloquetOperator(matrix)


def analytic_v_eigenvalues(kick: KickSpec, quartet: ModeQuartet) -> Tuple[complex, complex, complex, complex]:
    """(lambda_+, lambda_-, lambda'_+, lambda'_-) of the two-level period operators."""
    e = mode_spectrum(kick.base, quartet).abs_e
    cos_field = math.cos(2.0 * kick.h_kick * kick.tau)

    def roots(sign: float) -> Tuple[complex, complex]:
        z = cmath.exp(sign * 4j * e * kick.tau)
        trace = (z + 1.0) * cos_field
        disc = cmath.sqrt(trace ** 2 - 4.0 * z)
        return 0.5 * (trace + disc), 0.5 * (trace - disc)

    plus, minus = roots(1.0)
    plus_p, minus_p = roots(-1.0)
    return plus, minus, plus_p, minus_p


def kicked_state(kick: KickSpec, quartet: ModeQuartet, n, initial: ModeState) -> np.ndarray:
    """U^n |initial> through the eigen-power path; n may be an array of kick counts."""
    if np.any(np.asarray(n) < 0):
        raise ValueError("kick count must be non-negative")
    return squeeze_time(evolve_states(build_floquet(kick, quartet), initial, n), n)


class KickedDynamics:
    def __init__(self, kick_f: KickSpec, kick_b: KickSpec):
        if kick_f.n_sites != kick_b.n_sites:
            raise InvalidChainSpecError("forward and backward kicked chains differ in size")
        if kick_f.tau != kick_b.tau:
            raise InvalidChainSpecError("forward and backward kick periods must match")
        self.kick_f = kick_f
        self.kick_b = kick_b
        self.n_sites = kick_f.n_sites

    def propagators(self, quartet: ModeQuartet):
        return build_floquet(self.kick_f, quartet), build_floquet(self.kick_b, quartet)


def kicked_engine(kick_f: KickSpec, kick_b: KickSpec, runner: Optional[ParallelRunner] = None) -> EchoEngine:
    return EchoEngine(KickedDynamics(kick_f, kick_b), runner)


def kicked_loschmidt(kick_f: KickSpec, kick_b: KickSpec, n, state: InitialState):
    """L(n tau); n may be an integer or an array of kick counts."""
    return kicked_engine(kick_f, kick_b).loschmidt(state, n)


def kicked_momentum_dist(kick_f: KickSpec, kick_b: KickSpec, state: InitialState, k: float, n):
    return kicked_engine(kick_f, kick_b).momentum_distribution(state, k, n)


def kicked_series(
    kick_f: KickSpec,
    kick_b: KickSpec,
    state: InitialState,
    n_kicks: int,
    runner: Optional[ParallelRunner] = None,
) -> EchoSeries:
    kicks = np.arange(n_kicks + 1)
    logger.info(f"Kicked series N={kick_f.n_sites} tau={kick_f.tau} kicks={n_kicks} state={state.describe()}")
    values = kicked_engine(kick_f, kick_b, runner).loschmidt(state, kicks)
    meta = {
        "n_sites": kick_f.n_sites,
        "j_x": kick_f.base.j_x,
        "r": kick_f.base.r,
        "tau": kick_f.tau,
        "h_f": kick_f.h_kick,
        "h_b": kick_b.h_kick,
        "state": state.describe(),
        "kicks": n_kicks,
    }
    return EchoSeries(kicks * kick_f.tau, values, meta)
