"""Constant-field echo observables"""

import logging
from typing import Optional

import numpy as np

from src.echo.assembly import EchoEngine
from src.echo.series import EchoSeries
from src.echo.states import InitialState
from src.engine.mode_hamiltonian import build_mode_hamiltonian
from src.engine.propagator import ArrayLike
from src.errors import InvalidChainSpecError
from src.model.chain import ChainSpec, ModeQuartet
from src.processing.runner import ParallelRunner

logger = logging.getLogger(__name__)


class ConstantFieldDynamics:
    """Forward evolution under spec_f, backward under spec_b."""

    def __init__(self, spec_f: ChainSpec, spec_b: ChainSpec):
        if spec_f.n_sites != spec_b.n_sites:
            raise InvalidChainSpecError(
                f"forward and backward chains differ in size ({spec_f.n_sites} vs {spec_b.n_sites})"
            )
        if spec_f.r != spec_b.r or spec_f.j_x != spec_b.j_x:
            logger.debug("Forward and backward couplings differ; only the field is usually flipped")
        self.spec_f = spec_f
        self.spec_b = spec_b
        self.n_sites = spec_f.n_sites

    def propagators(self, quartet: ModeQuartet):
        return build_mode_hamiltonian(self.spec_f, quartet), build_mode_hamiltonian(self.spec_b, quartet)


def echo_engine(spec_f: ChainSpec, spec_b: ChainSpec, runner: Optional[ParallelRunner] = None) -> EchoEngine:
    return EchoEngine(ConstantFieldDynamics(spec_f, spec_b), runner)


def loschmidt_vacuum(spec_f: ChainSpec, spec_b: ChainSpec, t: ArrayLike):
    """L = |prod_q A_q|^2 for the fully polarized initial state."""
    return echo_engine(spec_f, spec_b).loschmidt(InitialState.vacuum(), t)


def loschmidt_definite_q(spec_f: ChainSpec, spec_b: ChainSpec, q: float, t: ArrayLike):
    return echo_engine(spec_f, spec_b).loschmidt(InitialState.definite(q), t)


def momentum_dist_definite_q(spec_f: ChainSpec, spec_b: ChainSpec, q: float, k: float, t: ArrayLike):
    return echo_engine(spec_f, spec_b).momentum_distribution(InitialState.definite(q), k, t)


def loschmidt_uniform(spec_f: ChainSpec, spec_b: ChainSpec, t: ArrayLike):
    return echo_engine(spec_f, spec_b).loschmidt(InitialState.uniform(), t)


def momentum_dist_uniform(spec_f: ChainSpec, spec_b: ChainSpec, k: float, t: ArrayLike):
    return echo_engine(spec_f, spec_b).momentum_distribution(InitialState.uniform(), k, t)


def series_meta(spec_f: ChainSpec, spec_b: ChainSpec, state: InitialState, **extra) -> dict:
    meta = {
        "n_sites": spec_f.n_sites,
        "j_x": spec_f.j_x,
        "r": spec_f.r,
        "h_f": spec_f.h,
        "h_b": spec_b.h,
        "state": state.describe(),
    }
    meta.update(extra)
    return meta


def echo_series(
    spec_f: ChainSpec,
    spec_b: ChainSpec,
    state: InitialState,
    times: np.ndarray,
    runner: Optional[ParallelRunner] = None,
) -> EchoSeries:
    """L(t) over a time grid with its provenance record."""
    times = np.asarray(times, dtype=float)
    logger.info(f"Echo series N={spec_f.n_sites} state={state.describe()} points={len(times)}")
    values = echo_engine(spec_f, spec_b, runner).loschmidt(state, times)
    grid = {"t_min": float(times[0]), "t_max": float(times[-1]), "points": len(times)} if len(times) else {}
    return EchoSeries(times, values, series_meta(spec_f, spec_b, state, grid=grid))
