"""Chain-level observables assembled from per-quartet amplitudes.

Every quartet contributes its vacuum overlap A_q(x) and the 4x4 single
particle correlators C_q(k, q)(x). Observables of the whole chain are then
products over quartets, computed in fixed index order on the calling thread.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Protocol, Tuple

import numpy as np

from src.echo.states import DEFINITE, UNIFORM, InitialState
from src.engine.fermions import quartet_vacuum, single_particle_state
from src.engine.propagator import ArrayLike, SpectralPropagator, transition_amplitudes
from src.model.chain import ModeQuartet, allowed_momenta, locate_momentum, momentum_grid
from src.processing.runner import ParallelRunner

logger = logging.getLogger(__name__)


class Dynamics(Protocol):
    n_sites: int

    def propagators(self, quartet: ModeQuartet) -> Tuple[SpectralPropagator, SpectralPropagator]:
        """(forward, backward) propagators of one quartet."""


@dataclass
class QuartetAmplitudes:
    vacuum: np.ndarray  # (T,)
    single: np.ndarray  # (T, 4, 4), indexed [k_slot-1, q_slot-1]


def _reference_states() -> np.ndarray:
    return np.stack([quartet_vacuum()] + [single_particle_state(s) for s in (1, 2, 3, 4)], axis=1)


def quartet_amplitudes(prop_f, prop_b, x: ArrayLike) -> QuartetAmplitudes:
    references = _reference_states()
    amps = transition_amplitudes(prop_b, references, prop_f, references, x)
    return QuartetAmplitudes(amps[:, 0, 0], amps[:, 1:, 1:])


def excluded_products(vacuum: np.ndarray) -> np.ndarray:
    """Row m is the product of all rows except m, without dividing."""
    ones = np.ones_like(vacuum[:1])
    prefix = np.cumprod(np.vstack([ones, vacuum[:-1]]), axis=0)
    suffix = np.cumprod(np.vstack([ones, vacuum[::-1][:-1]]), axis=0)[::-1]
    return prefix * suffix


class EchoEngine:
    """Loschmidt echo and momentum distributions for any quartet dynamics."""

    def __init__(self, dynamics: Dynamics, runner: ParallelRunner = None):
        self.dynamics = dynamics
        self.n_sites = dynamics.n_sites
        self.quartets = momentum_grid(self.n_sites)
        self.runner = runner or ParallelRunner(max_workers=1)

    def amplitudes(self, x: ArrayLike) -> List[QuartetAmplitudes]:
        def work(quartet: ModeQuartet) -> QuartetAmplitudes:
            prop_f, prop_b = self.dynamics.propagators(quartet)
            return quartet_amplitudes(prop_f, prop_b, x)

        return self.runner.map(work, self.quartets)

    def _vacuum_rows(self, amps: List[QuartetAmplitudes]) -> np.ndarray:
        return np.stack([a.vacuum for a in amps])

    def _uniform_weights(self, index_m: int) -> np.ndarray:
        return np.exp(-1j * np.asarray(self.quartets[index_m - 1].partners))

    def loschmidt(self, state: InitialState, x: ArrayLike):
        amps = self.amplitudes(x)
        vacuum = self._vacuum_rows(amps)

        if state.kind == DEFINITE:
            m, slot = locate_momentum(self.n_sites, state.momentum)
            others = excluded_products(vacuum)[m - 1]
            values = np.abs(others) ** 2 * np.abs(amps[m - 1].single[:, slot - 1, slot - 1]) ** 2
        elif state.kind == UNIFORM:
            others = excluded_products(vacuum)
            total = np.zeros(vacuum.shape[1], dtype=complex)
            for m, amp in enumerate(amps, start=1):
                w = self._uniform_weights(m)
                inner = np.einsum("k,tkq,q->t", w.conj(), amp.single, w)
                total += others[m - 1] * inner
            values = np.abs(total / self.n_sites) ** 2
        else:
            values = np.abs(np.prod(vacuum, axis=0)) ** 2
        return values[0] if np.ndim(x) == 0 else values

    def momentum_distribution(self, state: InitialState, k: float, x: ArrayLike):
        m_k, k_slot = locate_momentum(self.n_sites, k)
        if state.kind == DEFINITE:
            m_q, q_slot = locate_momentum(self.n_sites, state.momentum)
            if m_k != m_q:
                values = np.zeros(np.atleast_1d(x).shape)
                return values[0] if np.ndim(x) == 0 else values

        amps = self.amplitudes(x)
        others = excluded_products(self._vacuum_rows(amps))[m_k - 1]
        single = amps[m_k - 1].single

        if state.kind == DEFINITE:
            values = np.abs(others) ** 2 * np.abs(single[:, k_slot - 1, q_slot - 1]) ** 2
        elif state.kind == UNIFORM:
            w = self._uniform_weights(m_k)
            amplitude = others * (single[:, k_slot - 1, :] @ w) / math.sqrt(self.n_sites)
            values = np.abs(amplitude) ** 2
        else:
            # no particle to find
            values = np.zeros(np.atleast_1d(x).shape)
        return values[0] if np.ndim(x) == 0 else values

    def momentum_profile(self, state: InitialState, x: float) -> Tuple[np.ndarray, np.ndarray]:
        """P(k) at one time for every allowed momentum, ascending in k."""
        momenta = allowed_momenta(self.n_sites)
        amps = self.amplitudes(x)
        others = excluded_products(self._vacuum_rows(amps))[:, 0]
        values = np.zeros(len(momenta))

        if state.kind == DEFINITE:
            m_q, q_slot = locate_momentum(self.n_sites, state.momentum)
        for i, k in enumerate(momenta):
            m_k, k_slot = locate_momentum(self.n_sites, k)
            single = amps[m_k - 1].single[0]
            if state.kind == DEFINITE:
                if m_k == m_q:
                    values[i] = abs(others[m_k - 1]) ** 2 * abs(single[k_slot - 1, q_slot - 1]) ** 2
            elif state.kind == UNIFORM:
                w = self._uniform_weights(m_k)
                amplitude = others[m_k - 1] * (single[k_slot - 1, :] @ w) / math.sqrt(self.n_sites)
                values[i] = abs(amplitude) ** 2
        return np.array(momenta), values
