"""Quartet engine against the exact-diagonalization oracle on small chains"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from src.echo.observables import echo_engine
from src.echo.states import VACUUM, InitialState
from src.engine.mode_hamiltonian import build_mode_hamiltonian
from src.floquet.kicked import KickSpec, kicked_engine
from src.model.chain import ChainSpec, allowed_momenta, momentum_grid
from src.oracle.exact import (
    check_cap,
    oracle_kicked,
    oracle_loschmidt,
    oracle_momentum_dist,
    oracle_spectrum,
)
from src.processing.runner import ParallelRunner
from src.utils.config import get_config

logger = logging.getLogger(__name__)

# Engine field offset applied by the negative-control run.
CORRUPTION = 1e-3


@dataclass
class VerificationReport:
    tolerance: float
    deviations: Dict[str, float] = field(default_factory=dict)

    @property
    def failures(self) -> List[str]:
        return [name for name, value in self.deviations.items() if not value <= self.tolerance]

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, name: str, engine_values, oracle_values):
        deviation = float(np.max(np.abs(np.asarray(engine_values) - np.asarray(oracle_values))))
        self.deviations[name] = max(deviation, self.deviations.get(name, 0.0))
        logger.debug(f"{name}: max deviation {deviation:.3e}")

    def as_dict(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "tolerance": self.tolerance,
            "deviations": dict(self.deviations),
            "failures": self.failures,
        }


def assembled_spectrum(spec: ChainSpec) -> np.ndarray:
    """Every many-body energy as a sum of one eigenvalue per quartet block."""
    energies = np.zeros(1)
    for quartet in momentum_grid(spec.n_sites):
        block_energies = 2.0 * build_mode_hamiltonian(spec, quartet).energies
        energies = np.add.outer(energies, block_energies).ravel()
    return np.sort(energies)


def run_verification(
    n_sites: int = 8,
    r_values: Sequence[float] = (0.5, 1.0),
    h_f: float = 1.0,
    h_b: float = -1.0,
    times: Optional[np.ndarray] = None,
    tolerance: Optional[float] = None,
    corrupt: bool = False,
    runner: Optional[ParallelRunner] = None,
) -> VerificationReport:
    """
    Max |engine - oracle| per observable over the time grid, every state and every k.

    With `corrupt` the engine's forward field is shifted by CORRUPTION, which must
    make the suite fail.
    """
    config = get_config()
    check_cap(n_sites)
    if times is None:
        dt = float(config.get('oracle.dt', 0.1))
        t_max = float(config.get('oracle.t_max', 5.0))
        times = dt * np.arange(int(round(t_max / dt)) + 1)
    tolerance = float(config.get('oracle.tolerance', 1e-9)) if tolerance is None else tolerance
    report = VerificationReport(tolerance)
    shift = CORRUPTION if corrupt else 0.0
    states = (
        ("vacuum", InitialState.vacuum()),
        ("magnon", InitialState.definite(math.pi / n_sites)),
        ("uniform", InitialState.uniform()),
    )
    logger.info(f"Verification started: N={n_sites}, r={list(r_values)}, points={len(times)}, corrupt={corrupt}")

    for r in r_values:
        spec_f = ChainSpec(n_sites, 1.0, r, h_f)
        spec_b = ChainSpec(n_sites, 1.0, r, h_b)
        engine = echo_engine(spec_f.with_field(h_f + shift), spec_b, runner)

        report.record("spectrum", assembled_spectrum(spec_f.with_field(h_f + shift)), oracle_spectrum(spec_f))
        for label, state in states:
            report.record(
                f"loschmidt_{label}",
                engine.loschmidt(state, times),
                oracle_loschmidt(spec_f, spec_b, state, times),
            )
            if state.kind == VACUUM:
                continue
            for k in allowed_momenta(n_sites):
                report.record(
                    f"momentum_dist_{label}",
                    engine.momentum_distribution(state, k, times),
                    oracle_momentum_dist(spec_f, spec_b, state, k, times),
                )

        base = spec_f.with_field(0.0)
        kick_f, kick_b = KickSpec(base, math.pi / 12, h_f), KickSpec(base, math.pi / 12, h_b)
        engine_kick_f = KickSpec(base, math.pi / 12, h_f + shift)
        kicks = np.arange(51)
        report.record(
            "kicked_vacuum",
            kicked_engine(engine_kick_f, kick_b, runner).loschmidt(InitialState.vacuum(), kicks),
            oracle_kicked(kick_f, kick_b, InitialState.vacuum(), kicks),
        )

    if report.passed:
        logger.info(f"Verification passed: {report.deviations}")
    else:
        logger.warning(f"Verification failed for {report.failures}")
    return report
