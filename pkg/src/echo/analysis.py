"""Peak-scaling fit and field sweeps"""

import logging
from dataclasses import replace
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.echo.observables import echo_engine, series_meta
from src.echo.series import SweepSeries
from src.echo.states import InitialState
from src.errors import FitError, InvalidChainSpecError
from src.model.chain import ChainSpec
from src.processing.runner import ParallelRunner

logger = logging.getLogger(__name__)


def fit_power_law(sizes: Sequence[float], values: Sequence[float]) -> Tuple[float, float]:
    """Least-squares line through (log N, log P); returns (amplitude, exponent)."""
    sizes = np.asarray(sizes, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(sizes) < 2 or len(sizes) != len(values):
        raise FitError("power-law fit needs matching sizes and values, at least two points")
    if np.any(values <= 0) or np.any(sizes <= 0):
        raise FitError("power-law fit needs strictly positive peak values")
    exponent, log_amplitude = np.polyfit(np.log(sizes), np.log(values), 1)
    return float(np.exp(log_amplitude)), float(exponent)


def fit_power_law_with_decay(sizes: Sequence[float], values: Sequence[float]) -> Tuple[float, float, float]:
    """
    Least squares for log P = log A + exponent * log N - rate * N.

    The fixed-time peak carries an echo factor that falls exponentially with N,
    so the plain log-log line steepens with size; the rate term absorbs it.
    Returns (amplitude, exponent, rate).
    """
    sizes = np.asarray(sizes, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(sizes) < 3 or len(sizes) != len(values):
        raise FitError("decay-corrected fit needs matching sizes and values, at least three points")
    if np.any(values <= 0) or np.any(sizes <= 0):
        raise FitError("power-law fit needs strictly positive peak values")
    design = np.column_stack([np.ones_like(sizes), np.log(sizes), -sizes])
    (log_amplitude, exponent, rate), *_ = np.linalg.lstsq(design, np.log(values), rcond=None)
    return float(np.exp(log_amplitude)), float(exponent), float(rate)


def peak_values(
    spec_f_template: ChainSpec,
    h_b: float,
    sizes: Iterable[int],
    t_star: float,
    runner: Optional[ParallelRunner] = None,
) -> List[float]:
    """max_k P(k, t_star) of the uniform state for each chain size."""
    peaks = []
    for n in sizes:
        spec_f = replace(spec_f_template, n_sites=int(n))
        _, profile = echo_engine(spec_f, spec_f.with_field(h_b), runner).momentum_profile(
            InitialState.uniform(), t_star
        )
        peaks.append(float(profile.max()))
        logger.debug(f"Peak P at N={n}: {peaks[-1]:.6g}")
    return peaks


def peak_scaling_fit(
    spec_template: ChainSpec,
    sizes: Sequence[int],
    t_star: float,
    h_b: Optional[float] = None,
    runner: Optional[ParallelRunner] = None,
) -> Tuple[float, float]:
    """
    Fit P_max(N) = amplitude * N**exponent.

    `spec_template` carries the forward field; the backward field defaults to -h.
    """
    sizes = list(sizes)
    if len(sizes) < 4:
        raise FitError(f"peak scaling needs at least 4 sizes, got {len(sizes)}")
    bad = [n for n in sizes if n % 4 != 0 or n < 8]
    if bad:
        raise InvalidChainSpecError(f"sizes must be multiples of 4 and at least 8: {bad}")
    h_b = -spec_template.h if h_b is None else h_b
    peaks = peak_values(spec_template, h_b, sizes, t_star, runner)
    return fit_power_law(sizes, peaks)


def field_sweep(
    spec_b: ChainSpec,
    h_values: Sequence[float],
    t_star: float,
    state: InitialState,
    runner: Optional[ParallelRunner] = None,
) -> SweepSeries:
    """L(t_star) for each forward field, on an ascending field grid."""
    fields = np.sort(np.asarray(h_values, dtype=float))
    if fields.size == 0:
        raise ValueError("field sweep needs at least one field value")
    runner = runner or ParallelRunner(max_workers=1)

    def evaluate(h_f: float) -> float:
        return float(echo_engine(spec_b.with_field(h_f), spec_b).loschmidt(state, t_star))

    values = np.asarray(runner.map(evaluate, fields))
    meta = series_meta(spec_b, spec_b, state, t_star=t_star)
    meta.pop("h_f")
    return SweepSeries(fields, values, meta)
