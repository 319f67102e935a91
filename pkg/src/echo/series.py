"""Echo time series, sweeps and their averages"""

from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from src.utils.config import get_config


@dataclass
class EchoSeries:
    times: np.ndarray
    values: np.ndarray
    meta: Dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.times.shape != self.values.shape:
            raise ValueError("times and values must have the same length")

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class SweepSeries:
    """L at a fixed time against the forward field."""

    fields: np.ndarray
    values: np.ndarray
    meta: Dict = field(default_factory=dict)


def time_grid(t_max: float, dt: float) -> np.ndarray:
    """0, dt, 2dt, ... up to t_max, built from integer multiples of dt."""
    if dt <= 0 or t_max < 0:
        raise ValueError("time grid needs dt > 0 and t_max >= 0")
    steps = int(np.floor(t_max / dt + 1e-9))
    return dt * np.arange(steps + 1)


def default_average_horizon(n_sites: int) -> float:
    config = get_config()
    limit = config.get('time_grid.small_chain_limit', 48)
    if n_sites <= limit:
        return float(config.get('time_grid.average_horizon_small', 500.0))
    return float(config.get('time_grid.average_horizon_large', 5.0))


def time_average(series: EchoSeries) -> float:
    if len(series) == 0:
        raise ValueError("cannot average an empty series")
    return float(np.mean(series.values))


def window_average(series: EchoSeries, window_len: int) -> EchoSeries:
    """Sliding mean over `window_len` consecutive samples, placed at the window centre."""
    if window_len < 1:
        raise ValueError("window length must be positive")
    if window_len > len(series):
        raise ValueError(f"window {window_len} is longer than the series ({len(series)})")
    kernel = np.full(window_len, 1.0 / window_len)
    values = np.convolve(series.values, kernel, mode="valid")
    times = np.convolve(series.times, kernel, mode="valid")
    meta = dict(series.meta, window=window_len)
    return EchoSeries(times, values, meta)
