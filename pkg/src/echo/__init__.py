"""Chain-level echo observables, averages and fits"""

from src.echo.analysis import (
    field_sweep,
    fit_power_law,
    fit_power_law_with_decay,
    peak_scaling_fit,
    peak_values,
)
from src.echo.assembly import EchoEngine
from src.echo.observables import (
    ConstantFieldDynamics,
    echo_engine,
    echo_series,
    loschmidt_definite_q,
    loschmidt_uniform,
    loschmidt_vacuum,
    momentum_dist_definite_q,
    momentum_dist_uniform,
)
from src.echo.series import (
    EchoSeries,
    SweepSeries,
    default_average_horizon,
    time_average,
    time_grid,
    window_average,
)
from src.echo.states import InitialState, parse_momentum

__all__ = [
    "ConstantFieldDynamics",
    "EchoEngine",
    "EchoSeries",
    "InitialState",
    "SweepSeries",
    "default_average_horizon",
    "echo_engine",
    "echo_series",
    "field_sweep",
    "fit_power_law",
    "fit_power_law_with_decay",
    "loschmidt_definite_q",
    "loschmidt_uniform",
    "loschmidt_vacuum",
    "momentum_dist_definite_q",
    "momentum_dist_uniform",
    "parse_momentum",
    "peak_scaling_fit",
    "peak_values",
    "time_average",
    "time_grid",
    "window_average",
]
