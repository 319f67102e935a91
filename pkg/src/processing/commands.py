"""Subcommand bodies: each turns a validated RunConfig into a ResultTable"""

import logging
from typing import Callable, Dict, Optional

import numpy as np

from src import __version__
from src.echo.analysis import field_sweep, fit_power_law, fit_power_law_with_decay, peak_values
from src.echo.observables import echo_engine
from src.echo.series import EchoSeries, default_average_horizon, time_grid, window_average
from src.echo.states import parse_momentum
from src.export import plot_script
from src.export.csv_exporter import ResultTable
from src.floquet.kicked import kicked_series
from src.processing.run_config import PROGRAM, RunConfig
from src.processing.runner import ParallelRunner
from src.processing.verification import VerificationReport, run_verification
from src.utils.config import get_config

logger = logging.getLogger(__name__)


def _runner(config: RunConfig) -> ParallelRunner:
    return ParallelRunner(max_workers=config.workers)


def _metadata(config: RunConfig, **extra) -> Dict[str, object]:
    meta = {"tool": f"{PROGRAM} {__version__}", "command": config.command_line()}
    meta.update(config.parameters())
    meta.update(extra)
    return meta


def _chunked(evaluate: Callable[[np.ndarray], np.ndarray], x: np.ndarray) -> np.ndarray:
    """Evaluate a vectorized observable in slices to bound the (T, 16, 16) work arrays."""
    size = max(1, int(get_config().get('processing.chunk_size', 5000)))
    if len(x) <= size:
        return np.asarray(evaluate(x))
    return np.concatenate([np.asarray(evaluate(x[i:i + size])) for i in range(0, len(x), size)])


def _grid_meta(times: np.ndarray, dt: float) -> Dict[str, object]:
    return {"t_min": float(times[0]), "t_max": float(times[-1]), "dt": dt, "points": len(times)}


def _apply_window(series: EchoSeries, window: Optional[int]) -> EchoSeries:
    return window_average(series, window) if window else series


def cmd_echo(config: RunConfig) -> ResultTable:
    """L(t) on the time grid; with --sizes and --average one time average per chain size."""
    runner = _runner(config)
    if config.sizes:
        return _echo_averages(config, runner)

    spec_f, spec_b = config.spec_f(), config.spec_b()
    state = config.initial_state()
    engine = echo_engine(spec_f, spec_b, runner)
    times = config.times()
    logger.info(f"echo: N={spec_f.n_sites} state={state.describe()} points={len(times)}")
    series = EchoSeries(times, _chunked(lambda t: engine.loschmidt(state, t), times))

    extra = _grid_meta(times, config.dt)
    if config.average:
        horizon = min(default_average_horizon(spec_f.n_sites), float(times[-1]))
        extra["average_horizon"] = horizon
        extra["time_average"] = float(np.mean(series.values[times <= horizon + 1e-9]))
    series = _apply_window(series, config.window)
    return ResultTable.from_columns({"t": series.times, "L": series.values}, _metadata(config, **extra))


def _echo_averages(config: RunConfig, runner: ParallelRunner) -> ResultTable:
    sizes = config.size_list()
    averages, horizons = [], []
    for n in sizes:
        horizon = default_average_horizon(n)
        times = time_grid(horizon, config.dt)
        engine = echo_engine(config.spec_f(n), config.spec_b(n), runner)
        state = config.initial_state(n)
        values = _chunked(lambda t: engine.loschmidt(state, t), times)
        averages.append(float(np.mean(values)))
        horizons.append(horizon)
        logger.info(f"echo average: N={n} horizon={horizon} L_avg={averages[-1]:.6g}")
    return ResultTable.from_columns(
        {"N": sizes, "horizon": horizons, "L_avg": averages},
        _metadata(config, dt=config.dt),
    )


def cmd_momdist(config: RunConfig) -> ResultTable:
    """P against k at a fixed time, or P against t at a fixed k."""
    spec_f, spec_b = config.spec_f(), config.spec_b()
    state = config.initial_state()
    engine = echo_engine(spec_f, spec_b, _runner(config))

    if config.time is not None:
        momenta, profile = engine.momentum_profile(state, config.time)
        selected = config.momenta()
        mask = np.isin(np.round(momenta * spec_f.n_sites / np.pi), np.round(selected * spec_f.n_sites / np.pi))
        argmax = float(momenta[int(np.argmax(profile))]) if profile.max() > 0 else float("nan")
        logger.info(f"momdist k-scan: N={spec_f.n_sites} t={config.time} peak at k={argmax:.6g}")
        meta = _metadata(config, argmax_k=argmax, max_P=float(profile.max()))
        return ResultTable.from_columns({"k": momenta[mask], "P": profile[mask]}, meta)

    k = parse_momentum(config.k)
    times = config.times()
    logger.info(f"momdist t-scan: N={spec_f.n_sites} k={k:.6g} points={len(times)}")
    series = EchoSeries(times, _chunked(lambda t: engine.momentum_distribution(state, k, t), times))
    series = _apply_window(series, config.window)
    return ResultTable.from_columns({"t": series.times, "P": series.values}, _metadata(config, **_grid_meta(times, config.dt)))


def cmd_sweep(config: RunConfig) -> ResultTable:
    """Long format: one row per (N, h_f)."""
    fields = config.fields()
    runner = _runner(config)
    columns = {"N": [], "h_f": [], "L": []}
    for n in config.size_list():
        sweep = field_sweep(config.spec_b(n), fields, config.time, config.initial_state(n), runner)
        columns["N"].extend([n] * len(sweep.fields))
        columns["h_f"].extend(sweep.fields)
        columns["L"].extend(sweep.values)
        logger.info(f"sweep: N={n} fields={len(fields)} min L={float(np.min(sweep.values)):.6g}")
    meta = _metadata(config, h_f_min=float(fields[0]), h_f_max=float(fields[-1]), points=len(fields))
    return ResultTable.from_columns(columns, meta)


def cmd_kicked(config: RunConfig) -> ResultTable:
    kick_f, kick_b = config.kick_specs()
    series = kicked_series(kick_f, kick_b, config.initial_state(), config.n_kicks, _runner(config))
    series = _apply_window(series, config.window)
    kicks = series.times / config.tau
    return ResultTable.from_columns({"n": kicks, "t": series.times, "L": series.values}, _metadata(config))


def cmd_scaling(config: RunConfig) -> ResultTable:
    """Peak of the uniform-state distribution against N, fitted to amplitude * N**exponent."""
    sizes = config.size_list()
    if config.synthetic:
        # negative-control input with a known exponent of -1
        peaks = [1.0 / n for n in sizes]
    else:
        peaks = peak_values(config.spec_f(sizes[0]), config.h_b, sizes, config.time, _runner(config))
    amplitude, exponent = fit_power_law(sizes, peaks)
    _, decay_exponent, decay_rate = fit_power_law_with_decay(sizes, peaks)
    logger.info(
        f"scaling: P_max = {amplitude:.6g} * N^{exponent:.6g}; "
        f"with decay: N^{decay_exponent:.6g} * exp(-{decay_rate:.6g} N)"
    )
    meta = _metadata(
        config,
        fit_amplitude=amplitude,
        fit_exponent=exponent,
        fit_decay_exponent=decay_exponent,
        fit_decay_rate=decay_rate,
    )
    return ResultTable.from_columns({"N": sizes, "P_max": peaks}, meta)


def cmd_verify(config: RunConfig) -> VerificationReport:
    r_values = tuple(sorted({0.5, 1.0, float(config.r)}))
    return run_verification(
        n_sites=config.n_sites,
        r_values=r_values,
        h_f=config.h_f,
        h_b=config.h_b,
        times=config.times(),
        corrupt=config.corrupt,
        runner=_runner(config),
    )


COMMANDS = {
    "echo": cmd_echo,
    "momdist": cmd_momdist,
    "sweep": cmd_sweep,
    "kicked": cmd_kicked,
    "scaling": cmd_scaling,
}


def plot_script_for(config: RunConfig, table: ResultTable, data_file: str, script_path: str) -> str:
    """gnuplot companion for one subcommand's table."""
    image = plot_script.default_image_name(data_file, script_path)
    xlabel, ylabel = plot_script.axis_labels(table.columns)
    title = config.state
    if config.subcommand == "sweep":
        groups = sorted(set(table.column("N")))
        return plot_script.grouped(data_file, "h_f", "L", image, 1, groups, 2, 3)
    if config.subcommand == "kicked":
        return plot_script.lines(data_file, "kick number n", "L", image, [("1:3", title)])
    if config.subcommand == "scaling":
        meta = table.metadata
        fit = f"{meta['fit_amplitude']:.6g}*x**({meta['fit_exponent']:.6g})"
        return plot_script.points(
            data_file, "N", "P_max", image, [("1:2", "peak")],
            extra=f"set logscale xy\nset label 1 \"fit: {fit}\" at graph 0.5, graph 0.9",
        )
    if config.subcommand == "echo" and config.sizes:
        return plot_script.points(data_file, "N", "time-averaged L", image, [("1:3", title)])
    if config.subcommand == "momdist" and config.time is not None:
        return plot_script.points(data_file, xlabel, ylabel, image, [("1:2", f"t={config.time:g}")])
    return plot_script.lines(data_file, xlabel, ylabel, image, [("1:2", title)])
