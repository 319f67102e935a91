import math

import numpy as np
import pytest

from conftest import PI
from src.errors import ConfigValidationError, MomentumError, OracleCapError
from src.export.csv_exporter import render_csv
from src.processing.commands import COMMANDS, cmd_echo, cmd_kicked, cmd_momdist, cmd_scaling, cmd_sweep, plot_script_for
from src.processing.presets import figure_presets
from src.processing.run_config import RunConfig, parse_k_range, parse_range, parse_sizes
from src.processing.runner import ParallelRunner
from src.processing.verification import VerificationReport, run_verification


def test_parse_sizes():
    assert parse_sizes("16, 32,48") == (16, 32, 48)
    with pytest.raises(ValueError):
        parse_sizes("16,x")


def test_parse_range_includes_stop():
    assert parse_range("-1:1:0.5") == pytest.approx([-1.0, -0.5, 0.0, 0.5, 1.0])
    assert len(parse_range("-2:2:0.01")) == 401
    for bad in ("1:2", "0:1:0", "1:0:0.1"):
        with pytest.raises(ValueError):
            parse_range(bad)


def test_parse_k_range():
    assert len(parse_k_range("all", 32)) == 32
    assert len(parse_k_range(None, 8)) == 8
    inside = parse_k_range("0:pi/2", 32)
    assert inside == pytest.approx([(2 * m - 1) * PI / 32 for m in range(1, 9)])
    with pytest.raises(MomentumError):
        parse_k_range("0.01:0.02", 8)
    with pytest.raises(ValueError):
        parse_k_range("0", 8)


def test_validation_collects_every_problem():
    config = RunConfig("echo", n_sites=10, j_x=0.0, window=0, workers=-2)
    with pytest.raises(ConfigValidationError) as info:
        config.validate()
    problems = info.value.problems
    assert len(problems) >= 4
    assert any("--jx" in p for p in problems)
    assert any("--window" in p for p in problems)
    assert any("--workers" in p for p in problems)
    assert any("multiple of 4" in p for p in problems)


@pytest.mark.parametrize(
    "config,fragment",
    [
        (RunConfig("momdist"), "exactly one of --time"),
        (RunConfig("momdist", time=1.0, k="pi/32"), "exactly one of --time"),
        (RunConfig("momdist", k="pi/16"), "--k"),
        (RunConfig("sweep", time=1.2), "--hf-range"),
        (RunConfig("sweep", time=1.2, hf_range="1:0:0.1"), "empty range"),
        (RunConfig("scaling", sizes="8,12,16", time=1.2), "at least 4 sizes"),
        (RunConfig("kicked", n_kicks=10, window=20), "--window"),
        (RunConfig("echo", sizes="16,20"), "--average"),
        (RunConfig("echo", state="magnon:99"), "--state"),
        (RunConfig("echo", t_max=1.0, dt=0.5, window=5), "--window"),
        (RunConfig("echo", h_f=math.nan), "--hf"),
    ],
)
def test_validation_messages(config, fragment):
    with pytest.raises(ConfigValidationError) as info:
        config.validate()
    assert any(fragment in p for p in info.value.problems)


def test_derived_objects():
    config = RunConfig("kicked", n_sites=16, r=0.5, h_f=1.0, h_b=-0.5, tau=0.3, state="magnon:2").validate()
    kick_f, kick_b = config.kick_specs()
    assert kick_f.base.h == 0.0 and kick_f.h_kick == 1.0 and kick_b.h_kick == -0.5
    assert config.initial_state().momentum == pytest.approx(3 * PI / 16)
    assert config.spec_b(32).n_sites == 32 and config.spec_b(32).h == -0.5
    assert config.size_list() == (16,)


def test_command_line_round_trips_flags():
    config = RunConfig("echo", n_sites=16, h_f=0.5, dt=0.01, workers=4, out="x.csv")
    line = config.command_line()
    assert line.startswith("kitaev-echo echo --n 16")
    assert "--hf 0.5" in line and "--dt 0.01" in line
    assert "--workers" not in line and "x.csv" not in line
    assert "window" not in config.parameters()


def test_every_preset_validates():
    presets = figure_presets()
    assert {"fig2a", "fig5", "fig9b", "fig11", "fig13"} <= set(presets)
    for preset in presets.values():
        RunConfig(subcommand=preset.subcommand, **preset.params).validate()


def test_runner_keeps_order():
    assert ParallelRunner(max_workers=4).map(lambda x: x * x, range(10)) == [x * x for x in range(10)]
    assert ParallelRunner(max_workers=1).map(str, [3, 1]) == ["3", "1"]
    assert ParallelRunner(max_workers=0).n_jobs == -1


def test_echo_output_is_independent_of_worker_count():
    base = dict(n_sites=32, r=0.5, state="uniform", t_max=2.0, dt=0.1)
    serial = render_csv(cmd_echo(RunConfig("echo", workers=1, **base).validate()))
    threaded = render_csv(cmd_echo(RunConfig("echo", workers=4, **base).validate()))
    assert serial == threaded


def test_echo_table_with_average_and_window():
    config = RunConfig("echo", n_sites=16, t_max=2.0, dt=0.1, average=True, window=3).validate()
    table = cmd_echo(config)
    assert table.columns == ["t", "L"]
    assert len(table.rows) == 21 - 2
    assert table.metadata["average_horizon"] == pytest.approx(2.0)
    assert 0.0 < table.metadata["time_average"] <= 1.0
    assert table.metadata["command"].startswith("kitaev-echo echo")


def test_echo_averages_per_size(monkeypatch):
    monkeypatch.setenv("KITAEV_TIME_GRID_AVERAGE_HORIZON_SMALL", "1.0")
    table = cmd_echo(RunConfig("echo", sizes="8,16", average=True, dt=0.1).validate())
    assert table.columns == ["N", "horizon", "L_avg"]
    assert list(table.column("N")) == [8, 16]
    assert list(table.column("horizon")) == [1.0, 1.0]


def test_momdist_k_scan_and_time_scan():
    scan = cmd_momdist(RunConfig("momdist", n_sites=32, state="uniform", time=1.2, k_range="0:pi/2").validate())
    assert scan.columns == ["k", "P"]
    assert len(scan.rows) == 8
    assert scan.metadata["max_P"] >= scan.column("P").max()
    assert any(math.isclose(scan.metadata["argmax_k"], k) for k in parse_k_range("all", 32))

    series = cmd_momdist(RunConfig("momdist", n_sites=16, state="magnon:1", k="pi/16", t_max=1.0, dt=0.25).validate())
    assert series.columns == ["t", "P"]
    assert series.column("P")[0] == pytest.approx(1.0)


def test_sweep_long_format():
    table = cmd_sweep(RunConfig("sweep", sizes="8,16", h_b=-1.0, hf_range="-1:1:0.5", time=1.2).validate())
    assert table.columns == ["N", "h_f", "L"]
    assert len(table.rows) == 10
    at_h_b = table.rows[(table.column("h_f") == -1.0)]
    assert at_h_b[:, 2] == pytest.approx([1.0, 1.0], abs=1e-12)


def test_kicked_table():
    table = cmd_kicked(RunConfig("kicked", n_sites=16, tau=PI / 4, n_kicks=20).validate())
    assert table.columns == ["n", "t", "L"]
    assert table.column("n") == pytest.approx(np.arange(21))
    assert table.column("L") == pytest.approx(np.ones(21), abs=1e-10)


def test_synthetic_scaling_recovers_exponent():
    config = RunConfig("scaling", sizes="20,40,60,80,100", time=1.2, synthetic=True, state="uniform").validate()
    table = cmd_scaling(config)
    assert table.metadata["fit_exponent"] == pytest.approx(-1.0, abs=1e-6)
    assert table.metadata["fit_amplitude"] == pytest.approx(1.0, rel=1e-6)
    assert table.metadata["fit_decay_exponent"] == pytest.approx(-1.0, abs=1e-6)
    assert table.metadata["fit_decay_rate"] == pytest.approx(0.0, abs=1e-9)
    assert "--synthetic" in table.metadata["command"]


def test_plot_scripts_reference_the_data_file():
    config = RunConfig("sweep", sizes="8,16", hf_range="-1:1:1", time=1.2).validate()
    table = cmd_sweep(config)
    script = plot_script_for(config, table, "out/sweep.csv", "out/sweep.gp")
    assert "'out/sweep.csv'" in script and 'set output "out/sweep.png"' in script
    assert "N=8" in script and "N=16" in script
    assert set(COMMANDS) == {"echo", "momdist", "sweep", "kicked", "scaling"}


def test_verification_report():
    report = VerificationReport(1e-9)
    report.record("a", [1.0, 2.0], [1.0, 2.0 + 1e-12])
    report.record("b", [0.0], [1e-6])
    assert report.failures == ["b"]
    assert not report.passed
    assert report.as_dict()["deviations"]["b"] == pytest.approx(1e-6)


def test_verification_passes_and_detects_corruption():
    times = np.linspace(0.0, 2.0, 5)
    clean = run_verification(n_sites=8, r_values=(0.5, 1.0), times=times)
    assert clean.passed, clean.as_dict()
    assert {"spectrum", "loschmidt_vacuum", "momentum_dist_uniform", "kicked_vacuum"} <= set(clean.deviations)

    corrupted = run_verification(n_sites=8, r_values=(1.0,), times=times, corrupt=True)
    assert not corrupted.passed
    assert "spectrum" in corrupted.failures


def test_verification_respects_the_cap():
    with pytest.raises(OracleCapError):
        run_verification(n_sites=16)
