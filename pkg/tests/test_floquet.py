import cmath
import math

import numpy as np
import pytest

from conftest import PI
from src.echo import InitialState, loschmidt_vacuum
from src.engine.fermions import occupation_numbers, quartet_vacuum, single_particle_state
from src.errors import InvalidChainSpecError
from src.floquet import (
    KickSpec,
    analytic_v_eigenvalues,
    build_floquet,
    kicked_engine,
    kicked_loschmidt,
    kicked_momentum_dist,
    kicked_series,
    kicked_state,
)
from src.model.chain import ChainSpec, ModeQuartet, allowed_momenta, mode_spectrum
from src.oracle import oracle_kicked


def kicks(n_sites, tau, h_f, h_b, r=1.0):
    base = ChainSpec(n_sites, 1.0, r, 0.0)
    return KickSpec(base, tau, h_f), KickSpec(base, tau, h_b)


def test_kick_spec_validation():
    with pytest.raises(InvalidChainSpecError):
        KickSpec(ChainSpec(8), 0.0, 1.0)
    with pytest.raises(InvalidChainSpecError):
        KickSpec(ChainSpec(8), 0.1, math.inf)
    with pytest.raises(InvalidChainSpecError):
        kicked_engine(KickSpec(ChainSpec(8), 0.1, 1.0), KickSpec(ChainSpec(8), 0.2, -1.0))


def test_floquet_operator_is_unitary():
    kick_f, _ = kicks(16, PI / 12, 0.7, -1.0, r=0.5)
    for m in range(1, 5):
        floquet = build_floquet(kick_f, ModeQuartet(16, m))
        assert np.allclose(floquet.matrix @ floquet.matrix.conj().T, np.eye(16), atol=1e-12)
        assert np.abs(floquet.eigenvalues) == pytest.approx(np.ones(16), abs=1e-14)
        assert np.allclose(floquet.power(1), floquet.matrix, atol=1e-12)
        assert np.allclose(floquet.power(3), np.linalg.matrix_power(floquet.matrix, 3), atol=1e-12)


def test_kicked_state_norm_and_start():
    kick_f, _ = kicks(32, PI / 12, 1.0, -1.0)
    quartet = ModeQuartet(32, 3)
    initial = single_particle_state(3)
    assert np.allclose(kicked_state(kick_f, quartet, 0, initial), initial)
    late = kicked_state(kick_f, quartet, np.array([10, 1000, 100000]), initial)
    assert np.linalg.norm(late, axis=1) == pytest.approx(np.ones(3), abs=1e-10)
    with pytest.raises(ValueError):
        kicked_state(kick_f, quartet, -1, initial)


def test_two_level_eigenvalues():
    kick, _ = kicks(32, PI / 12, 0.8, -1.0, r=0.5)
    for m in (1, 4, 8):
        quartet = ModeQuartet(32, m)
        values = analytic_v_eigenvalues(kick, quartet)
        assert [abs(v) for v in values] == pytest.approx([1.0] * 4, abs=1e-12)
        z = cmath.exp(4j * mode_spectrum(kick.base, quartet).abs_e * kick.tau)
        assert values[0] * values[1] == pytest.approx(z, abs=1e-12)
        assert values[2] * values[3] == pytest.approx(z.conjugate(), abs=1e-12)

    unkicked = KickSpec(kick.base, kick.tau, 0.0)
    quartet = ModeQuartet(32, 2)
    z = cmath.exp(4j * mode_spectrum(kick.base, quartet).abs_e * kick.tau)
    plus, minus, _, _ = analytic_v_eigenvalues(unkicked, quartet)
    assert sorted([plus, minus], key=lambda v: v.imag) == pytest.approx(sorted([z, 1.0], key=lambda v: v.imag), abs=1e-12)


def test_quarter_period_flips_parity_only():
    kick_f, kick_b = kicks(16, PI / 4, 1.0, -1.0)
    parity = (-1.0) ** occupation_numbers(4)
    for m in range(1, 5):
        quartet = ModeQuartet(16, m)
        assert np.allclose(build_floquet(kick_f, quartet).matrix, build_floquet(kick_b, quartet).matrix * parity[None, :], atol=1e-12)


@pytest.mark.parametrize("n_sites", [16, 64, 128])
def test_quarter_period_freezes_the_echo(n_sites):
    kick_f, kick_b = kicks(n_sites, PI / 4, 1.0, -1.0)
    counts = np.arange(0, 10001, 10)
    values = kicked_loschmidt(kick_f, kick_b, counts, InitialState.vacuum())
    assert np.max(np.abs(values - 1.0)) <= 1e-10


def test_first_kick_leaves_echo_at_one(rng):
    for _ in range(10):
        h_f, h_b = rng.uniform(-2, 2, size=2)
        kick_f, kick_b = kicks(16, float(rng.uniform(0.05, 1.0)), float(h_f), float(h_b), r=float(rng.uniform(0, 2)))
        for state in (InitialState.vacuum(), InitialState.definite(3 * PI / 16), InitialState.uniform()):
            assert kicked_loschmidt(kick_f, kick_b, 1, state) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("r", [0.5, 1.0])
def test_kicked_echo_matches_oracle(r):
    kick_f, kick_b = kicks(8, PI / 12, 1.0, -1.0, r=r)
    counts = np.arange(51)
    for state in (InitialState.vacuum(), InitialState.definite(PI / 8), InitialState.uniform()):
        assert kicked_loschmidt(kick_f, kick_b, counts, state) == pytest.approx(
            oracle_kicked(kick_f, kick_b, state, counts), abs=1e-9
        )


def test_kicked_momentum_distribution_starts_on_the_magnon():
    kick_f, kick_b = kicks(16, PI / 12, 1.0, -1.0)
    state = InitialState.definite(PI / 16)
    at_start = [kicked_momentum_dist(kick_f, kick_b, state, k, 0) for k in allowed_momenta(16)]
    assert at_start == pytest.approx([1.0 if math.isclose(k, PI / 16) else 0.0 for k in allowed_momenta(16)], abs=1e-12)
    counts = np.arange(20)
    assert kicked_momentum_dist(kick_f, kick_b, state, PI / 16, counts) == pytest.approx(
        kicked_loschmidt(kick_f, kick_b, counts, state), abs=1e-12
    )


def test_kicked_series_times_are_kick_multiples():
    kick_f, kick_b = kicks(16, 0.25, 1.0, -1.0)
    series = kicked_series(kick_f, kick_b, InitialState.vacuum(), 8)
    assert series.times == pytest.approx(0.25 * np.arange(9))
    assert series.values[0] == pytest.approx(1.0)
    assert series.meta["tau"] == 0.25


def test_quarter_period_moves_the_vacuum_of_every_quartet():
    # the echo freezes through the parity identity, not through a stationary vacuum
    kick_f, _ = kicks(16, PI / 4, 1.0, -1.0)
    for m in range(1, 5):
        evolved = build_floquet(kick_f, ModeQuartet(16, m)).matrix @ quartet_vacuum()
        assert abs(np.vdot(quartet_vacuum(), evolved)) < 0.95


@pytest.mark.slow
def test_small_period_approaches_constant_field():
    kick_f, kick_b = kicks(32, 1e-3, 1.0, -1.0)
    kicked = kicked_loschmidt(kick_f, kick_b, 1000, InitialState.vacuum())
    direct = loschmidt_vacuum(ChainSpec(32, 1.0, 1.0, 1.0), ChainSpec(32, 1.0, 1.0, -1.0), 1.0)
    assert abs(kicked - direct) <= 5e-3
