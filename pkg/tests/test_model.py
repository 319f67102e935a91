import math

import numpy as np
import pytest

from conftest import random_quartet, random_spec
from src.errors import InvalidChainSpecError, MomentumError
from src.model import (
    ChainSpec,
    ModeQuartet,
    allowed_momenta,
    locate_momentum,
    mode_spectrum,
    momentum_grid,
    real_space_quadratic_form,
)


def test_chain_spec_rejects_bad_sizes_and_coupling():
    for n in (6, 4, 10, 0):
        with pytest.raises(InvalidChainSpecError):
            ChainSpec(n)
    with pytest.raises(InvalidChainSpecError):
        ChainSpec(8, j_x=0.0)
    with pytest.raises(InvalidChainSpecError):
        ChainSpec(8, h=float("nan"))


def test_chain_spec_is_hashable_value():
    spec = ChainSpec(16, 1.0, 0.5, 0.3)
    assert spec.j_y == pytest.approx(0.5)
    assert spec.with_field(-0.3) == ChainSpec(16, 1.0, 0.5, -0.3)
    assert len({spec, ChainSpec(16, 1.0, 0.5, 0.3)}) == 1


def test_grid_for_eight_sites():
    quartets = momentum_grid(8)
    assert [q.q for q in quartets] == pytest.approx([math.pi / 8, 3 * math.pi / 8])


def test_grid_first_and_last_mode_of_32_sites():
    quartets = momentum_grid(32)
    assert len(quartets) == 8
    assert quartets[0].q == pytest.approx(math.pi / 32)
    assert quartets[-1].q == pytest.approx(15 * math.pi / 32)


def test_grid_rejects_size_not_divisible_by_four():
    with pytest.raises(InvalidChainSpecError):
        momentum_grid(6)


@pytest.mark.parametrize("n_sites", [8, 12, 32, 100])
def test_partner_momenta_cover_the_allowed_set(n_sites):
    partners = [k for quartet in momentum_grid(n_sites) for k in quartet.partners]
    assert len(set(np.round(partners, 12))) == n_sites
    assert sorted(partners) == pytest.approx(list(allowed_momenta(n_sites)))
    for quartet in momentum_grid(n_sites):
        assert 0 < quartet.q < math.pi / 2


def test_partner_set_closed_under_reflections():
    n = 24
    allowed = set(np.round(allowed_momenta(n), 10))

    def reduce(k):
        return round((k + math.pi) % (2 * math.pi) - math.pi, 10)

    for k in allowed_momenta(n):
        assert reduce(-k) in allowed
        assert reduce(math.pi - k) in allowed


def test_locate_momentum_round_trips_every_slot():
    n = 32
    for quartet in momentum_grid(n):
        for slot in range(1, 5):
            assert locate_momentum(n, quartet.momentum(slot)) == (quartet.index_m, slot)
    assert locate_momentum(n, math.pi / 32 + 2 * math.pi) == (1, 3)


def test_locate_momentum_rejects_off_grid_values():
    with pytest.raises(MomentumError):
        locate_momentum(32, 2 * math.pi / 32)
    with pytest.raises(MomentumError):
        locate_momentum(32, 0.1)


def test_locate_momentum_tolerance_is_a_billionth_of_pi():
    assert locate_momentum(32, math.pi / 32 + 0.5e-9 * math.pi) == (1, 3)
    with pytest.raises(MomentumError):
        locate_momentum(32, math.pi / 32 + 2e-9 * math.pi)


def test_isotropic_chain_has_zero_theta():
    spec = ChainSpec(32, 1.0, 1.0, 0.4)
    for quartet in momentum_grid(32):
        assert mode_spectrum(spec, quartet).theta_q == 0.0


def test_zero_field_spectrum_is_degenerate():
    spec = ChainSpec(12, 1.0, 1.0, 0.0)
    quartet = ModeQuartet(12, 2)  # q = pi/4
    spectrum = mode_spectrum(spec, quartet)
    e = math.cos(math.pi / 4)
    assert spectrum.abs_e == pytest.approx(e)
    assert spectrum.lambdas == pytest.approx((-2 * e, 0.0, 0.0, 2 * e))
    assert spectrum.degenerate
    assert math.isnan(spectrum.h_over_lambda[1])


def test_unit_field_spectrum_closed_form():
    spec = ChainSpec(12, 1.0, 1.0, 1.0)
    spectrum = mode_spectrum(spec, ModeQuartet(12, 2))
    e = math.cos(math.pi / 4)
    root = math.sqrt(e ** 2 + 1.0)
    assert spectrum.lambdas == pytest.approx(sorted([-e - root, e - root, root - e, e + root]))
    assert not spectrum.degenerate


def test_spectrum_invariants_on_random_samples(rng):
    for _ in range(100):
        spec = random_spec(rng)
        quartet = random_quartet(rng)
        spectrum = mode_spectrum(spec, quartet)
        lam = spectrum.lambdas
        assert sum(lam) == pytest.approx(0.0, abs=1e-12)
        assert lam[0] == pytest.approx(-lam[3], abs=1e-12)
        assert lam[1] == pytest.approx(-lam[2], abs=1e-12)
        assert list(lam) == sorted(lam)

        r, q = spec.r, quartet.q
        expected = math.asin((1 - r) * math.sin(q) / math.hypot((1 + r) * math.cos(q), (1 - r) * math.sin(q)))
        assert spectrum.theta_q == pytest.approx(expected, abs=1e-12)
        assert spectrum.mixing_angle == pytest.approx(spectrum.theta_q, abs=1e-12)


def test_quadratic_form_structure():
    spec = ChainSpec(8, 1.0, 0.5, 0.7)
    hopping, pairing, constant = real_space_quadratic_form(spec)
    assert np.allclose(hopping, hopping.T)
    assert np.allclose(pairing, -pairing.T)
    assert np.allclose(np.diag(hopping), 1.4)
    assert constant == pytest.approx(-0.7 * 8)
    # x bond (1,2), y bond (2,3) and the antiperiodic closing bond (8,1)
    assert hopping[0, 1] == pytest.approx(1.0) and pairing[0, 1] == pytest.approx(1.0)
    assert hopping[1, 2] == pytest.approx(0.5) and pairing[1, 2] == pytest.approx(-0.5)
    assert hopping[7, 0] == pytest.approx(-0.5) and pairing[7, 0] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        hopping[0, 0] = 3.0
