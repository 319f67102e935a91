import math

import numpy as np
import pytest

from src.model.chain import ChainSpec, ModeQuartet


@pytest.fixture
def quench_n8():
    """Forward h=1, backward h=-1 on the isotropic 8-site chain."""
    return ChainSpec(8, 1.0, 1.0, 1.0), ChainSpec(8, 1.0, 1.0, -1.0)


@pytest.fixture(params=[0.5, 1.0], ids=["r0.5", "r1"])
def quench_small(request):
    r = request.param
    return ChainSpec(8, 1.0, r, 1.0), ChainSpec(8, 1.0, r, -1.0)


@pytest.fixture
def times():
    return np.array([0.0, 0.25, 0.5, 1.0, 2.3, 4.7])


@pytest.fixture
def quartet_pi_8():
    return ModeQuartet(8, 1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240117)


def random_spec(rng, n_sites=32) -> ChainSpec:
    return ChainSpec(n_sites, 1.0, float(rng.uniform(0.05, 2.0)), float(rng.uniform(-2.0, 2.0)))


def random_quartet(rng, n_sites=32) -> ModeQuartet:
    return ModeQuartet(n_sites, int(rng.integers(1, n_sites // 4 + 1)))


PI = math.pi
