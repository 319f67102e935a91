import itertools

import numpy as np
import pytest
import scipy.sparse as sp

from conftest import PI
from src.echo import InitialState
from src.errors import MomentumError, OracleCapError
from src.floquet import KickSpec
from src.model.chain import ChainSpec, allowed_momenta
from src.oracle import (
    build_full_hamiltonian,
    check_cap,
    momentum_creation,
    oracle_ground_energy,
    oracle_kicked,
    oracle_loschmidt,
    oracle_momentum_dist,
    oracle_momentum_dist_heisenberg,
    oracle_spectrum,
    spin_hamiltonian,
    spin_vacuum_loschmidt,
)
from src.oracle.exact import initial_vector, parity_sectors, site_operators, vacuum_vector
from src.processing.verification import assembled_spectrum


def test_site_operators_anticommute():
    c = site_operators(8)
    eye = sp.identity(2 ** 8, format="csr")
    for i, j in itertools.product(range(8), repeat=2):
        anti = c[i] @ c[j].T + c[j].T @ c[i]
        expected = eye if i == j else 0 * eye
        assert abs(anti - expected).max() == 0
        assert abs(c[i] @ c[j] + c[j] @ c[i]).max() == 0


def test_parity_sectors_split_the_space():
    sectors = parity_sectors(8)
    assert len(sectors[0]) == len(sectors[1]) == 128
    assert 0 in sectors[0]


def test_hamiltonian_is_hermitian_and_parity_preserving():
    ham = build_full_hamiltonian(ChainSpec(8, 1.0, 0.5, 0.7))
    dense = ham.dense()
    assert np.allclose(dense, dense.conj().T)
    sectors = parity_sectors(8)
    assert np.max(np.abs(dense[np.ix_(sectors[0], sectors[1])])) == 0.0
    assert ham.dim == 256


def test_momentum_creators_are_orthonormal():
    spec = ChainSpec(8)
    vacuum = vacuum_vector(8)
    vectors = np.stack([momentum_creation(spec, k) @ vacuum for k in allowed_momenta(8)], axis=1)
    assert np.allclose(vectors.conj().T @ vectors, np.eye(8), atol=1e-12)
    with pytest.raises(MomentumError):
        momentum_creation(spec, PI / 4)


def test_first_site_from_momentum_creators():
    spec = ChainSpec(8)
    vacuum = vacuum_vector(8)
    total = sum(np.exp(-1j * k) * (momentum_creation(spec, k) @ vacuum) for k in allowed_momenta(8)) / np.sqrt(8)
    assert np.allclose(total, site_operators(8)[0].T @ vacuum, atol=1e-12)
    assert np.allclose(initial_vector(8, InitialState.uniform()), total, atol=1e-12)


def test_initial_vectors_are_normalized():
    for state in (InitialState.vacuum(), InitialState.definite(-3 * PI / 8), InitialState.uniform()):
        assert np.linalg.norm(initial_vector(8, state)) == pytest.approx(1.0)


def test_spectrum_equals_sum_of_quartet_blocks():
    spec = ChainSpec(8, 1.0, 0.5, 0.7)
    assert assembled_spectrum(spec) == pytest.approx(oracle_spectrum(spec), abs=1e-9)
    assert oracle_ground_energy(spec) == pytest.approx(assembled_spectrum(spec)[0], abs=1e-9)


def test_echo_is_one_at_zero_time(quench_small):
    spec_f, spec_b = quench_small
    for state in (InitialState.vacuum(), InitialState.definite(PI / 8), InitialState.uniform()):
        assert oracle_loschmidt(spec_f, spec_b, state, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert oracle_momentum_dist(spec_f, spec_b, InitialState.vacuum(), PI / 8, [0.0, 1.0]) == pytest.approx([0.0, 0.0])


def test_momentum_distribution_is_a_probability(quench_n8):
    spec_f, spec_b = quench_n8
    total = sum(oracle_momentum_dist(spec_f, spec_b, InitialState.uniform(), k, 0.8) for k in allowed_momenta(8))
    assert 0.0 < total <= 1.0 + 1e-12


@pytest.mark.parametrize("q,k", [(PI / 8, PI / 8), (PI / 8, -PI / 8), (3 * PI / 8, -5 * PI / 8)])
def test_heisenberg_and_schrodinger_forms_agree(quench_small, q, k):
    spec_f, spec_b = quench_small
    expected = oracle_momentum_dist(spec_f, spec_b, InitialState.definite(q), k, 0.5)
    assert oracle_momentum_dist_heisenberg(spec_f, spec_b, q, k, 0.5) == pytest.approx(expected, abs=1e-10)


def test_cap_from_argument_and_environment(monkeypatch):
    with pytest.raises(OracleCapError):
        check_cap(16)
    check_cap(16, max_sites=16)
    with pytest.raises(OracleCapError):
        build_full_hamiltonian(ChainSpec(12), max_sites=8)

    monkeypatch.setenv("KITAEV_ORACLE_MAX_SITES", "8")
    build_full_hamiltonian(ChainSpec(8))
    with pytest.raises(OracleCapError):
        build_full_hamiltonian(ChainSpec(12))
    with pytest.raises(OracleCapError):
        spin_hamiltonian(ChainSpec(12))
    base = ChainSpec(12)
    with pytest.raises(OracleCapError):
        oracle_kicked(KickSpec(base, 0.1, 1.0), KickSpec(base, 0.1, -1.0), InitialState.vacuum(), 3)


def test_spin_chain_matches_fermion_vacuum_echo(quench_small, times):
    spec_f, spec_b = quench_small
    assert spin_vacuum_loschmidt(spec_f, spec_b, times) == pytest.approx(
        oracle_loschmidt(spec_f, spec_b, InitialState.vacuum(), times), abs=1e-9
    )


def test_spin_hamiltonian_even_sector_matches_fermions():
    spec = ChainSpec(8, 1.0, 0.5, 0.3)
    spin = spin_hamiltonian(spec).sector(0).energies
    fermion = build_full_hamiltonian(spec).sector(0).energies
    assert spin == pytest.approx(fermion, abs=1e-9)


def test_kicked_oracle_starts_at_one():
    base = ChainSpec(8, 1.0, 1.0, 0.0)
    values = oracle_kicked(KickSpec(base, PI / 12, 1.0), KickSpec(base, PI / 12, -1.0), InitialState.uniform(), [0, 1, 5])
    assert values[0] == pytest.approx(1.0)
    assert values[1] == pytest.approx(1.0, abs=1e-10)
    assert 0.0 <= values[2] <= 1.0 + 1e-12
