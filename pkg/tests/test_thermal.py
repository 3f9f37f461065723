import math

import numpy as np
import pytest

from triqdot.linalg import assert_density_matrix, von_neumann_entropy
from triqdot.model import K_B_MEV_PER_K, ModelParams, build_hamiltonian
from triqdot.thermal import (
    closed_form_elements,
    elements_to_matrix,
    entropy_from_elements,
    gibbs_state,
    partition_function,
    thermal_state,
    validate_blocks,
)

from conftest import random_density_matrix

#: Parameter grid of the central closed-form oracle.
ORACLE_TEMPS = [0.5, 1.0, 5.0, 20.0, 50.0, 200.0, 500.0]
ORACLE_LAMBDAS = [0.0, 1.0, 5.0, 10.0, 15.0]
ORACLE_OMEGAS = [0.0, 2.5, 5.0]
ORACLE_JZS = [-5.0, -2.0, 0.0, 2.0, 5.0]


def make_params(lam=5.0, om=0.0, jz=0.2, w=1.0) -> ModelParams:
    return ModelParams(hbar_omega=w, hbar_Omega=om, hbar_Jz=jz, hbar_lambda=lam)


class TestPartitionFunction:
    def test_zero_hamiltonian(self):
        assert partition_function(np.zeros((8, 8)), 10.0) == pytest.approx(8.0)

    def test_single_gap(self):
        delta = 3.0
        h = np.diag([0.0] * 7 + [delta])
        t = 12.0
        expected = 7.0 + math.exp(-delta / (K_B_MEV_PER_K * t))
        assert partition_function(h, t) == pytest.approx(expected, rel=1e-12)

    def test_matches_matrix_exponential_oracle(self):
        rng = np.random.default_rng(31)
        h = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        h = h + h.conj().T
        t = 40.0
        # exponentiate through an independent eigendecomposition route
        vals, vecs = np.linalg.eigh(h)
        expm = (vecs * np.exp(-vals / (K_B_MEV_PER_K * t))) @ vecs.conj().T
        assert partition_function(h, t) == pytest.approx(np.trace(expm).real, rel=1e-10)

    def test_rejects_nonpositive_temperature(self):
        with pytest.raises(ValueError):
            partition_function(np.eye(8), 0.0)
        with pytest.raises(ValueError):
            partition_function(np.eye(8), -5.0)


class TestGibbsState:
    def test_infinite_temperature_limit(self):
        h = build_hamiltonian(make_params())
        rho = gibbs_state(h, 1e9)
        assert np.max(np.abs(rho - np.eye(8) / 8)) < 1e-6

    def test_ground_state_limit(self):
        # a strong field splits the spectrum with a unique ground state |111>
        p = make_params(lam=0.0, om=5.0, jz=0.0, w=1.0)
        rho = gibbs_state(build_hamiltonian(p), 0.1)
        expected = np.zeros((8, 8), dtype=complex)
        expected[7, 7] = 1.0
        assert np.max(np.abs(rho - expected)) < 1e-8

    def test_valid_density_matrix(self):
        rho = thermal_state(make_params(), 5.0)
        assert_density_matrix(rho)

    def test_rejects_nonpositive_temperature(self):
        with pytest.raises(ValueError):
            gibbs_state(np.eye(8), -1.0)


class TestClosedFormElements:
    def test_infinite_temperature_uniformity(self):
        e = closed_form_elements(make_params(), 1e12)
        assert e.rho11 == pytest.approx(0.125, abs=1e-9)
        assert e.rho22 == pytest.approx(0.125, abs=1e-9)
        assert e.rho44 == pytest.approx(0.125, abs=1e-9)
        assert e.rho88 == pytest.approx(0.125, abs=1e-9)
        assert abs(e.rho23) < 1e-9
        assert abs(e.rho46) < 1e-9

    def test_no_transfer_kills_coherences(self):
        e = closed_form_elements(make_params(lam=0.0), 3.0)
        assert e.rho23 == 0.0
        assert e.rho46 == 0.0

    def test_generic_point_matches_gibbs(self):
        p = make_params(lam=7.0, om=2.5, jz=-1.0, w=1.3)
        rho = gibbs_state(build_hamiltonian(p), 9.0)
        diff = np.max(np.abs(rho - elements_to_matrix(closed_form_elements(p, 9.0))))
        assert diff < 1e-12

    def test_central_oracle_grid(self):
        # the module's central oracle: closed forms against numerically
        # exponentiated Gibbs states across the whole parameter domain
        worst = 0.0
        for t in ORACLE_TEMPS:
            for lam in ORACLE_LAMBDAS:
                for om in ORACLE_OMEGAS:
                    for jz in ORACLE_JZS:
                        p = make_params(lam=lam, om=om, jz=jz, w=1.0)
                        rho = gibbs_state(build_hamiltonian(p), t)
                        e = closed_form_elements(p, t)
                        worst = max(worst, float(np.max(np.abs(rho - elements_to_matrix(e)))))
        assert worst < 1e-9

    def test_low_temperature_log_space_path(self):
        # large beta times a large exciton energy must not overflow
        p = make_params(lam=5.0, om=0.0, jz=0.2, w=1000.0)
        e = closed_form_elements(p, 0.1)
        assert e.rho88 == pytest.approx(1.0, abs=1e-12)
        assert e.rho11 == 0.0
        rho = gibbs_state(build_hamiltonian(p), 0.1)
        assert np.max(np.abs(rho - elements_to_matrix(e))) < 1e-12

    def test_trace_identity(self):
        e = closed_form_elements(make_params(lam=4.0, om=1.0), 6.0)
        assert e.trace() == pytest.approx(1.0, abs=1e-10)
        assert 0.0 <= e.rho11 <= 1.0
        assert 0.0 <= e.rho88 <= 1.0


class TestValidateBlocks:
    def test_gibbs_state_passes(self):
        rho = thermal_state(make_params(lam=8.0, om=2.5), 2.0)
        report = validate_blocks(rho)
        assert report.ok
        assert report.violations == ()

    def test_corrupted_entry_is_named(self):
        rho = thermal_state(make_params(), 5.0).copy()
        rho[1, 3] += 0.01  # 1-based entry (2,4), outside the block pattern
        report = validate_blocks(rho)
        assert not report.ok
        assert any("(2,4)" in v for v in report.violations)

    def test_maximally_mixed_passes_with_zero_coherences(self):
        report = validate_blocks(np.eye(8, dtype=complex) / 8)
        assert report.ok
        assert report.elements.rho23 == pytest.approx(0.0, abs=1e-15)
        assert report.elements.rho46 == pytest.approx(0.0, abs=1e-15)

    def test_unequal_diagonals_flagged(self):
        rho = np.eye(8, dtype=complex) / 8
        rho[1, 1] += 0.004
        rho[2, 2] -= 0.004
        report = validate_blocks(rho)
        assert not report.ok
        assert any("one-excitation diagonal" in v for v in report.violations)


class TestThermalInvariants:
    def test_state_invariants_on_grid(self):
        for t in (0.5, 5.0, 50.0):
            for lam in (0.0, 5.0, 15.0):
                rho = thermal_state(make_params(lam=lam, om=2.5), t)
                assert_density_matrix(rho)
                assert validate_blocks(rho).ok

    def test_permutation_symmetry(self):
        from triqdot.linalg import site_permutation_matrix

        rho = thermal_state(make_params(lam=6.0, om=1.0), 4.0)
        for order in [(2, 3, 1), (3, 2, 1), (1, 3, 2)]:
            perm = site_permutation_matrix(order)
            assert np.max(np.abs(perm @ rho @ perm.conj().T - rho)) < 1e-10

    def test_entropy_monotone_in_temperature(self):
        p = make_params(lam=5.0, om=2.5)
        h = build_hamiltonian(p)
        temps = np.geomspace(0.5, 500.0, 25)
        entropies = [von_neumann_entropy(gibbs_state(h, t)) for t in temps]
        for lo, hi in zip(entropies, entropies[1:]):
            assert hi >= lo - 1e-10

    def test_entropy_closed_form_matches_full(self):
        for t in (1.0, 5.0, 50.0):
            p = make_params(lam=9.0, om=2.5, jz=-2.0)
            rho = thermal_state(p, t)
            e = closed_form_elements(p, t)
            assert entropy_from_elements(e) == pytest.approx(
                von_neumann_entropy(rho), abs=1e-9)

    def test_validate_blocks_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            validate_blocks(np.eye(4))

    def test_random_state_fails_block_check(self):
        rng = np.random.default_rng(55)
        report = validate_blocks(random_density_matrix(rng, 8))
        assert not report.ok
