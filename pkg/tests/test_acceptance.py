"""Acceptance suite: one pass/fail line per criterion.

Run ``pytest tests/test_acceptance.py -v -s`` to see the lines.  The heavy
fixtures (the parameter-grid discord minimizations and the three figure
presets) are shared across criteria, so the whole module stays well inside
the stated runtime budgets.
"""

import time
from pathlib import Path

import numpy as np
import pytest

from triqdot.cli import main
from triqdot.concurrence import tau3
from triqdot.discord import gqd_minimize
from triqdot.linalg import von_neumann_entropy
from triqdot.model import ModelParams, build_hamiltonian
from triqdot.sweep import DEFAULT_HBAR_OMEGA_MEV, read_csv
from triqdot.thermal import (
    closed_form_elements,
    elements_to_matrix,
    entropy_from_elements,
    gibbs_state,
    validate_blocks,
)

from conftest import ghz_state, random_unitary
from test_concurrence import oracle_tau3

GRID_TEMPS = (1.0, 5.0, 20.0, 50.0, 200.0)
GRID_LAMBDAS = (0.0, 2.0, 5.0, 10.0)
GRID_OMEGAS = (0.0, 2.5, 5.0)
GRID_JZS = (-2.0, 0.0, 2.0)


def report(criterion: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")


@pytest.fixture(scope="module")
def grid_states():
    """Thermal states over the 5 x 4 x 3 x 3 acceptance grid, with timings."""
    t0 = time.perf_counter()
    points = []
    for lam in GRID_LAMBDAS:
        for om in GRID_OMEGAS:
            for jz in GRID_JZS:
                params = ModelParams(hbar_omega=DEFAULT_HBAR_OMEGA_MEV,
                                     hbar_Omega=om, hbar_Jz=jz, hbar_lambda=lam)
                h = build_hamiltonian(params)
                for temp in GRID_TEMPS:
                    points.append((params, temp, gibbs_state(h, temp)))
    return points, time.perf_counter() - t0


@pytest.fixture(scope="module")
def grid_discord(grid_states):
    """Minimized discord for every grid state (shared by criteria 4 and 5)."""
    points, _ = grid_states
    t0 = time.perf_counter()
    results = [(params, temp, rho, gqd_minimize(rho))
               for params, temp, rho in points]
    return results, time.perf_counter() - t0


@pytest.fixture(scope="module")
def preset_runs(tmp_path_factory):
    """CLI figure runs: preset 1 twice (determinism) plus presets 2 and 3."""
    t0 = time.perf_counter()
    dirs = {}
    for label, preset in (("first", 1), ("second", 1), ("two", 2), ("three", 3)):
        out = tmp_path_factory.mktemp(f"preset_{label}")
        assert main(["figure", "--preset", str(preset), "--out", str(out)]) == 0
        dirs[label] = out / f"preset{preset}.csv"
    return dirs, time.perf_counter() - t0


def test_criterion_1_thermal_oracle(grid_states):
    points, elapsed = grid_states
    t0 = time.perf_counter()
    worst = 0.0
    for params, temp, rho in points:
        closed = elements_to_matrix(closed_form_elements(params, temp))
        worst = max(worst, float(np.max(np.abs(rho - closed))))
    elapsed += time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 5.0
    report("1 (thermal closed-form oracle)", ok,
           f"max element-wise gap {worst:.3e} (tol 1e-9) over {len(points)} "
           f"states in {elapsed:.2f} s (budget 5 s)")
    assert worst <= 1e-9
    assert elapsed < 5.0


def test_criterion_2_block_structure(grid_states):
    points, _ = grid_states
    failures = []
    for params, temp, rho in points:
        rep = validate_blocks(rho, tol=1e-10)
        if not rep.ok:
            failures.append((params, temp, rep.violations))
    report("2 (block structure)", not failures,
           f"{len(points) - len(failures)}/{len(points)} states pass the "
           "zero-pattern and degeneracy checks at 1e-10")
    assert not failures, failures[:3]


def test_criterion_3_entropy_closed_form(grid_states):
    points, _ = grid_states
    worst = 0.0
    for params, temp, rho in points:
        gap = abs(entropy_from_elements(closed_form_elements(params, temp))
                  - von_neumann_entropy(rho))
        worst = max(worst, gap)
    report("3 (entropy closed form)", worst <= 1e-9,
           f"max |block-entropy - full-entropy| = {worst:.3e} (tol 1e-9)")
    assert worst <= 1e-9


def test_criterion_4_sigma_z_minimizer(grid_discord):
    results, elapsed = grid_discord
    violations = []
    for params, temp, rho, res in results:
        if abs(res.value - res.closed_form_value) > 1e-4:
            violations.append((params, temp, res))
    for params, temp, res in violations:
        print(f"  z-basis beaten at T={temp} K, lambda={params.hbar_lambda}, "
              f"Omega={params.hbar_Omega}, Jz={params.hbar_Jz}: "
              f"min={res.value:.6f} closed={res.closed_form_value:.6f} "
              f"angles={np.round(res.minimizer, 4)}")
    fraction = 1.0 - len(violations) / len(results)
    ok = fraction >= 0.95 and elapsed < 600.0
    report("4 (z-basis minimizer)", ok,
           f"{100 * fraction:.1f}% of {len(results)} grid points agree within "
           f"1e-4 bits; minimization took {elapsed:.1f} s (budget 600 s)")
    assert fraction >= 0.95
    assert elapsed < 600.0


def test_criterion_5_nonnegativity_and_classical_zero(grid_discord):
    results, _ = grid_discord
    min_discord = min(res.value for _, _, _, res in results)
    worst_zero = 0.0
    for params, temp, rho, res in results:
        if params.hbar_lambda == 0.0:
            worst_zero = max(worst_zero, res.value, tau3(rho))
    mixed = gqd_minimize(np.eye(8, dtype=complex) / 8)
    ok = min_discord >= 0.0 and worst_zero <= 1e-9 and mixed.value <= 1e-9
    report("5 (nonnegativity and classical zeros)", ok,
           f"min discord {min_discord:.2e}; worst lambda=0 correlation "
           f"{worst_zero:.2e}; maximally mixed discord {mixed.value:.2e}")
    assert min_discord >= 0.0
    assert worst_zero <= 1e-9
    assert mixed.value <= 1e-9


def test_criterion_6_tau3_sanity():
    product = np.zeros((8, 8), dtype=complex)
    product[0, 0] = 1.0
    product_value = tau3(product)

    psi = ghz_state()
    rho_ghz = np.outer(psi, psi.conj())
    ghz_value = tau3(rho_ghz)
    oracle_value = oracle_tau3(rho_ghz)

    rng = np.random.default_rng(2024)
    worst_lu = 0.0
    for _ in range(20):
        u = np.kron(np.kron(random_unitary(rng), random_unitary(rng)),
                    random_unitary(rng))
        rotated = u @ rho_ghz @ u.conj().T
        worst_lu = max(worst_lu, abs(tau3(rotated) - ghz_value))

    ok = (product_value == 0.0 and ghz_value > 0.0
          and abs(ghz_value - oracle_value) <= 1e-10 and worst_lu <= 1e-8)
    report("6 (concurrence-bound sanity)", ok,
           f"tau3(|000>)={product_value}; tau3(GHZ)={ghz_value:.12f} vs oracle "
           f"{oracle_value:.12f}; worst local-unitary deviation {worst_lu:.2e}")
    assert product_value == 0.0
    assert ghz_value > 0.0
    assert abs(ghz_value - oracle_value) <= 1e-10
    assert worst_lu <= 1e-8


def test_criterion_7a_monotone_in_transfer(preset_runs):
    dirs, _ = preset_runs
    preset1 = read_csv(dirs["first"])
    # at T = 5 K both measures are non-decreasing in the transfer coupling
    at5 = sorted((r.hbar_lambda, r.discord, r.tau3) for r in preset1 if r.T == 5.0)
    discord_seq = [row[1] for row in at5]
    tau_seq = [row[2] for row in at5]
    ok = (all(b >= a - 1e-9 for a, b in zip(discord_seq, discord_seq[1:]))
          and all(b >= a - 1e-9 for a, b in zip(tau_seq, tau_seq[1:])))
    report("7a (monotone in transfer coupling at 5 K)", ok,
           f"discord {['%.4f' % v for v in discord_seq]}, "
           f"tau3 {['%.4f' % v for v in tau_seq]}")
    assert ok


def test_criterion_7b_field_suppression(preset_runs):
    dirs, _ = preset_runs
    preset1 = read_csv(dirs["first"])
    preset2 = read_csv(dirs["two"])
    # the 2.5 meV field must never raise discord above the zero-field value
    zero_field = {(r.T, r.hbar_lambda): r.discord for r in preset1}
    worst_gap = -np.inf
    violations = 0
    for r in preset2:
        gap = r.discord - zero_field[(r.T, r.hbar_lambda)]
        worst_gap = max(worst_gap, gap)
        if gap > 1e-6:
            violations += 1
    ok = worst_gap <= 1e-6
    report("7b (field suppression)", ok,
           f"max discord(2.5 meV) - discord(0) = {worst_gap:.3e} (tol 1e-6), "
           f"{violations}/{len(preset2)} grid points above tolerance")
    if not ok:
        print("  note: the suppression does hold point-wise for the z-basis "
              "closed form (discord_closed_form_bits column); it is the true "
              "minimized discord that rises with the field at moderate "
              "temperatures, the same effect that breaks criterion 4")
    assert ok


def test_criterion_7c_discord_outlives_bound(preset_runs):
    dirs, _ = preset_runs
    preset3 = read_csv(dirs["three"])
    # at 5 meV field the bound dies while discord survives, for every lambda
    ok = True
    found = {}
    for lam in sorted({r.hbar_lambda for r in preset3}):
        rows = [r for r in preset3 if r.hbar_lambda == lam
                and r.tau3 == 0.0 and r.discord > 1e-3]
        found[lam] = (rows[0].T, rows[0].discord) if rows else None
        ok = ok and bool(rows)
    report("7c (discord outlives the concurrence bound)", ok,
           f"first (T, discord) with tau3 = 0: {found}")
    assert ok


def test_criterion_7_runtime(preset_runs):
    _, elapsed = preset_runs
    ok = elapsed < 900.0
    report("7 (sweep runtime)", ok,
           f"the preset sweeps took {elapsed:.1f} s in total (budget 900 s)")
    assert ok


def test_criterion_8_determinism(preset_runs):
    dirs, _ = preset_runs
    first = Path(dirs["first"]).read_bytes()
    second = Path(dirs["second"]).read_bytes()
    ok = first == second
    report("8 (byte-identical reruns)", ok,
           f"two `figure --preset 1` runs produced {len(first)} identical bytes"
           if ok else "CSV bytes differ between reruns")
    assert ok
