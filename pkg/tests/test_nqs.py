"""Tests for kicked damped-Kerr evolution: exact steps, kicks, trajectories."""

import numpy as np
import pytest
from scipy.constants import hbar, k as k_B
from scipy.linalg import expm

from qscissors.fock import (
    CutoffError,
    DensityMatrix,
    annihilation_matrix,
    coherent_state,
    fidelity,
    nqs_target_state,
)
from qscissors.nqs import (
    NqsParams,
    analytic_damped_step_thermal,
    analytic_damped_step_zero_T,
    apply_kick,
    evolve_kicked,
    kick_unitary,
    nbar_from_temperature,
    truncation_fidelity,
    unitary_kerr_step,
)


def _random_density(seed, dim):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = A @ A.conj().T
    return DensityMatrix(rho / np.trace(rho).real)


def test_params_rate_resolution():
    p = NqsParams(epsilon=0.1, kicks=5, cutoff=10, lam=0.02)
    assert p.gamma == pytest.approx(0.02)
    p = NqsParams(epsilon=0.1, kicks=5, cutoff=10, gamma=0.06, kappa=2.0)
    assert p.lam == pytest.approx(0.03)
    p = NqsParams(epsilon=0.1, kicks=5, cutoff=10)
    assert p.lam == 0.0 and p.gamma == 0.0
    with pytest.raises(ValueError):
        NqsParams(epsilon=0.1, kicks=5, cutoff=10, gamma=0.06, lam=0.01, kappa=2.0)
    with pytest.raises(ValueError):
        NqsParams(epsilon=0.1, kicks=5, cutoff=10, lam=-0.1)
    with pytest.raises(ValueError):
        NqsParams(epsilon=0.1, kicks=5, cutoff=0)
    with pytest.warns(UserWarning):
        NqsParams(epsilon=0.5, kicks=1, cutoff=10)


def test_kerr_step_phases():
    rho = _random_density(7, 6)
    out = unitary_kerr_step(rho, 0.9)
    n = np.arange(6)
    for i in range(6):
        for j in range(6):
            ph = np.exp(-0.5j * (n[i] * (n[i] - 1) - n[j] * (n[j] - 1)) * 0.9)
            assert abs(out.elements[i, j] - ph * rho.elements[i, j]) < 1e-12
    # diagonal untouched, trace and purity conserved
    assert out.trace == pytest.approx(rho.trace, abs=1e-12)
    assert out.purity == pytest.approx(rho.purity, abs=1e-12)


def test_kerr_step_matches_expm():
    d = 8
    rho = _random_density(8, d)
    a = annihilation_matrix(d - 1)
    kerr = a.conj().T @ a.conj().T @ a @ a
    U = expm(-0.5j * kerr * 1.3)
    want = U @ rho.elements @ U.conj().T
    got = unitary_kerr_step(rho, 1.3)
    assert np.max(np.abs(got.elements - want)) < 1e-12


def test_thermal_step_agrees_with_zero_T_route():
    rho = _random_density(9, 12)
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=11, lam=0.25, nbar=0.0)
    a = analytic_damped_step_thermal(rho, 1.4, p)
    b = analytic_damped_step_zero_T(rho, 1.4, p)
    assert np.max(np.abs(a.elements - b.elements)) < 1e-12


def test_damped_step_lambda_to_zero_limit():
    rho = _random_density(10, 10)
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=9, lam=1e-12)
    a = analytic_damped_step_zero_T(rho, 0.8, p)
    b = unitary_kerr_step(rho, 0.8)
    assert np.max(np.abs(a.elements - b.elements)) < 1e-8


def test_damped_step_dispatches_lambda_zero():
    rho = _random_density(12, 8)
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=7, lam=0.0)
    a = analytic_damped_step_thermal(rho, 0.6, p)
    b = unitary_kerr_step(rho, 0.6)
    assert np.max(np.abs(a.elements - b.elements)) == 0.0


def test_zero_T_step_rejects_thermal_params():
    rho = _random_density(13, 6)
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=5, lam=0.1, nbar=0.5)
    with pytest.raises(ValueError):
        analytic_damped_step_zero_T(rho, 1.0, p)


def test_damped_step_trace_preserving_and_decaying():
    rho = _random_density(14, 10)
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=9, lam=0.3)
    out = analytic_damped_step_zero_T(rho, 2.0, p)
    assert out.trace == pytest.approx(rho.trace, abs=1e-10)
    assert out.mean_photon_number() < rho.mean_photon_number()


def test_thermal_step_relaxes_toward_nbar():
    # long evolution drives any state to the thermal occupation
    nbar = 0.4
    rho = DensityMatrix(np.diag([0.0, 0.0, 0.0, 1.0] + [0.0] * 21))
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=24, lam=0.5, nbar=nbar)
    out = analytic_damped_step_thermal(rho, 80.0, p)
    assert out.mean_photon_number() == pytest.approx(nbar, abs=1e-6)
    # populations follow the Bose ratio
    pops = np.diag(out.elements).real
    assert pops[1] / pops[0] == pytest.approx(nbar / (nbar + 1), abs=1e-6)


def test_thermal_step_cutoff_error_on_top_heavy_state():
    rho = DensityMatrix(np.diag([0.0, 0.0, 0.0, 1.0]))
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=3, lam=1.0, nbar=1.0)
    with pytest.raises(CutoffError):
        analytic_damped_step_thermal(rho, 1.0, p)


def test_kick_unitary_is_unitary_and_symmetric():
    for eps in (0.05, 0.3):
        U = kick_unitary(eps, 25)
        # interior unitarity; the last rows feel the cutoff
        G = U.conj().T @ U
        assert np.max(np.abs(G[:15, :15] - np.eye(25 + 1)[:15, :15])) < 1e-10
        for n in range(10):
            for m in range(10):
                assert abs(U[n, m] - (-1) ** (n - m) * np.conj(U[m, n])) < 1e-14


def test_kick_matches_displacement_expm():
    eps = 0.2
    d = 26
    a = annihilation_matrix(d - 1)
    want = expm(-1j * eps * (a + a.conj().T))
    got = kick_unitary(eps, d - 1)
    assert np.max(np.abs(got[:16, :16] - want[:16, :16])) < 1e-10


def test_kick_on_vacuum_closed_form_fidelity():
    eps = 0.12
    rho = DensityMatrix(np.diag([1.0] + [0.0] * 20))
    out = apply_kick(rho, kick_unitary(eps, 20))
    want = np.exp(-eps**2) * (np.cos(eps) + eps * np.sin(eps)) ** 2
    assert abs(truncation_fidelity(out, 1, eps) - want) < 1e-13


def test_apply_kick_dimension_mismatch():
    rho = _random_density(15, 5)
    with pytest.raises(ValueError):
        apply_kick(rho, kick_unitary(0.1, 10))


def test_truncation_fidelity_matches_target_overlap():
    rho = _random_density(16, 8)
    for k in (0, 1, 4):
        want = fidelity(nqs_target_state(k, 0.13), rho)
        assert abs(truncation_fidelity(rho, k, 0.13) - want) < 1e-12


def test_evolve_kicked_record_structure():
    p = NqsParams(epsilon=0.1, kicks=4, cutoff=12, lam=0.02)
    recs = evolve_kicked(p)
    assert len(recs) == 2 * 4 + 1
    assert recs[0].tau == 0.0 and recs[0].kick_index == 0
    assert recs[0].fidelity == pytest.approx(1.0)
    # kick happens first: records at tau = (k-1) tau_k, then k tau_k
    assert recs[1].tau == 0.0 and recs[1].kick_index == 1
    assert recs[2].tau == pytest.approx(1.0) and recs[2].kick_index == 1
    assert recs[-1].tau == pytest.approx(4.0) and recs[-1].kick_index == 4
    for r in recs:
        assert abs(r.trace - 1.0) < 1e-8
        assert 0.0 <= r.fidelity <= 1.0


def test_evolve_kicked_zero_kicks():
    p = NqsParams(epsilon=0.1, kicks=0, cutoff=8)
    recs = evolve_kicked(p)
    assert len(recs) == 1
    assert recs[0].fidelity == pytest.approx(1.0)


def test_evolve_kicked_confines_to_qubit_subspace():
    p = NqsParams(epsilon=0.1, kicks=10, cutoff=15, lam=0.05)
    recs = evolve_kicked(p)
    tail = np.diag(recs[-1].rho.elements).real[2:].sum()
    assert tail < 0.02
    assert recs[-1].fidelity > 0.9


def test_evolve_kicked_initial_state_padding():
    small = DensityMatrix(np.diag([0.4, 0.6]))
    p = NqsParams(epsilon=0.05, kicks=1, cutoff=10, lam=0.01)
    recs = evolve_kicked(p, initial=small)
    assert recs[0].rho.dim == 11
    assert recs[0].rho.elements[1, 1].real == pytest.approx(0.6)
    big = DensityMatrix(np.eye(20) / 20)
    with pytest.raises(ValueError):
        evolve_kicked(p, initial=big)


def test_evolve_kicked_thermal_cutoff_warning():
    p = NqsParams(epsilon=0.05, kicks=1, cutoff=12, lam=0.05, nbar=0.2)
    with pytest.warns(UserWarning):
        evolve_kicked(p)


def test_nbar_from_temperature():
    assert nbar_from_temperature(1e10, 0.0) == 0.0
    # high-temperature limit nbar ~ k_B T / (hbar omega)
    omega, T = 2 * np.pi * 5e9, 10.0
    classical = k_B * T / (hbar * omega)
    got = nbar_from_temperature(omega, T)
    assert got == pytest.approx(classical - 0.5, rel=1e-2)
    # deep quantum regime underflows to zero occupation
    assert nbar_from_temperature(1e15, 1e-3) == 0.0
    with pytest.raises(ValueError):
        nbar_from_temperature(-1.0, 1.0)
    with pytest.raises(ValueError):
        nbar_from_temperature(1e9, -1.0)


def test_nbar_specific_ratios():
    omega = 2 * np.pi * 1e9
    T = hbar * omega / (k_B * np.log(2))  # excitation gap = k_B T ln 2
    assert nbar_from_temperature(omega, T) == pytest.approx(1.0, abs=1e-12)
    T = hbar * omega / k_B  # gap exactly k_B T
    assert nbar_from_temperature(omega, T) == pytest.approx(1 / (np.e - 1), abs=1e-12)


def test_kerr_step_qubit_block_frozen():
    # n(n-1) vanishes on {0, 1}, so the qubit corner never dephases; the
    # 0-2 coherence flips sign at tau = pi
    rho = _random_density(21, 6)
    out = unitary_kerr_step(rho, 2.37)
    assert np.max(np.abs(out.elements[:2, :2] - rho.elements[:2, :2])) < 1e-15
    out = unitary_kerr_step(rho, np.pi)
    assert abs(out.elements[0, 2] + rho.elements[0, 2]) < 1e-15


def test_kick_unitary_low_order_elements():
    eps = 0.17
    U = kick_unitary(eps, 12)
    front = np.exp(-eps**2 / 2)
    assert abs(U[0, 0] - front) < 1e-14
    # the displacement generator -i eps (a + a^dag) is symmetric, so both
    # off-diagonal first-order elements carry the same -i eps factor
    assert abs(U[1, 0] + 1j * eps * front) < 1e-14
    assert abs(U[0, 1] - U[1, 0]) < 1e-14


def test_apply_kick_vacuum_population_and_identity():
    rho = DensityMatrix(np.diag([1.0] + [0.0] * 15))
    eps = 0.21
    out = apply_kick(rho, kick_unitary(eps, 15))
    assert abs(out.elements[0, 0].real - np.exp(-eps**2)) < 1e-13
    out = apply_kick(rho, kick_unitary(0.0, 15))
    assert np.max(np.abs(out.elements - rho.elements)) < 1e-15


def test_zero_T_single_photon_decay():
    lam, tau = 0.2, 3.0
    rho = DensityMatrix(np.diag([0.0, 1.0, 0.0, 0.0]))
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=3, lam=lam)
    out = analytic_damped_step_zero_T(rho, tau, p)
    assert abs(out.elements[1, 1].real - np.exp(-lam * tau)) < 1e-12
    assert abs(out.elements[0, 0].real - (1 - np.exp(-lam * tau))) < 1e-12


def test_zero_T_full_relaxation():
    # lambda tau = 40 empties everything into the vacuum
    v, _ = coherent_state(0.5, 8)
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=8, lam=20.0)
    out = analytic_damped_step_zero_T(v.density_matrix(), 2.0, p)
    want = np.zeros((9, 9))
    want[0, 0] = 1.0
    assert np.max(np.abs(out.elements - want)) < 1e-8


def test_thermal_step_vacuum_stationary_at_zero_temperature():
    rho = DensityMatrix(np.diag([1.0, 0.0, 0.0, 0.0, 0.0]))
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=4, lam=0.7)
    out = analytic_damped_step_thermal(rho, 1.9, p)
    assert np.max(np.abs(out.elements - rho.elements)) < 1e-13


def test_truncation_fidelity_one_photon_quarter_turn():
    rho = DensityMatrix(np.diag([0.0, 1.0, 0.0]))
    assert truncation_fidelity(rho, 1, np.pi / 2) == pytest.approx(1.0, abs=1e-12)
    assert truncation_fidelity(rho, 0, 0.3) == 0.0
