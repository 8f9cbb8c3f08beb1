"""Oracle-equivalence suites.

Each suite pits a closed-form expression against an independent route to
the same number (brute-force simulation, matrix exponential, RK4) and
reports the worst deviation.  The command line's ``verify`` subcommand is
a thin wrapper around ``run_suites``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import fock, lindblad, lqs, nqs


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_dev: float
    tolerance: float
    detail: str


def _random_density(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = a @ a.conj().T
    return fock.DensityMatrix(rho / np.trace(rho).real)


def _random_lqs_params(rng):
    alpha = rng.uniform(1e-3, 3.0)
    eta = rng.uniform(1e-3, 1.0)
    gamma_bs = rng.uniform(0.0, 0.3)
    r_sq = rng.uniform(1e-6, 1.0 - gamma_bs)
    return lqs.LqsParams(alpha=alpha, eta=eta, gamma_bs=gamma_bs, r_mag=np.sqrt(r_sq))


def suite_lqs_identity(seed=1234, draws=1000):
    """Unsimplified norm/overlap fidelity vs the simplified closed form."""
    rng = np.random.default_rng(seed)
    dev = 0.0
    for _ in range(draws):
        p = _random_lqs_params(rng)
        dev = max(dev, abs(lqs.fidelity_unsimplified(p) - lqs.fidelity_closed_form(p)))
    return SuiteResult("lqs-identity", dev < 1e-12, dev, 1e-12, f"{draws} random draws")


def suite_lqs_ppb(seed=None):
    """Closed form at Gamma=0, 50/50 split vs the projection-synthesis formula."""
    dev = 0.0
    r = np.sqrt(0.5)
    for alpha in np.linspace(0.05, 2.0, 21):
        for eta in np.linspace(0.05, 1.0, 11):
            p = lqs.LqsParams(alpha=alpha, eta=eta, gamma_bs=0.0, r_mag=r)
            dev = max(dev, abs(lqs.fidelity_closed_form(p) - lqs.fidelity_ppb(alpha, eta)))
    unity = abs(lqs.fidelity_closed_form(lqs.LqsParams(alpha=1.3, eta=1.0, gamma_bs=0.0, r_mag=r)) - 1.0)
    dev = max(dev, unity)
    return SuiteResult("lqs-ppb", dev < 1e-12, dev, 1e-12, "21x11 grid + unity at eta=1")


def suite_lqs_gram(seed=1234, draws=100):
    """Environment-mode Gram oracle vs closed-form N and F."""
    rng = np.random.default_rng(seed)
    dev = 0.0
    for _ in range(draws):
        p = _random_lqs_params(rng)
        n_oracle, f_oracle = lqs.env_gram_oracle(p)
        a2 = abs(p.alpha) ** 2
        n_closed = 1.0 / np.sqrt(
            p.eta * p.r_mag**2 * a2 * np.exp(p.x * a2)
            * (p.t**2 * (1 / a2 + 1) + p.r_mag**2 * p.x + p.gamma_bs)
        )
        dev = max(dev, abs(n_oracle - n_closed), abs(f_oracle - lqs.fidelity_closed_form(p)))
    return SuiteResult("lqs-gram", dev < 1e-10, dev, 1e-10, f"{draws} random draws, N and F")


def suite_lqs_projection(seed=None):
    """Full Fock-space pipeline vs the two-level closed forms."""
    dev = 0.0
    r5 = np.sqrt(0.5)
    for alpha in (0.2, 0.5, 0.8, 1.0):
        psi, _ = lqs.lqs_projection_oracle(alpha, r5, 1j * r5, 15)
        target = fock.truncated_coherent_state(alpha)
        phase = psi.amplitudes[0] / abs(psi.amplitudes[0])
        dev = max(dev, float(np.max(np.abs(psi.amplitudes / phase - target.amplitudes))))
    t1, r1 = np.sqrt(0.6), 1j * np.sqrt(0.4)
    t2, r2 = np.sqrt(0.3), 1j * np.sqrt(0.7)
    psi, _ = lqs.lqs_projection_oracle(0.9, t1, r1, 15, t2, r2)
    target = lqs.truncated_state_general_bs(0.9, t1, r1, t2, r2)
    phase = psi.amplitudes[0] / abs(psi.amplitudes[0])
    dev = max(dev, float(np.max(np.abs(psi.amplitudes / phase - target.amplitudes))))
    return SuiteResult("lqs-projection", dev < 1e-10, dev, 1e-10, "|alpha| <= 1, cutoff 15")


def suite_nqs_limits(seed=1234):
    """Thermal solution at nbar=0 vs zero-T solution vs pure Kerr phases."""
    rng = np.random.default_rng(seed)
    rho = _random_density(rng, 16)
    p0 = nqs.NqsParams(epsilon=0.1, kicks=0, cutoff=15, lam=0.2, nbar=0.0)
    a = nqs.analytic_damped_step_thermal(rho, 1.3, p0)
    b = nqs.analytic_damped_step_zero_T(rho, 1.3, p0)
    dev_a = float(np.max(np.abs(a.elements - b.elements)))
    p_tiny = nqs.NqsParams(epsilon=0.1, kicks=0, cutoff=15, lam=1e-12, nbar=0.0)
    c = nqs.analytic_damped_step_zero_T(rho, 0.7, p_tiny)
    d = nqs.unitary_kerr_step(rho, 0.7)
    dev_b = float(np.max(np.abs(c.elements - d.elements)))
    passed = dev_a < 1e-12 and dev_b < 1e-8
    return SuiteResult(
        "nqs-limits", passed, max(dev_a, dev_b), 1e-8,
        f"nbar=0 chain {dev_a:.2e} (tol 1e-12), lambda->0 chain {dev_b:.2e} (tol 1e-8)",
    )


def suite_nqs_rk4(seed=None):
    """Analytic damped steps vs fixed-step RK4 integration of the master equation."""
    dev_zero = 0.0
    coh, _ = fock.coherent_state(0.6, 20)
    rho0 = coh.density_matrix()
    for lam in (0.01, 0.05, 0.1):
        p = nqs.NqsParams(epsilon=0.1, kicks=0, cutoff=20, lam=lam, nbar=0.0)
        ana = nqs.analytic_damped_step_zero_T(rho0, 2.0, p)
        ref = lindblad.integrate(rho0, 2.0, p, lindblad.IntegratorConfig(dt=1e-3))
        dev_zero = max(dev_zero, float(np.max(np.abs(ana.elements - ref.elements))))
    dev_th = 0.0
    coh8, _ = fock.coherent_state(0.8, 25)
    rho0 = coh8.density_matrix()
    for nbar in (0.1, 0.3):
        p = nqs.NqsParams(epsilon=0.1, kicks=0, cutoff=25, lam=0.1, nbar=nbar)
        ana = nqs.analytic_damped_step_thermal(rho0, 1.0, p)
        ref = lindblad.integrate(rho0, 1.0, p, lindblad.IntegratorConfig(dt=5e-4))
        dev_th = max(dev_th, float(np.max(np.abs(ana.elements - ref.elements))))
    passed = dev_zero < 1e-6 and dev_th < 1e-5
    return SuiteResult(
        "nqs-rk4", passed, max(dev_zero, dev_th), 1e-5,
        f"zero-T {dev_zero:.2e} (tol 1e-6), thermal {dev_th:.2e} (tol 1e-5)",
    )


def suite_nqs_kick(seed=None):
    """Closed-form kick matrix vs the exponentiated displacement generator."""
    dev = 0.0
    cutoff = 30
    a = fock.annihilation_matrix(cutoff)
    interior = slice(0, cutoff - 10 + 1)
    for eps in (0.05, 0.1, 0.5):
        closed = nqs.kick_unitary(eps, cutoff)
        brute = expm(-1j * eps * (a + a.conj().T))
        dev = max(dev, float(np.max(np.abs(closed[interior, interior] - brute[interior, interior]))))
    eps = 0.1
    p = nqs.NqsParams(epsilon=eps, kicks=1, cutoff=15, lam=0.0)
    rec = nqs.evolve_kicked(p)[1]
    closed_f = np.exp(-eps**2) * (np.cos(eps) + eps * np.sin(eps)) ** 2
    dev_f = abs(rec.fidelity - closed_f)
    passed = dev < 1e-10 and dev_f < 1e-12
    return SuiteResult(
        "nqs-kick", passed, max(dev, dev_f), 1e-10,
        f"matrix {dev:.2e} (tol 1e-10), single-kick fidelity {dev_f:.2e} (tol 1e-12)",
    )


SUITES = {
    "lqs-identity": suite_lqs_identity,
    "lqs-ppb": suite_lqs_ppb,
    "lqs-gram": suite_lqs_gram,
    "lqs-projection": suite_lqs_projection,
    "nqs-limits": suite_nqs_limits,
    "nqs-rk4": suite_nqs_rk4,
    "nqs-kick": suite_nqs_kick,
}


def run_suites(names=None, seed=1234):
    """Run the named suites (all by default) and return their results."""
    if names is None:
        names = list(SUITES)
    results = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        results.append(SUITES[name](seed))
    return results
