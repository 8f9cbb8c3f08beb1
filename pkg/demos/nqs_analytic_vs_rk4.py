"""Time the exact damped-Kerr propagator against brute-force integration.

The free evolution between kicks has a per-diagonal closed-form solution.
This script evolves a coherent state through one damped segment twice -
once with the exact propagator, once with fixed-step RK4 on the master
equation - and reports agreement and wall time for both reservoirs.
"""

import time

import numpy as np

from qscissors import (
    IntegratorConfig,
    NqsParams,
    analytic_damped_step_thermal,
    analytic_damped_step_zero_T,
    coherent_state,
    integrate,
)


def compare(label, rho0, tau, p, step_fn, cfg):
    t0 = time.perf_counter()
    exact = step_fn(rho0, tau, p)
    t_exact = time.perf_counter() - t0
    t0 = time.perf_counter()
    rk4 = integrate(rho0, tau, p, cfg)
    t_rk4 = time.perf_counter() - t0
    dev = np.max(np.abs(exact.elements - rk4.elements))
    print(f"  {label}")
    print(f"    max |exact - RK4|   {dev:.3e}")
    print(f"    exact step          {t_exact * 1e3:8.2f} ms")
    print(f"    RK4 (dt = {cfg.dt:.0e})  {t_rk4 * 1e3:8.2f} ms")
    print(f"    mean photon number  {rho0.mean_photon_number():.4f} -> "
          f"{exact.mean_photon_number():.4f}")
    print()


def main():
    print("Exact damped-Kerr step vs RK4 master-equation integration")
    print()
    coh, _ = coherent_state(0.6, 20)
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=20, lam=0.05)
    compare("zero-temperature reservoir: alpha = 0.6, lambda = 0.05, tau = 2",
            coh.density_matrix(), 2.0, p, analytic_damped_step_zero_T,
            IntegratorConfig(dt=1e-3))
    coh, _ = coherent_state(0.8, 25)
    p = NqsParams(epsilon=0.1, kicks=1, cutoff=25, lam=0.1, nbar=0.3)
    compare("thermal reservoir: alpha = 0.8, lambda = 0.1, nbar = 0.3, tau = 1",
            coh.density_matrix(), 1.0, p, analytic_damped_step_thermal,
            IntegratorConfig(dt=5e-4))
    print("The exact step is orders of magnitude faster and agrees with the")
    print("integrator to within its discretization error; it is what the")
    print("kicked-protocol driver uses between kicks.")


if __name__ == "__main__":
    main()
