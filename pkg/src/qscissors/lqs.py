"""Linear quantum scissors: projection synthesis with loss and inefficiency.

A single photon split on one beam splitter, recombined with a coherent beam
on a second, and conditioned on detecting exactly one photon in one output
and none in the other truncates the coherent state to its {|0>, |1>} part.
This module carries the closed-form fidelities for lossy beam splitters and
inefficient detectors, plus two independent brute-force oracles: a full
Fock-space simulation of the lossless pipeline and an explicit environment-
mode realization of the Langevin noise operators.
"""

import math
from dataclasses import dataclass

import numpy as np

from .fock import (
    CutoffError,
    FockVector,
    MultiModeState,
    beam_splitter_unitary,
    coherent_state,
    project_and_renormalize,
)

_COEF_TOL = 1e-10


@dataclass
class LqsParams:
    """Scissors parameters: identical lossy BSs and finite-efficiency detectors.

    The BS convention is t real, r = i*r_mag, which keeps the phase-noise
    coefficient Omega = t r^* + t^* r identically zero.  Amplitude loss per
    BS is Gamma = 1 - t^2 - r_mag^2; any two of (t, r_mag, gamma_bs)
    determine the third.
    """

    alpha: complex
    eta: float = 1.0
    t: float | None = None
    r_mag: float | None = None
    gamma_bs: float | None = None

    def __post_init__(self):
        given = [v is not None for v in (self.t, self.r_mag, self.gamma_bs)]
        if sum(given) < 2:
            raise ValueError("supply at least two of (t, r_mag, gamma_bs)")
        if self.gamma_bs is None:
            self.gamma_bs = 1.0 - self.t**2 - self.r_mag**2
        elif self.t is None:
            self.t = math.sqrt(1.0 - self.gamma_bs - self.r_mag**2)
        elif self.r_mag is None:
            self.r_mag = math.sqrt(1.0 - self.gamma_bs - self.t**2)
        resid = abs(self.t**2 + self.r_mag**2 + self.gamma_bs - 1.0)
        if resid > 1e-10:
            raise ValueError(f"t^2 + r_mag^2 + Gamma = {1 + resid:.12f}, must be 1")
        if not 0.0 <= self.t <= 1.0 or not 0.0 <= self.r_mag <= 1.0:
            raise ValueError("t and r_mag must lie in [0, 1]")
        if self.gamma_bs < -1e-12:
            raise ValueError("Gamma must be nonnegative")
        self.gamma_bs = max(self.gamma_bs, 0.0)
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must lie in (0, 1]")

    @property
    def r(self):
        """Complex reflection coefficient i*r_mag."""
        return 1j * self.r_mag

    @property
    def x(self):
        """Detector-dressed loss commutator eta*Gamma + (1 - eta)."""
        return self.eta * self.gamma_bs + 1.0 - self.eta

    @property
    def omega(self):
        """Phase-noise coefficient t r^* + t^* r; zero by the convention here."""
        return 0.0


def truncated_state_general_bs(alpha, t1, r1, t2, r2):
    """Scissors output for two distinct lossless BSs, as a two-level state.

    Amplitudes are proportional to (|r1 t2|, alpha |r2 t1|).
    """
    for t, r in ((t1, r1), (t2, r2)):
        if abs(abs(t) ** 2 + abs(r) ** 2 - 1.0) > _COEF_TOL:
            raise ValueError(f"BS pair (t={t}, r={r}) is not lossless")
    c0 = abs(r1) * abs(t2)
    c1 = alpha * abs(r2) * abs(t1)
    norm = math.hypot(c0, abs(c1))
    if norm < 1e-15:
        raise ValueError("degenerate beam splitters: output has no amplitude")
    return FockVector(np.array([c0, c1], dtype=complex) / norm)


def fidelity_closed_form(p):
    """Truncation fidelity of the lossy scissors, simplified form.

    Exactly 1 at alpha = 0 (vacuum truncates to itself).
    """
    a2 = abs(p.alpha) ** 2
    if a2 == 0:
        return 1.0
    R = 1.0 / a2
    loss = p.x * p.r_mag**2 + p.gamma_bs
    return 1.0 - loss / ((1.0 + R) * (loss + p.t**2 * (1.0 + R)))


def fidelity_unsimplified(p):
    """Truncation fidelity assembled from the normalization and overlap forms.

    Same quantity as fidelity_closed_form, kept deliberately unsimplified
    (exponentials and the norm factor intact) as an internal consistency
    route.
    """
    a2 = abs(p.alpha) ** 2
    if a2 == 0:
        return 1.0
    r2, t2, x, G = p.r_mag**2, p.t**2, p.x, p.gamma_bs
    n2_inv = p.eta * r2 * a2 * math.exp(x * a2) * (t2 * (1.0 / a2 + 1.0) + r2 * x + G)
    overlap = p.eta * r2 * math.exp(x * a2) * (t2 * (a2 + 1.0) + a2 * (r2 * x + G) / (1.0 + a2))
    return overlap / n2_inv


def fidelity_ppb(alpha, eta):
    """Projection-synthesis fidelity for lossless BSs at 50/50 split."""
    a2 = abs(alpha) ** 2
    return 1.0 - a2**2 * (1.0 - eta) / ((1.0 + a2) * (1.0 + a2 * (2.0 - eta)))


def _env_exp_vector(beta, dim):
    """Components of exp(beta c^dag)|0>: beta^n/sqrt(n!), unnormalized."""
    n = np.arange(dim)
    logw = np.array([0.5 * math.lgamma(k + 1) for k in n])
    return np.asarray(beta, dtype=complex) ** n * np.exp(-logw)


def env_gram_oracle(p, env_cutoff=None):
    """Normalization and fidelity from explicit environment modes.

    The Langevin noise operators of the lossy-BS/inefficient-detector chain
    are realized as creation operators on three fresh bosonic modes: one
    with commutator Gamma (photon lost at the first BS) and two with
    commutator x = eta*Gamma + 1 - eta (loss dressed by the detector) on
    the one-photon and coherent paths.  The two environment bundles that
    multiply |0>_b1 and |1>_b1 are built as explicit state vectors, the
    normalization follows from <psi|psi> = 1, and the fidelity from the
    squared overlap with the ideal truncated state.

    Returns (N, F).  env_cutoff bounds the coherent-like environment mode;
    when omitted it is chosen so the neglected tail is below 1e-12 of
    e^{x|alpha|^2}.
    """
    alpha = complex(p.alpha)
    a2 = abs(alpha) ** 2
    x, G = p.x, p.gamma_bs
    beta = alpha * math.sqrt(x)
    b2 = abs(beta) ** 2
    if env_cutoff is None:
        env_cutoff = 8
        while b2 ** (env_cutoff + 1) / math.factorial(env_cutoff + 1) > 1e-12 * math.exp(b2):
            env_cutoff += 1
    tail = math.exp(b2) - sum(b2**k / math.factorial(k) for k in range(env_cutoff + 1))
    if tail > 1e-10 * math.exp(b2):
        raise CutoffError(f"env_cutoff {env_cutoff} leaves tail {tail:.3e} of e^(x|a|^2)")
    dims = (2, 2, env_cutoff + 1)
    v3 = _env_exp_vector(beta, env_cutoff + 1)
    g0 = np.array([1.0, 0.0], dtype=complex)
    g1 = np.array([0.0, 1.0], dtype=complex)
    front = math.sqrt(p.eta) * p.r
    lam0 = MultiModeState(
        front * p.t * np.kron(np.kron(g0, g0), v3)
        + front * alpha * p.r * math.sqrt(x) * np.kron(np.kron(g0, g1), v3)
        + front * alpha * math.sqrt(G) * np.kron(np.kron(g1, g0), v3),
        dims,
    )
    lam1 = MultiModeState(front * p.t * np.kron(np.kron(g0, g0), v3), dims)
    n2_inv = lam0.norm**2 + a2 * lam1.norm**2
    N = 1.0 / math.sqrt(n2_inv)
    combined = lam0.amplitudes + a2 * lam1.amplitudes
    F = N**2 * float(np.vdot(combined, combined).real) / (1.0 + a2)
    return N, F


def lqs_projection_oracle(alpha, t, r, cutoff, t2=None, r2=None):
    """Brute-force scissors run in the full three-mode Fock space.

    Sends |1, 0, alpha> through the two beam splitters, projects the middle
    and last output modes onto <1| and <0|, and returns the conditional
    first-mode state with the outcome probability.  A second (t2, r2) pair
    makes the BSs distinct; by default they are identical.
    """
    if t2 is None:
        t2, r2 = t, r
    d = cutoff + 2
    coh, _ = coherent_state(alpha, cutoff + 1)
    photon = np.array([0.0, 1.0], dtype=complex)
    vac = np.zeros(d, dtype=complex)
    vac[0] = 1.0
    state = MultiModeState.product([photon, vac, coh.amplitudes])
    dims = state.dims
    u1 = beam_splitter_unitary(t, r, (0, 1), dims)
    u2 = beam_splitter_unitary(t2, r2, (1, 2), dims)
    out = MultiModeState(u2 @ (u1 @ state.amplitudes), dims)
    return project_and_renormalize(out, [(1, 1), (2, 0)])
