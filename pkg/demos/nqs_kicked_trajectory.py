"""Follow the kicked Kerr oscillator as it builds a qubit-subspace state.

Weak coherent kicks try to climb the Fock ladder; the Kerr nonlinearity
dephases anything above |1> between kicks, so the state stays pinned to
span{|0>, |1>} and rotates toward (cos(k eps)|0> - i sin(k eps)|1>).
Damping fights the rotation.  The table compares a lossless run, a weakly
damped run, and a damped run with a warm reservoir.
"""

from qscissors import NqsParams, evolve_kicked

RUNS = [
    ("lossless", dict(lam=0.0)),
    ("lambda = 0.01", dict(lam=0.01)),
    ("lambda = 0.01, nbar = 0.1", dict(lam=0.01, nbar=0.1)),
]


def main():
    eps, kicks, cutoff = 0.1, 20, 20
    tables = []
    for name, kw in RUNS:
        p = NqsParams(epsilon=eps, kicks=kicks, cutoff=cutoff, **kw)
        recs = [r for r in evolve_kicked(p) if r.tau == r.kick_index * p.tau_k]
        tables.append((name, recs))
    print(f"Kicked Kerr oscillator: eps = {eps}, {kicks} kicks, cutoff {cutoff}")
    print("Fidelity against the k-kick target, sampled after each free segment")
    print()
    print(f"{'kick':>4}" + "".join(f"{name:>28}" for name, _ in tables))
    for i in range(kicks + 1):
        row = f"{i:4d}"
        for _, recs in tables:
            row += f"{recs[i].fidelity:28.6f}"
        print(row)
    print()
    last = tables[1][1][-1]
    print(f"After {kicks} kicks at lambda = 0.01: fidelity {last.fidelity:.4f}, "
          f"purity {last.purity:.4f}, <n> = {last.mean_n:.4f}")
    print("The lossless run tracks the target almost perfectly (the kicks leak")
    print("a little population above |1>); damping costs about a percent of")
    print("fidelity per kick pair, and a warm reservoir adds on top of that.")


if __name__ == "__main__":
    main()
