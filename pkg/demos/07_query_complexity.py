"""Query-complexity comparison across the three formulations.

Repeated optimum-terminated runs produce an empirical distribution of query
counts per encoding.  The search-space sizes dictate the ordering: at N = 4
(a power of two) the Dicke-restricted QUBO and the higher-order encoding
coincide, while the conventional QUBO pays for its 2^(N^2) space; at N = 5
the Dicke restriction is strictly smallest.
"""
import numpy as np

from qapgas import FormulationKind, brute_force_optimum, encode, search_space_sizes
from qapgas.gas import cdf_experiment
from qapgas.samples import sample_instance

RUNS = 300  # increase for smoother tails; 1000 reproduces the shipped checks

for n in (4, 5):
    inst = sample_instance(n)
    _, best = brute_force_optimum(inst)
    forms = {kind.value: encode(inst, kind) for kind in FormulationKind}
    result = cdf_experiment(forms, best, runs=RUNS, seed=2)
    dicke, hubo, conventional = search_space_sizes(n)
    print(f"\nN={n} (spaces: dicke {dicke}, hubo {hubo}, conventional {conventional})")
    for kind in ("qubo-h", "qubo-d", "hubo-hw"):
        qs = result.queries[kind]
        print(
            f"  {kind:8s}: median {np.median(qs):7.0f}   p90 {np.quantile(qs, 0.9):7.0f}"
        )
    print(f"  conventional / dicke median ratio: {result.median_ratio('qubo-h', 'qubo-d'):.1f}x")
    if n == 4:
        print(f"  dicke / hubo median ratio: {result.median_ratio('qubo-d', 'hubo-hw'):.2f}")

print("\nCDF rows (first deciles, N=4 dicke):")
inst = sample_instance(4)
_, best = brute_force_optimum(inst)
forms = {"qubo-d": encode(inst, "qubo-d")}
result = cdf_experiment(forms, best, runs=RUNS, seed=3)
rows = result.cdf_rows("qubo-d")
for idx in range(0, RUNS, RUNS // 10):
    q, frac = rows[idx]
    print(f"  {frac:4.0%} of runs finish within {q} queries")
