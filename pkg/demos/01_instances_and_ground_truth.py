"""Instances and classical ground truth.

Build assignment-problem instances three ways (random grid, QAPLIB text,
bundled fixtures), evaluate permutations, and pull exact optima from the
brute-force oracle.
"""
import numpy as np

from qapgas import Permutation, brute_force_optimum, objective, parse_qaplib, random_instance
from qapgas.qap import format_qaplib, objective_matrix_form
from qapgas.samples import SAMPLE_SIZES, sample_instance, sample_optimum

# A seeded instance: symmetric, zero diagonal, entries on the 0.1 grid.
inst = random_instance(4, seed=7)
print(f"instance {inst.name}")
print("flow:\n", inst.flow)
print("dist:\n", inst.dist)

# The objective of an assignment, two equivalent ways.
perm = Permutation((2, 4, 1, 3))
print("\nobjective of", perm.mapping, "=", objective(inst, perm))
print("matrix form agrees:", np.isclose(objective_matrix_form(inst, perm), objective(inst, perm)))

# Ground truth by exhaustive search (refuses N > 10).
best_perm, best_value = brute_force_optimum(inst)
print(f"optimum: {best_perm.mapping} at {best_value:.4f}")

# Round-trip through the whitespace .dat format (parser normalizes to [0,1]).
text = format_qaplib(inst)
again = parse_qaplib(text)
print("\nserialized and re-parsed, optimum unchanged:",
      np.isclose(brute_force_optimum(again)[1], best_value))

# Bundled desk-scale instances with verified optima.
print("\nbundled samples:")
for n in SAMPLE_SIZES:
    sample = sample_instance(n)
    opt_perm, opt_value = sample_optimum(n)
    achieved = objective(sample, opt_perm)
    print(f"  N={n}: recorded optimum {opt_value:.2f}, recorded mapping achieves {achieved:.2f}")
