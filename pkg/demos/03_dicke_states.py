"""Dicke state preparation.

Uniform fixed-weight superpositions built from X gates, weight-distribution
blocks, and split/cyclic-shift cascades; verified against exact amplitudes
and used per row to restrict the QUBO search space.
"""
import math

import numpy as np

from qapgas.circuits import build_dicke, dicke_gates
from qapgas.sim import StateVector

# |D_2^4>: six weight-2 basis states, amplitude 1/sqrt(6) each.
circuit = build_dicke(4, 2)
sv = StateVector(4).apply_all(circuit.gates)
print("amplitudes of the 4-qubit weight-2 state:")
for i in range(16):
    amp = sv.amplitudes[i].real
    if abs(amp) > 1e-12:
        print(f"  |{format(i, '04b')[::-1]}> : {amp:.6f}   (1/sqrt(6) = {1/math.sqrt(6):.6f})")

# Gate budget grows gently with n and k.
print("\ngate counts of the preparation circuit:")
for n, k in [(4, 2), (6, 3), (9, 4)]:
    gates = build_dicke(n, k).gates
    kinds = {}
    for g in gates:
        kinds[g.kind] = kinds.get(g.kind, 0) + 1
    print(f"  n={n} k={k}: {dict(sorted(kinds.items()))}")

# Uniformity check across every weight for a 9-qubit register.
print("\nmax deviation from uniform amplitude, n=9:")
for k in range(1, 5):
    sv = StateVector(9).apply_all(build_dicke(9, k).gates)
    target = 1 / math.sqrt(math.comb(9, k))
    weights = np.array([bin(i).count("1") for i in range(1 << 9)])
    on = np.abs(sv.amplitudes[weights == k] - target).max()
    off = np.abs(sv.amplitudes[weights != k]).max()
    print(f"  k={k}: on-support {on:.2e}, off-support {off:.2e}")

# Row-wise weight-1 blocks produce the assignment superposition: every row
# picks exactly one column, N^N states in total.
n = 3
gates = []
for row in range(n):
    gates.extend(dicke_gates(range(row * n, (row + 1) * n), 1))
sv = StateVector(n * n).apply_all(gates)
support = np.flatnonzero(np.abs(sv.amplitudes) > 1e-12)
print(f"\nrow-block initialization on N={n}: support {len(support)} states"
      f" (N^N = {n**n}), amplitude {sv.amplitudes[support[0]].real:.6f}"
      f" = 1/sqrt({n**n})")
