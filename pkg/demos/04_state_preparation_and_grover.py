"""Objective loading and amplitude amplification, gate by gate.

The preparation circuit writes E(x) - y into a two's-complement value
register via controlled phases and an inverse Fourier transform.  A single Z
on the sign qubit then marks improving states, and repeated Grover steps
amplify them along the textbook rotation curve.
"""
import math

import numpy as np

from qapgas.circuits import build_grover_operator, build_state_prep
from qapgas.encodings import Formulation, FormulationKind
from qapgas.polynomials import MultilinearPolynomial
from qapgas.qap import QapInstance
from qapgas.sim import StateVector

# A small objective with integer coefficients: 1 + 2*x1 - 3*x1*x2*x3.
poly = MultilinearPolynomial(3, {(): 1, (0,): 2, (0, 1, 2): -3})
placeholder = QapInstance(2, np.zeros((2, 2)), np.zeros((2, 2)))
form = Formulation(FormulationKind.QUBO_HADAMARD, poly, 3, 2, (1.0, 1.0), placeholder)

prep = build_state_prep(form, width=3, threshold=0.0)
print(f"preparation circuit: {prep.num_qubits} qubits, {len(prep.gates)} gates")

sv = StateVector(prep.num_qubits).apply_all(prep.gates)
probs = sv.probabilities().reshape(8, 8)
print("\nreadout table (value register in two's complement):")
for x in range(8):
    bits = format(x, "03b")[::-1]
    register = int(np.argmax(probs[:, x]))
    value = register - 8 if register >= 4 else register
    print(f"  x={bits}  E(x)={int(poly.evaluate(x)):+d}  register reads {value:+d}")

# At threshold 1 the only improving state is x = 111 (E = 0).
prep = build_state_prep(form, width=3, threshold=1.0)
grover = build_grover_operator(prep)
sv = StateVector(prep.num_qubits).apply_all(prep.gates)
marked = [x for x in range(8) if poly.evaluate(x) < 1]
print(f"\nthreshold 1.0 marks {len(marked)} of 8 states: {[format(x, '03b')[::-1] for x in marked]}")
theta = math.asin(math.sqrt(len(marked) / 8))
print("Grover steps vs the rotation curve sin^2((2L+1) asin(sqrt(t/8))):")
for steps in range(4):
    measured = sum(sv.marginal(range(3))[x] for x in marked)
    predicted = math.sin((2 * steps + 1) * theta) ** 2
    print(f"  L={steps}: marked probability {measured:.6f}, predicted {predicted:.6f}")
    sv.apply_all(grover.gates)
