"""The three binary encodings and their term structure.

Encode one instance as conventional QUBO, Dicke-restricted QUBO, and the
higher-order Hamming-weight formulation; check that permutations evaluate to
the plain objective; and compare expansion sizes against the closed forms.
"""
import itertools

from qapgas import (
    FormulationKind,
    Permutation,
    encode,
    objective,
    random_instance,
    search_space_sizes,
    term_census,
)
from qapgas.analysis import term_count_formula
from qapgas.encodings import build_code_table
from qapgas.qap import generic_instance

n = 4
inst = random_instance(n, seed=3)

# Every encoding agrees with the objective on feasible points; penalties
# vanish exactly there.
print("feasible-point agreement:")
for kind in FormulationKind:
    form = encode(inst, kind)
    worst = 0.0
    for mapping in itertools.permutations(range(1, n + 1)):
        perm = Permutation(mapping)
        value = form.evaluate(form.encode_permutation(perm))
        worst = max(worst, abs(value - objective(inst, perm)))
    print(f"  {kind.value:8s}: {form.num_vars} variables, max |poly - objective| = {worst:.2e}")

# The location codes behind hubo-hw, ordered by descending Hamming weight.
table = build_code_table(n)
print("\nlocation codes:", ["".join(map(str, c)) for c in table.codes])

# Term counts: the closed forms describe a fully generic instance, so use one
# (positive diagonal, fine grid).  The census separates the enumerated
# generator count from the distinct stored monomials; for power-of-two sizes
# the hubo-hw generator count exceeds the distinct count by exactly N because
# the weight-zero code's indicator expands to the constant 1.
print("\nterm counts on a generic instance:")
for size in range(2, 9):
    gen = generic_instance(size, seed=5)
    qubo = term_census(encode(gen, "qubo-h"))
    hubo = term_census(encode(gen, "hubo-hw"))
    print(
        f"  N={size}: qubo {qubo.distinct_terms:5d} (formula {term_count_formula(size, 'qubo-h'):5d})"
        f"   hubo {hubo.structural_terms:5d} (formula {term_count_formula(size, 'hubo-hw'):5d},"
        f" {hubo.distinct_terms} distinct)"
    )

# Search-space sizes: the Dicke restriction wins whenever N is not a power of
# two; at powers of two it ties the higher-order encoding.
print("\nsearch spaces (dicke, hubo, conventional):")
for size in (4, 5, 8, 9):
    print(f"  N={size}: {search_space_sizes(size)}")
