"""Binary-optimization encodings of QAP instances.

Three formulations are supported:

* ``qubo-h``  -- quadratic objective over N^2 one-hot variables with row and
  column penalties, searched over the full hypercube (Hadamard start).
* ``qubo-d``  -- same variables but the search is restricted to states whose
  row blocks each have Hamming weight 1, so only the column penalty remains.
* ``hubo-hw`` -- each row's location index is binary-encoded with N*ceil(log2 N)
  variables using a code table ordered by descending Hamming weight, giving a
  higher-order objective with fewer terms.

Variable ordering is row-major: variable index = row * row_width + offset,
where row_width is N for the QUBO encodings and B = ceil(log2 N) for hubo-hw.
Encoder coefficients are exact Fractions so that term counting never depends
on floating-point cancellation.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .polynomials import MultilinearPolynomial
from .qap import Permutation, QapInstance


class FormulationKind(str, enum.Enum):
    QUBO_HADAMARD = "qubo-h"
    QUBO_DICKE = "qubo-d"
    HUBO_HW = "hubo-hw"


def default_penalty(n: int) -> int:
    """Default penalty coefficient: N^2 dominates any feasible objective value."""
    return n * n


def num_code_bits(n: int) -> int:
    return max(1, math.ceil(math.log2(n)))


@dataclass(frozen=True)
class CodeTable:
    """Binary codes for location indices, sorted by descending Hamming weight.

    codes[j] is the big-endian bit tuple assigned to location j (0-based).
    Ties in weight break toward the larger big-endian value, so e.g. N=8 gives
    111, 110, 101, 011, 100, 010, 001, 000.  For N not a power of two only the
    first N rows of the full table are kept.
    """

    n: int
    bits_b: int
    codes: tuple[tuple[int, ...], ...]

    def weights(self) -> list[int]:
        return [sum(code) for code in self.codes]

    def code_to_location(self) -> dict[tuple[int, ...], int]:
        return {code: j for j, code in enumerate(self.codes)}


def _full_code_list(bits: int) -> list[tuple[int, ...]]:
    codes = []
    for value in range(1 << bits):
        code = tuple((value >> (bits - 1 - r)) & 1 for r in range(bits))
        codes.append(code)
    codes.sort(key=lambda c: (-sum(c), -int("".join(map(str, c)), 2)))
    return codes


def build_code_table(n: int) -> CodeTable:
    if n < 2:
        raise ValueError(f"code table needs n >= 2, got {n}")
    bits = num_code_bits(n)
    return CodeTable(n, bits, tuple(_full_code_list(bits)[:n]))


def assignment_indicator_poly(
    table: CodeTable, row: int, location: int, num_vars: int | None = None
) -> MultilinearPolynomial:
    """Indicator that `row` is assigned to `location`, as a multilinear polynomial.

    The product over code bits of ``1 - b + (2b - 1) x`` expands to normal
    form over the row's own variables; it is 1 exactly when the row's bits
    equal the location's code.  Indices are 0-based.
    """
    if not 0 <= row < table.n:
        raise IndexError(f"row {row} out of range for N={table.n}")
    if not 0 <= location < len(table.codes):
        raise IndexError(f"location {location} out of range for table of {len(table.codes)}")
    bits = table.bits_b
    if num_vars is None:
        num_vars = table.n * bits
    poly = MultilinearPolynomial.constant(num_vars, Fraction(1))
    for r, bit in enumerate(table.codes[location]):
        var = row * bits + r
        factor = MultilinearPolynomial(
            num_vars, {(): Fraction(1 - bit), (var,): Fraction(2 * bit - 1)}
        )
        poly = poly * factor
    return poly


@dataclass(frozen=True)
class Formulation:
    """A binary objective plus everything needed to search and decode it."""

    kind: FormulationKind
    poly: MultilinearPolynomial
    num_vars: int
    size_n: int
    penalties: tuple[float, ...]
    instance: QapInstance
    code_table: CodeTable | None = None

    @property
    def row_width(self) -> int:
        return self.num_vars // self.size_n

    @property
    def space_size(self) -> int:
        """Size of the initial superposition's support."""
        n = self.size_n
        if self.kind is FormulationKind.QUBO_DICKE:
            return n**n
        return 1 << self.num_vars

    @property
    def feasible_space(self) -> str:
        """Human-readable description of the initial superposition's support."""
        n = self.size_n
        if self.kind is FormulationKind.QUBO_DICKE:
            return f"weight-1 row blocks: {n}^{n} = {self.space_size} states"
        return f"full hypercube: 2^{self.num_vars} = {self.space_size} states"

    def evaluate(self, x: int) -> float:
        return float(self.poly.evaluate(x))

    def encode_permutation(self, perm: Permutation) -> int:
        """Bitmask whose decode() is the given permutation."""
        if len(perm) != self.size_n:
            raise ValueError("permutation size mismatch")
        mask = 0
        if self.kind is FormulationKind.HUBO_HW:
            assert self.code_table is not None
            bits = self.code_table.bits_b
            for i, loc in enumerate(perm.mapping):
                code = self.code_table.codes[loc - 1]
                for r, bit in enumerate(code):
                    if bit:
                        mask |= 1 << (i * bits + r)
        else:
            n = self.size_n
            for i, loc in enumerate(perm.mapping):
                mask |= 1 << (i * n + (loc - 1))
        return mask

    def decode(self, x: int) -> Permutation | None:
        """Permutation encoded by bitmask x, or None if infeasible."""
        n = self.size_n
        if self.kind is FormulationKind.HUBO_HW:
            assert self.code_table is not None
            bits = self.code_table.bits_b
            lookup = self.code_table.code_to_location()
            mapping = []
            for i in range(n):
                code = tuple((x >> (i * bits + r)) & 1 for r in range(bits))
                loc = lookup.get(code)
                if loc is None:
                    return None
                mapping.append(loc + 1)
        else:
            mapping = []
            for i in range(n):
                row = [(x >> (i * n + j)) & 1 for j in range(n)]
                if sum(row) != 1:
                    return None
                mapping.append(row.index(1) + 1)
        if len(set(mapping)) != n:
            return None
        return Permutation(tuple(mapping))


def _fraction_matrix(mat: np.ndarray) -> list[list[Fraction]]:
    return [[Fraction(v).limit_denominator(10**6) for v in row] for row in mat]


def _one_hot_penalty_terms(
    acc: dict[tuple[int, ...], Fraction], variables: list[int], lam: Fraction
) -> None:
    """Accumulate lam * (sum(variables) - 1)^2 expanded with x^2 = x."""
    acc[()] = acc.get((), Fraction(0)) + lam
    for v in variables:
        key = (v,)
        acc[key] = acc.get(key, Fraction(0)) - lam
    for a in range(len(variables)):
        for b in range(a + 1, len(variables)):
            key = tuple(sorted((variables[a], variables[b])))
            acc[key] = acc.get(key, Fraction(0)) + 2 * lam


def encode_qubo(
    inst: QapInstance, lam_row: float | None = None, lam_col: float | None = None
) -> Formulation:
    """Conventional QUBO over N^2 variables with both one-hot penalties."""
    n = inst.size_n
    lam_row = default_penalty(n) if lam_row is None else lam_row
    lam_col = default_penalty(n) if lam_col is None else lam_col
    if lam_row <= 0 or lam_col <= 0:
        raise ValueError("penalty coefficients must be positive")
    acc = _qubo_objective_terms(inst)
    lr = Fraction(lam_row).limit_denominator(10**6)
    lc = Fraction(lam_col).limit_denominator(10**6)
    for i in range(n):
        _one_hot_penalty_terms(acc, [i * n + j for j in range(n)], lr)
    for j in range(n):
        _one_hot_penalty_terms(acc, [i * n + j for i in range(n)], lc)
    poly = MultilinearPolynomial(n * n, acc)
    return Formulation(
        FormulationKind.QUBO_HADAMARD, poly, n * n, n, (float(lam_row), float(lam_col)), inst
    )


def encode_qubo_dicke(inst: QapInstance, lam_col: float | None = None) -> Formulation:
    """QUBO searched over row-wise weight-1 states; only the column penalty remains."""
    n = inst.size_n
    lam_col = default_penalty(n) if lam_col is None else lam_col
    if lam_col <= 0:
        raise ValueError("penalty coefficient must be positive")
    acc = _qubo_objective_terms(inst)
    lc = Fraction(lam_col).limit_denominator(10**6)
    for j in range(n):
        _one_hot_penalty_terms(acc, [i * n + j for i in range(n)], lc)
    poly = MultilinearPolynomial(n * n, acc)
    return Formulation(FormulationKind.QUBO_DICKE, poly, n * n, n, (float(lam_col),), inst)


def _qubo_objective_terms(inst: QapInstance) -> dict[tuple[int, ...], Fraction]:
    """Expansion of <F, X C X^T> over x = vec(X), with x^2 = x applied."""
    n = inst.size_n
    flow = _fraction_matrix(inst.flow)
    dist = _fraction_matrix(inst.dist)
    acc: dict[tuple[int, ...], Fraction] = {}
    for i in range(n):
        for j in range(n):
            fij = flow[i][j]
            if fij == 0:
                continue
            for k in range(n):
                for l in range(n):
                    ckl = dist[k][l]
                    if ckl == 0:
                        continue
                    va, vb = i * n + k, j * n + l
                    key = (va,) if va == vb else tuple(sorted((va, vb)))
                    acc[key] = acc.get(key, Fraction(0)) + fij * ckl
    return {k: v for k, v in acc.items() if v != 0}


def encode_hubo_hw(
    inst: QapInstance,
    lam_row: float | None = None,
    lam_col: float | None = None,
    linear_row_penalty: bool = False,
) -> Formulation:
    """Higher-order encoding over N*B variables via the descending-weight codes.

    lam_row defaults to 1 (the row constraint is nearly built in; it only has
    to discourage rows decoding to a discarded code), lam_col to N^2.  With
    ``linear_row_penalty`` the row term instead sums the indicators of the
    discarded codes directly; it is off by default because it enlarges the
    expansion whenever N is not a power of two.
    """
    n = inst.size_n
    lam_row = 1.0 if lam_row is None else lam_row
    lam_col = default_penalty(n) if lam_col is None else lam_col
    if lam_row <= 0 or lam_col <= 0:
        raise ValueError("penalty coefficients must be positive")
    table = build_code_table(n)
    bits = table.bits_b
    num_vars = n * bits
    indicators = [
        [assignment_indicator_poly(table, i, j, num_vars) for j in range(n)] for i in range(n)
    ]

    flow = _fraction_matrix(inst.flow)
    dist = _fraction_matrix(inst.dist)
    acc: dict[tuple[int, ...], Fraction] = {}
    for i in range(n):
        for k in range(n):
            fik = flow[i][k]
            if fik == 0:
                continue
            for j in range(n):
                for l in range(n):
                    cjl = dist[j][l]
                    if cjl == 0:
                        continue
                    prod = indicators[i][j] * indicators[k][l]
                    for key, coeff in prod.terms.items():
                        acc[key] = acc.get(key, Fraction(0)) + fik * cjl * coeff

    lr = Fraction(lam_row).limit_denominator(10**6)
    lc = Fraction(lam_col).limit_denominator(10**6)
    one = MultilinearPolynomial.constant(num_vars, Fraction(1))
    if linear_row_penalty:
        full = CodeTable(1 << bits, bits, tuple(_full_code_list(bits)))
        for i in range(n):
            for j in range(n, 1 << bits):
                extra = assignment_indicator_poly(full, 0, j, num_vars)
                for key, coeff in extra.terms.items():
                    key = tuple(sorted(v + i * bits for v in key))
                    acc[key] = acc.get(key, Fraction(0)) + lr * coeff
    else:
        for i in range(n):
            row_sum = MultilinearPolynomial(num_vars)
            for j in range(n):
                row_sum = row_sum + indicators[i][j]
            dev = row_sum - one
            sq = dev * dev
            for key, coeff in sq.terms.items():
                acc[key] = acc.get(key, Fraction(0)) + lr * coeff
    for j in range(n):
        col_sum = MultilinearPolynomial(num_vars)
        for i in range(n):
            col_sum = col_sum + indicators[i][j]
        dev = col_sum - one
        sq = dev * dev
        for key, coeff in sq.terms.items():
            acc[key] = acc.get(key, Fraction(0)) + lc * coeff

    poly = MultilinearPolynomial(num_vars, acc)
    return Formulation(
        FormulationKind.HUBO_HW,
        poly,
        num_vars,
        n,
        (float(lam_row), float(lam_col)),
        inst,
        code_table=table,
    )


def encode(inst: QapInstance, kind: FormulationKind | str, **kwargs) -> Formulation:
    kind = FormulationKind(kind)
    if kind is FormulationKind.QUBO_HADAMARD:
        return encode_qubo(inst, **kwargs)
    if kind is FormulationKind.QUBO_DICKE:
        return encode_qubo_dicke(inst, **kwargs)
    return encode_hubo_hw(inst, **kwargs)


def search_space_sizes(n: int) -> tuple[int, int, int]:
    """Exact search-space sizes (QUBO w/ Dicke, HUBO-HW, conventional QUBO).

    Returns (N^N, 2^(N*ceil(log2 N)), 2^(N^2)); the chain
    N^N <= 2^(N*ceil(log2 N)) < 2^(N^2) holds for every N >= 2, with the first
    pair equal exactly when N is a power of two.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    dicke = n**n
    hubo = 1 << (n * num_code_bits(n))
    conventional = 1 << (n * n)
    assert dicke <= hubo < conventional
    return dicke, hubo, conventional


@dataclass(frozen=True)
class TermCensus:
    """Term counts of an encoded objective.

    distinct_terms counts the monomials actually stored in the expanded
    polynomial.  structural_terms additionally counts, once per row, the
    weight-zero code's indicator as its own generator even though its
    expansion is the constant 1; this matches the closed-form accounting in
    which single indicators are enumerated per (row, location) pair.  The two
    differ (by exactly N) only for hubo-hw with N a power of two.
    """

    distinct_terms: int
    structural_terms: int
    controlled_per_order: dict[int, int]
    constant_generators: int

    @property
    def controlled_total(self) -> int:
        return sum(self.controlled_per_order.values())


def term_census(form: Formulation) -> TermCensus:
    hist = form.poly.order_histogram()
    controlled = {k: v for k, v in hist.items() if k > 0}
    distinct = form.poly.term_count()
    zero_codes = 0
    if form.kind is FormulationKind.HUBO_HW:
        assert form.code_table is not None
        zero_codes = sum(1 for w in form.code_table.weights() if w == 0)
    duplicate_constants = zero_codes * form.size_n
    return TermCensus(
        distinct_terms=distinct,
        structural_terms=distinct + duplicate_constants,
        controlled_per_order=controlled,
        constant_generators=1 + duplicate_constants,
    )
