"""Gate-level circuit IR for the adaptive Grover search pipeline.

Register layout and conventions, fixed here and relied on everywhere:

* Qubits are little-endian: basis-state index i has qubit q at bit q.
* A circuit with ``num_vars = n`` and ``num_value = m`` places the binary
  variables on qubits [0, n) (variable v on qubit v) and the value register
  on qubits [n, n+m), with qubit n+r carrying weight 2^r.  The top qubit
  n+m-1 is the two's-complement sign bit, so the threshold oracle is a single
  Z there.
* Each objective term with coefficient a becomes m phase rotations, one per
  value qubit, controlled on the term's variables: qubit n+r receives angle
  2^r * (2*pi*a / 2^m), reduced to [-pi, pi).  The inverse Fourier transform
  then turns the accumulated phases into the binary value of E(x) - y.

Gates are plain records.  For controlled kinds (cphase, crz, cry, cnot) the
last listed qubit is the target and the rest are controls; "phase" is the
diagonal [[1, 0], [0, e^{i*theta}]] gate and "rz" its traceless twin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .encodings import Formulation, FormulationKind
from .polynomials import MultilinearPolynomial

TWO_PI = 2.0 * math.pi

GATE_KINDS = frozenset(
    {"h", "x", "z", "swap", "cnot", "phase", "rz", "ry", "cry", "cphase", "crz"}
)
_CONTROLLED = frozenset({"cnot", "cry", "cphase", "crz"})
_PARAMETRIC = frozenset({"phase", "rz", "ry", "cry", "cphase", "crz"})


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"duplicate qubit in gate {self}")
        if self.kind in _PARAMETRIC:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"gate {self.kind} needs a finite angle")
        elif self.angle is not None:
            raise ValueError(f"gate {self.kind} takes no angle")

    @property
    def target(self) -> int:
        return self.qubits[-1]

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1] if self.kind in _CONTROLLED else ()


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a variable register and an optional value register."""

    num_vars: int
    num_value: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        nq = self.num_qubits
        for gate in self.gates:
            if any(q < 0 or q >= nq for q in gate.qubits):
                raise ValueError(f"gate {gate} outside {nq}-qubit register")

    @property
    def num_qubits(self) -> int:
        return self.num_vars + self.num_value

    @property
    def value_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.num_vars, self.num_qubits))

    @property
    def sign_qubit(self) -> int:
        if self.num_value == 0:
            raise ValueError("circuit has no value register")
        return self.num_qubits - 1

    def extended(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.num_vars, self.num_value, self.gates + tuple(gates))


def reduce_angle(theta: float) -> float:
    """Map an angle to the canonical window [-pi, pi)."""
    theta = math.fmod(theta, TWO_PI)
    if theta >= math.pi:
        theta -= TWO_PI
    elif theta < -math.pi:
        theta += TWO_PI
    return theta


def invert_gates(gates: Sequence[Gate]) -> list[Gate]:
    """Adjoint of a gate list: reversed order, parametric angles negated."""
    out = []
    for gate in reversed(gates):
        if gate.kind in _PARAMETRIC:
            out.append(Gate(gate.kind, gate.qubits, -gate.angle))
        else:
            out.append(gate)
    return out


def substitute_rz(circuit: Circuit) -> Circuit:
    """Swap the objective-term phase gates for their traceless rotation twins.

    A term gate differs from its rotation twin only by a phase that is
    constant on each variable-register basis state, which commutes with the
    oracle and cancels inside the conjugated reflection, so all measurement
    statistics are preserved while the decomposition cost drops.  Gates
    inside the inverse Fourier transform or the diffusion reflection take
    part in later interference and are left alone.
    """
    n = circuit.num_vars
    swapped = []
    for gate in circuit.gates:
        if gate.kind == "phase":
            swapped.append(Gate("rz", gate.qubits, gate.angle))
        elif (
            gate.kind == "cphase"
            and gate.target >= n
            and all(q < n for q in gate.controls)
        ):
            swapped.append(Gate("crz", gate.qubits, gate.angle))
        else:
            swapped.append(gate)
    return Circuit(circuit.num_vars, circuit.num_value, swapped)


# ---------------------------------------------------------------------------
# value-register sizing
# ---------------------------------------------------------------------------


def width_for_range(lo: float, hi: float) -> int:
    """Smallest m with -2^(m-1) <= lo and hi < 2^(m-1)."""
    m = 1
    while not (-(2 ** (m - 1)) <= lo and hi < 2 ** (m - 1)):
        m += 1
    return m


def value_bounds(form: Formulation, exhaustive_limit: int = 1 << 20) -> tuple[float, float]:
    """Bounds on the objective over the formulation's search space.

    Exact (by enumeration) while the space is at most exhaustive_limit;
    otherwise the sum of absolute coefficients bounds both sides.
    """
    if form.space_size <= exhaustive_limit:
        values = objective_values(form)
        return float(values.min()), float(values.max())
    total = form.poly.abs_coeff_sum()
    return -total, total


def objective_values(form: Formulation) -> np.ndarray:
    """Objective on every state of the search space, indexed by support rank.

    For the hypercube spaces the index is the variable bitmask itself; for
    the Dicke-initialized space it ranks the row-wise location assignments in
    mixed-radix order (row 0 least significant).
    """
    if form.kind is not FormulationKind.QUBO_DICKE:
        return form.poly.evaluate_table()
    n = form.size_n
    values = np.empty(n**n)
    for rank in range(n**n):
        values[rank] = float(form.poly.evaluate(dicke_rank_to_bits(form, rank)))
    return values


def dicke_rank_to_bits(form: Formulation, rank: int) -> int:
    """Bitmask of the rank-th row-wise assignment (mixed radix, row 0 first)."""
    n = form.size_n
    mask = 0
    for i in range(n):
        mask |= 1 << (i * n + rank % n)
        rank //= n
    return mask


def value_register_width(form: Formulation, y_max_shift: float = 0.0) -> int:
    """Number of value qubits needed to hold E(x) - y in two's complement.

    The register must cover the objective range widened by the largest |y|
    the adaptive loop may subtract.
    """
    lo, hi = value_bounds(form)
    shift = abs(y_max_shift)
    return width_for_range(lo - shift, hi + shift)


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------


def qft_gates(qubits: Sequence[int]) -> list[Gate]:
    """Fourier transform on a little-endian register (qubits[0] = weight 1)."""
    m = len(qubits)
    gates: list[Gate] = []
    for j in range(m - 1, -1, -1):
        gates.append(Gate("h", (qubits[j],)))
        for i in range(j - 1, -1, -1):
            gates.append(Gate("cphase", (qubits[i], qubits[j]), math.pi / 2 ** (j - i)))
    for i in range(m // 2):
        gates.append(Gate("swap", (qubits[i], qubits[m - 1 - i])))
    return gates


def iqft_gates(qubits: Sequence[int]) -> list[Gate]:
    """Inverse Fourier transform; for m = 1 this is a single Hadamard."""
    return invert_gates(qft_gates(qubits))


def phase_polynomial_gates(
    poly: MultilinearPolynomial,
    num_vars: int,
    value_qubits: Sequence[int],
    shift: float = 0.0,
) -> list[Gate]:
    """Controlled phase ladder writing (poly(x) + shift) into the value phases.

    Emits m rotations per term, ordered constant first and then by ascending
    order and variable tuple, so the circuit layout mirrors the objective.
    """
    m = len(value_qubits)
    gates: list[Gate] = []
    terms = [(key, float(coeff)) for key, coeff in poly.terms.items()]
    constant = shift + sum(c for key, c in terms if not key)
    ordered = sorted((key for key, _ in terms if key), key=lambda k: (len(k), k))
    coeffs = dict(poly.float_terms())

    def emit(controls: tuple[int, ...], a: float) -> None:
        theta = TWO_PI * a / (1 << m)
        for r in range(m):
            angle = reduce_angle((1 << r) * theta)
            kind = "cphase" if controls else "phase"
            gates.append(Gate(kind, controls + (value_qubits[r],), angle))

    if constant != 0.0:
        emit((), constant)
    for key in ordered:
        emit(tuple(key), coeffs[key])
    return gates


def build_state_prep(
    form: Formulation,
    width: int,
    threshold: float = 0.0,
    init: str | None = None,
    scale: float = 1.0,
) -> Circuit:
    """State-preparation circuit: init layer, phase ladder, inverse QFT.

    After this circuit, measuring the registers yields a search-space state x
    together with scale*(E(x) - threshold) rounded into an m-bit two's
    complement value (exact whenever the scaled coefficients are integers).
    ``init`` defaults to row-wise Dicke blocks for the Dicke formulation and
    Hadamards otherwise.
    """
    if width < 1:
        raise ValueError("value register needs at least one qubit")
    if form.poly.degree() > form.num_vars:
        raise ValueError("malformed formulation: term order exceeds variable count")
    if init is None:
        init = "dicke-rows" if form.kind is FormulationKind.QUBO_DICKE else "hadamard"
    n = form.num_vars
    gates: list[Gate] = []
    if init == "hadamard":
        gates.extend(Gate("h", (q,)) for q in range(n))
    elif init == "dicke-rows":
        rows = form.size_n
        block = form.row_width
        for i in range(rows):
            gates.extend(dicke_gates(list(range(i * block, (i + 1) * block)), 1))
    else:
        raise ValueError(f"unknown init layer {init!r}")
    value_qubits = list(range(n, n + width))
    gates.extend(Gate("h", (q,)) for q in value_qubits)
    scaled = form.poly.scaled(Fraction(scale).limit_denominator(10**9))
    gates.extend(
        phase_polynomial_gates(scaled, n, value_qubits, shift=-scale * threshold)
    )
    gates.extend(iqft_gates(value_qubits))
    return Circuit(n, width, gates)


def build_grover_operator(prep: Circuit) -> Circuit:
    """One Grover step for a built preparation circuit.

    Applies, in order: the sign-bit oracle, the inverse preparation, a
    reflection about the all-zeros state, and the preparation again.  The
    middle reflection equals 2|0><0| - 1 up to a global phase.
    """
    gates: list[Gate] = [Gate("z", (prep.sign_qubit,))]
    gates.extend(invert_gates(prep.gates))
    all_qubits = tuple(range(prep.num_qubits))
    gates.extend(Gate("x", (q,)) for q in all_qubits)
    gates.append(Gate("cphase", all_qubits, math.pi))
    gates.extend(Gate("x", (q,)) for q in all_qubits)
    gates.extend(prep.gates)
    return Circuit(prep.num_vars, prep.num_value, gates)


# ---------------------------------------------------------------------------
# Dicke state preparation
# ---------------------------------------------------------------------------


def _split_rotation(
    stay_amp2: Fraction | float, gates: list[Gate], controls: tuple[int, ...], target: int
) -> None:
    """Controlled Ry moving amplitude from `stay` onto the shifted branch."""
    c = math.sqrt(min(1.0, max(0.0, float(stay_amp2))))
    theta = 2.0 * math.acos(c)
    kind = "cry" if controls else "ry"
    gates.append(Gate(kind, controls + (target,), -theta))


def _scs_gates(block: Sequence[int], max_weight: int) -> list[Gate]:
    """Split & cyclic shift on a block: detaches the last qubit of the block.

    For each input weight l <= max_weight the block's trailing l ones are
    split into a keep branch (amplitude sqrt(l/s)) and a branch whose one at
    the last qubit moves to the top of the run (amplitude sqrt(1 - l/s)).
    """
    s = len(block)
    gates: list[Gate] = []
    last = block[s - 1]
    for weight in range(1, max_weight + 1):
        dest = block[s - 1 - weight]
        gates.append(Gate("cnot", (last, dest)))
        controls = (dest,) if weight == 1 else (dest, block[s - weight])
        _split_rotation(Fraction(weight, s), gates, controls, last)
        gates.append(Gate("cnot", (last, dest)))
    return gates


def _equal_superposition_cascade(block: Sequence[int]) -> list[Gate]:
    """Unitary turning |0..01..1> (any trailing weight) into the uniform
    fixed-weight superposition on the block, via nested split-shift gates."""
    gates: list[Gate] = []
    for size in range(len(block), 1, -1):
        gates.extend(_scs_gates(block[:size], size - 1))
    return gates


def _weight_distribution_gates(block: Sequence[int], first: int, max_weight: int) -> list[Gate]:
    """Split a trailing run of up to max_weight ones across two sub-blocks.

    The input run (possibly straddling the cut) is redistributed so that a
    final count of w ones lands as (i in the first sub-block's tail,
    w - i in the second's tail) with the hypergeometric amplitude
    sqrt(C(first, i) * C(rest, w-i) / C(s, w)).  Implemented as a cascade of
    boundary-conditioned rotations that move one one at a time across the
    cut; gates are ordered so that configurations reached by distinct input
    weights never alias.
    """
    s = len(block)
    rest = s - first
    steps: list[tuple[int, int, int]] = []  # (source_run, weight, tail_len)
    for w in range(1, max_weight + 1):
        lo = max(0, w - rest)
        hi = min(w, first)
        for alpha in range(lo, hi):
            steps.append((w - alpha, w, alpha))
    # Larger source runs first; among equal runs, smaller input weight first.
    steps.sort(key=lambda t: (-t[0], t[1]))

    gates: list[Gate] = []
    for beta, w, alpha in steps:
        lo = max(0, w - rest)
        hi = min(w, first)
        weights2 = [
            math.comb(first, i) * math.comb(rest, w - i) for i in range(lo, hi + 1)
        ]
        remaining = sum(weights2[alpha - lo :])
        stay = Fraction(weights2[alpha - lo], remaining)
        source = block[s - beta]
        dest = block[first - 1 - alpha]
        controls = [dest]
        if alpha >= 1:
            controls.append(block[first - alpha])
        if beta >= 2:
            controls.append(block[s - beta + 1])
        inverted: int | None = None
        if beta <= rest - 1:
            inverted = block[s - beta - 1]
            controls.append(inverted)
            gates.append(Gate("x", (inverted,)))
        gates.append(Gate("cnot", (source, dest)))
        _split_rotation(stay, gates, tuple(controls), source)
        gates.append(Gate("cnot", (source, dest)))
        if inverted is not None:
            gates.append(Gate("x", (inverted,)))
    return gates


def dicke_gates(block: Sequence[int], k: int) -> list[Gate]:
    """Gate list preparing the uniform weight-k superposition on `block`."""
    n = len(block)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    gates: list[Gate] = [Gate("x", (q,)) for q in block[n - k :]]

    def recurse(sub: Sequence[int]) -> None:
        size = len(sub)
        if size <= 1:
            return
        if size <= k:
            gates.extend(_equal_superposition_cascade(sub))
            return
        first = (size + 1) // 2
        gates.extend(_weight_distribution_gates(sub, first, min(k, size)))
        recurse(sub[:first])
        recurse(sub[first:])

    recurse(list(block))
    return gates


def build_dicke(n: int, k: int) -> Circuit:
    """Circuit preparing the n-qubit, weight-k Dicke state from all zeros."""
    return Circuit(n, 0, dicke_gates(list(range(n)), k))


# ---------------------------------------------------------------------------
# gate accounting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GateCounts:
    """Exact tallies for a built circuit plus modeled CNOT decomposition costs.

    ``term_rank_histogram`` maps k to the number of k-controlled single-qubit
    phase rotations whose controls all lie in the variable register and whose
    target is a value qubit: exactly the objective-term gates, m per term.
    CNOT totals price those term gates only (the published comparisons omit
    the inverse-QFT and any initialization layer); the other layers are
    reported separately.
    """

    num_qubits: int
    num_value: int
    kind_totals: dict[str, int]
    term_rank_histogram: dict[int, int]
    initial_hadamard_count: int
    iqft_cphase_count: int
    init_cnot_count: int
    init_controlled_ry: dict[int, int]
    cnot_r_model: int
    cnot_rz_model: int
    rotations_r_model: int
    rotations_rz_model: int


def count_gates(circuit: Circuit, model: str = "rz") -> GateCounts:
    """Tally a circuit and price its term gates under the given model.

    Model "rz": a k-controlled phase ladder over the m value qubits costs
    2m + 2(k-1) CNOTs and m traceless rotations.  Model "r": every
    k-controlled single-qubit rotation costs 2^k CNOTs and 2^k rotations.
    The returned counts carry both models regardless of `model`; the argument
    only validates the name.
    """
    if model not in ("r", "rz"):
        raise ValueError(f"unknown cost model {model!r}")
    n, m = circuit.num_vars, circuit.num_value
    kind_totals: dict[str, int] = {}
    hist: dict[int, int] = {}
    iqft_cphase = 0
    init_cnot = 0
    init_cry: dict[int, int] = {}
    hadamards = 0
    seen_phase_gate = False
    for gate in circuit.gates:
        kind_totals[gate.kind] = kind_totals.get(gate.kind, 0) + 1
        if gate.kind in ("phase", "cphase", "rz", "crz"):
            seen_phase_gate = True
        if gate.kind == "h":
            if not seen_phase_gate:
                hadamards += 1
        elif gate.kind == "cnot" and max(gate.qubits) < n:
            init_cnot += 1
        elif gate.kind == "cry":
            init_cry[len(gate.controls)] = init_cry.get(len(gate.controls), 0) + 1
        elif gate.kind in ("cphase", "crz"):
            in_value = [q >= n for q in gate.qubits]
            if all(in_value):
                iqft_cphase += 1
            elif in_value[-1] and not any(in_value[:-1]):
                k = len(gate.controls)
                hist[k] = hist.get(k, 0) + 1
    if m:
        for k, gates_k in hist.items():
            if gates_k % m:
                raise ValueError("term gates do not group into whole phase ladders")
    terms_per_rank = {k: gates_k // m for k, gates_k in hist.items()} if m else {}
    constant_terms = sum(
        1
        for gate in circuit.gates
        if gate.kind in ("phase", "rz") and gate.qubits[0] >= n
    ) // max(m, 1)
    cnot_rz = sum((2 * m + 2 * (k - 1)) * t for k, t in terms_per_rank.items())
    cnot_r = sum((1 << k) * m * t for k, t in terms_per_rank.items())
    rot_rz = m * (sum(terms_per_rank.values()) + constant_terms)
    rot_r = sum((1 << k) * m * t for k, t in terms_per_rank.items()) + m * constant_terms
    return GateCounts(
        num_qubits=circuit.num_qubits,
        num_value=m,
        kind_totals=kind_totals,
        term_rank_histogram=hist,
        initial_hadamard_count=hadamards,
        iqft_cphase_count=iqft_cphase,
        init_cnot_count=init_cnot,
        init_controlled_ry=init_cry,
        cnot_r_model=cnot_r,
        cnot_rz_model=cnot_rz,
        rotations_r_model=rot_r,
        rotations_rz_model=rot_rz,
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def circuit_to_text(circuit: Circuit) -> str:
    """One gate per line: kind, qubits, optional angle (repr-exact floats)."""
    lines = [f"circuit {circuit.num_vars} {circuit.num_value}"]
    for gate in circuit.gates:
        parts = [gate.kind, ",".join(str(q) for q in gate.qubits)]
        if gate.angle is not None:
            parts.append(repr(gate.angle))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("circuit "):
        raise ValueError("missing circuit header line")
    _, n, m = lines[0].split()
    gates = []
    for ln in lines[1:]:
        parts = ln.split()
        qubits = tuple(int(q) for q in parts[1].split(","))
        angle = float(parts[2]) if len(parts) > 2 else None
        gates.append(Gate(parts[0], qubits, angle))
    return Circuit(int(n), int(m), gates)
