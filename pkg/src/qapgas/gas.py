"""Adaptive-threshold Grover search over an encoded objective.

The driver follows the real-coefficient variant of the adaptive algorithm:
sample an initial state, set the threshold to its objective value, and then
repeatedly run `L` Grover steps (L drawn uniformly at random, growing the
draw range by a factor 8/7 on every failure, capped at sqrt(space size)),
re-evaluating each measured sample classically and lowering the threshold on
improvement.

Two interchangeable backends produce the per-iteration samples:

* ``emulated`` -- classical amplification model.  The search space is
  enumerated once; a sample is marked (objective below threshold) with the
  exact Grover probability sin^2((2L+1) * asin(sqrt(t/|S|))) and drawn
  uniformly within its class.
* ``exact``    -- dense statevector evolution of the actual circuit, using a
  vectorized form of the preparation operator (diagonal phase ladder plus a
  fast Fourier transform for the inverse QFT) that is unitarily identical to
  the gate-level construction.

Query accounting: one iteration with L Grover applications costs L + 1
queries (the +1 is the state preparation/measurement).  The initial
classical sample is not counted; per-run reports carry both conventions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import dicke_rank_to_bits, objective_values, width_for_range
from .encodings import Formulation, FormulationKind

EMULATION_SPACE_CAP = 1 << 26
EXACT_VARIABLE_CAP = 20
GROWTH_FACTOR = 8.0 / 7.0


class SpaceScaleError(ValueError):
    """Raised when a search space is too large to enumerate or simulate."""


def marked_probability(marked: int, size: int, rotations: int) -> float:
    """Probability that `rotations` Grover steps end on a marked state."""
    if not 0 <= marked <= size:
        raise ValueError("marked count out of range")
    if marked == 0:
        return 0.0
    angle = math.asin(math.sqrt(marked / size))
    return math.sin((2 * rotations + 1) * angle) ** 2


# ---------------------------------------------------------------------------
# emulated backend
# ---------------------------------------------------------------------------


class SearchSpace:
    """Enumerated objective values over a formulation's search space.

    Values are held sorted together with the permutation back to state
    indices, so threshold counts are binary searches and class-uniform
    sampling is an array lookup.
    """

    def __init__(self, form: Formulation):
        size = form.space_size
        if size > EMULATION_SPACE_CAP:
            raise SpaceScaleError(
                f"search space of {size} states exceeds the enumeration cap {EMULATION_SPACE_CAP}"
            )
        self.form = form
        self.size = size
        values = objective_values(form)
        order = np.argsort(values, kind="stable")
        self.sorted_values = values[order]
        self.order = order.astype(np.int64 if size > (1 << 31) else np.int32)
        del values

    # States whose value ties the threshold are not improvements and must not
    # count as marked; the tolerance absorbs last-ulp spread among
    # mathematically equal objective values so both backends agree on ties.
    TIE_TOL = 1e-9

    def count_below(self, threshold: float) -> int:
        return int(np.searchsorted(self.sorted_values, threshold - self.TIE_TOL, side="left"))

    def bits_of(self, state_index: int) -> int:
        if self.form.kind is FormulationKind.QUBO_DICKE:
            return dicke_rank_to_bits(self.form, state_index)
        return int(state_index)

    def uniform_sample(self, rng: np.random.Generator) -> tuple[int, float]:
        rank = int(rng.integers(self.size))
        return self.bits_of(int(self.order[rank])), float(self.sorted_values[rank])

    def minimum(self) -> tuple[int, float]:
        return self.bits_of(int(self.order[0])), float(self.sorted_values[0])

    def sample(self, threshold: float, rotations: int, rng: np.random.Generator) -> tuple[int, float]:
        """One measurement of G^L applied to the prepared state."""
        t = self.count_below(threshold)
        if t == 0:
            rank = int(rng.integers(self.size))
        else:
            p = marked_probability(t, self.size, rotations)
            if t == self.size or rng.random() < p:
                rank = int(rng.integers(t))
            else:
                rank = int(rng.integers(t, self.size))
        return self.bits_of(int(self.order[rank])), float(self.sorted_values[rank])


# ---------------------------------------------------------------------------
# exact statevector backend
# ---------------------------------------------------------------------------


class ExactEngine:
    """Statevector sampler equivalent to running the prepared circuit.

    Works on the (value register) x (variable register) amplitude grid.  The
    preparation applies the initial superposition, the diagonal phase ladder
    for scale*(E(x) - y), and the inverse Fourier transform along the value
    axis.  A Grover step is the sign-bit oracle followed by the reflection
    about the prepared state, which only needs the prepared state itself.

    ``scale`` multiplies the objective inside the register (thresholds and
    reported values stay unscaled); choosing a scale that makes all values
    integers makes the register readout, and hence the oracle, exact.
    """

    def __init__(self, form: Formulation, scale: float = 1.0, width: int | None = None):
        n = form.num_vars
        if n > EXACT_VARIABLE_CAP:
            raise SpaceScaleError(
                f"{n} binary variables exceed the exact backend cap {EXACT_VARIABLE_CAP}"
            )
        self.form = form
        self.scale = float(scale)
        self.values = form.poly.evaluate_table()
        if form.kind is FormulationKind.QUBO_DICKE:
            support = np.zeros(1 << n, dtype=bool)
            size = form.size_n**form.size_n
            for rank in range(size):
                support[dicke_rank_to_bits(form, rank)] = True
            self.support = support
        else:
            self.support = np.ones(1 << n, dtype=bool)
        sup_vals = self.values[self.support]
        lo, hi = float(sup_vals.min()), float(sup_vals.max())
        span = self.scale * (hi - lo)
        self.width = width if width is not None else width_for_range(-span, span)
        if n + self.width > 26:
            raise SpaceScaleError(
                f"{n}+{self.width} qubits exceed the statevector cap; "
                "use the emulated backend"
            )
        amp = 1.0 / math.sqrt(int(self.support.sum()))
        self._init = np.where(self.support, amp, 0.0).astype(np.complex128)
        half = 1 << (self.width - 1)
        signs = np.ones(1 << self.width)
        signs[half:] = -1.0
        self._oracle = signs[:, np.newaxis]
        self._z = np.arange(1 << self.width)[:, np.newaxis]
        self._cumulative_cache: dict[tuple[float, int], np.ndarray] = {}

    def prepared_state(self, threshold: float) -> np.ndarray:
        """Grid (2^m, 2^n) of amplitudes after the preparation operator."""
        m = self.width
        phases = np.exp(
            2j * math.pi * self.scale * (self.values - threshold)[np.newaxis, :] * self._z / (1 << m)
        )
        grid = phases * (self._init / math.sqrt(1 << m))[np.newaxis, :]
        return np.fft.fft(grid, axis=0) / math.sqrt(1 << m)

    def grover_step(self, state: np.ndarray, prepared: np.ndarray) -> np.ndarray:
        flipped = self._oracle * state
        overlap = np.vdot(prepared, flipped)
        return 2.0 * overlap * prepared - flipped

    def variable_distribution(self, threshold: float, rotations: int) -> np.ndarray:
        prepared = self.prepared_state(threshold)
        state = prepared
        for _ in range(rotations):
            state = self.grover_step(state, prepared)
        probs = np.sum(np.abs(state) ** 2, axis=0)
        return probs / probs.sum()

    def _cumulative(self, threshold: float, rotations: int) -> np.ndarray:
        # The adaptive loop revisits the same (threshold, rotations) pairs
        # many times; one evolved distribution serves them all.
        key = (threshold, rotations)
        cached = self._cumulative_cache.get(key)
        if cached is None:
            if len(self._cumulative_cache) > 512:
                self._cumulative_cache.clear()
            cached = np.cumsum(self.variable_distribution(threshold, rotations))
            self._cumulative_cache[key] = cached
        return cached

    def sample(self, threshold: float, rotations: int, rng: np.random.Generator) -> tuple[int, float]:
        cumulative = self._cumulative(threshold, rotations)
        x = int(np.searchsorted(cumulative, rng.random(), side="right"))
        return x, float(self.values[x])

    def sample_many(
        self, threshold: float, rotations: int, shots: int, rng: np.random.Generator
    ) -> np.ndarray:
        """Vectorized draw of `shots` variable-register measurements."""
        cumulative = self._cumulative(threshold, rotations)
        return np.searchsorted(cumulative, rng.random(shots), side="right")

    def uniform_sample(self, rng: np.random.Generator) -> tuple[int, float]:
        candidates = np.flatnonzero(self.support)
        x = int(candidates[rng.integers(len(candidates))])
        return x, float(self.values[x])

    def minimum(self) -> tuple[int, float]:
        sup_vals = np.where(self.support, self.values, np.inf)
        x = int(np.argmin(sup_vals))
        return x, float(self.values[x])

    def marked_fraction(self, threshold: float, rotations: int) -> float:
        probs = self.variable_distribution(threshold, rotations)
        marked = self.support & (self.values < threshold)
        return float(probs[marked].sum())


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KnownOptimum:
    """Stop once the threshold reaches a known optimal value."""

    value: float
    tol: float = 1e-9


@dataclass(frozen=True)
class ThresholdStall:
    """Stop after this many consecutive non-improving iterations."""

    limit: int


@dataclass(frozen=True)
class IterationCap:
    """Stop only at the iteration cap."""


Termination = KnownOptimum | ThresholdStall | IterationCap


@dataclass(frozen=True)
class GasConfig:
    lambda_growth: float = GROWTH_FACTOR
    max_iterations: int = 100_000
    termination: Termination = IterationCap()
    backend: str = "emulated"
    seed: int | np.random.SeedSequence | None = None
    rotation_draw: str = "inclusive"

    def __post_init__(self) -> None:
        if self.lambda_growth <= 1.0:
            raise ValueError("growth factor must exceed 1")
        if self.max_iterations < 1:
            raise ValueError("iteration cap must be positive")
        if self.backend not in ("emulated", "exact"):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.rotation_draw not in ("inclusive", "exclusive"):
            raise ValueError(f"unknown rotation draw {self.rotation_draw!r}")


@dataclass(frozen=True)
class GasIteration:
    rotations: int
    bits: int
    value: float
    accepted: bool
    threshold_after: float
    k_after: float


@dataclass
class GasTrace:
    initial_bits: int
    initial_value: float
    iterations: list[GasIteration] = field(default_factory=list)
    best_bits: int = 0
    best_value: float = math.inf
    found_optimum: bool | None = None
    stop_reason: str = "cap"

    @property
    def thresholds(self) -> list[float]:
        return [it.threshold_after for it in self.iterations]

    @property
    def queries(self) -> int:
        return sum(it.rotations + 1 for it in self.iterations)

    @property
    def queries_with_init(self) -> int:
        return self.queries + 1

    @property
    def classical_evaluations(self) -> int:
        return len(self.iterations) + 1


def query_count(trace: GasTrace) -> int:
    """Total oracle queries: L + 1 per iteration (Grover steps plus one preparation)."""
    return trace.queries


def draw_rotation_count(rng: np.random.Generator, k: float, mode: str = "inclusive") -> int:
    """Random Grover-step count for the current draw range k.

    "inclusive" draws uniformly from {0, ..., ceil(k-1)}; "exclusive" from
    {0, ..., ceil(k)-1}.
    """
    if mode == "inclusive":
        top = math.ceil(k - 1)
    else:
        top = math.ceil(k) - 1
    return int(rng.integers(0, max(top, 0) + 1))


def _make_sampler(form: Formulation, config: GasConfig, space, engine):
    if config.backend == "emulated":
        return space if space is not None else SearchSpace(form)
    return engine if engine is not None else ExactEngine(form)


def run_gas(
    form: Formulation,
    config: GasConfig,
    space: SearchSpace | None = None,
    engine: ExactEngine | None = None,
) -> GasTrace:
    """Run the adaptive search until the configured termination triggers.

    Pass a prebuilt SearchSpace or ExactEngine to amortize enumeration across
    many runs of the same formulation.
    """
    sampler = _make_sampler(form, config, space, engine)
    rng = np.random.default_rng(config.seed)
    sqrt_cap = math.sqrt(sampler.size if isinstance(sampler, SearchSpace) else form.space_size)

    bits0, value0 = sampler.uniform_sample(rng)
    trace = GasTrace(initial_bits=bits0, initial_value=value0)
    trace.best_bits, trace.best_value = bits0, value0
    threshold = value0
    k = 1.0
    stall = 0

    def terminated() -> bool:
        term = config.termination
        if isinstance(term, KnownOptimum) and threshold <= term.value + term.tol:
            trace.found_optimum = True
            trace.stop_reason = "optimum"
            return True
        if isinstance(term, ThresholdStall) and stall >= term.limit:
            trace.stop_reason = "stall"
            return True
        return False

    for _ in range(config.max_iterations):
        if terminated():
            break
        rotations = draw_rotation_count(rng, k, config.rotation_draw)
        bits, value = sampler.sample(threshold, rotations, rng)
        accepted = value < threshold
        if accepted:
            threshold = value
            trace.best_bits, trace.best_value = bits, value
            k = 1.0
            stall = 0
        else:
            k = min(config.lambda_growth * k, sqrt_cap)
            stall += 1
        trace.iterations.append(
            GasIteration(rotations, bits, value, accepted, threshold, k)
        )
    else:
        if terminated():
            pass
        elif isinstance(config.termination, KnownOptimum):
            trace.found_optimum = False
    return trace


# ---------------------------------------------------------------------------
# query-complexity experiments
# ---------------------------------------------------------------------------


@dataclass
class CdfResult:
    """Per-formulation query counts from repeated optimum-terminated runs."""

    runs: int
    queries: dict[str, np.ndarray]
    optimum: float

    def median(self, kind: str) -> float:
        return float(np.median(self.queries[kind]))

    def median_ratio(self, slow_kind: str, fast_kind: str) -> float:
        return self.median(slow_kind) / self.median(fast_kind)

    def cdf_rows(self, kind: str) -> list[tuple[int, float]]:
        ordered = np.sort(self.queries[kind])
        return [(int(q), (i + 1) / len(ordered)) for i, q in enumerate(ordered)]


def cdf_experiment(
    forms: dict[str, Formulation],
    optimum_value: float,
    runs: int,
    seed: int = 0,
    max_iterations: int = 100_000,
) -> CdfResult:
    """Repeated emulated runs per formulation, stopping at the known optimum.

    Each run gets an independent child seed of `seed`, so the whole table is
    reproducible.  Returns per-kind query counts (the L+1 convention).
    """
    root = np.random.SeedSequence(seed)
    result: dict[str, np.ndarray] = {}
    for kind, form in sorted(forms.items()):
        space = SearchSpace(form)
        seeds = root.spawn(runs)
        counts = np.empty(runs, dtype=np.int64)
        for r in range(runs):
            config = GasConfig(
                termination=KnownOptimum(optimum_value),
                seed=seeds[r],
                max_iterations=max_iterations,
            )
            trace = run_gas(form, config, space=space)
            if trace.found_optimum is not True:
                raise RuntimeError(
                    f"run {r} for {kind} hit the iteration cap before the optimum"
                )
            counts[r] = trace.queries
        result[kind] = counts
        del space
    return CdfResult(runs=runs, queries=result, optimum=optimum_value)
