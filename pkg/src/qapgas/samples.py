"""Bundled benchmark instances at desk scale.

Small normalized instances (entries on the 0.1 grid, symmetric, zero
diagonal) with their known optimal assignments, handy for demos and as
regression fixtures.  Optima were confirmed against brute_force_optimum.
"""
from __future__ import annotations

import numpy as np

from .qap import Permutation, QapInstance

_FLOWS = {
    3: [
        [0, 0.5, 0.2],
        [0.5, 0, 0.1],
        [0.2, 0.1, 0],
    ],
    4: [
        [0, 0.9, 0.2, 1],
        [0.9, 0, 0.1, 0.9],
        [0.2, 0.1, 0, 0.7],
        [1, 0.9, 0.7, 0],
    ],
    5: [
        [0, 0.6, 1, 1, 0.7],
        [0.6, 0, 0.2, 0.7, 1],
        [1, 0.2, 0, 0.2, 0.4],
        [1, 0.7, 0.2, 0, 0.2],
        [0.7, 1, 0.4, 0.2, 0],
    ],
    6: [
        [0, 1, 0.7, 0.4, 0.5, 1],
        [1, 0, 0.3, 0.6, 0.5, 0.5],
        [0.7, 0.3, 0, 0.1, 0.5, 0],
        [0.4, 0.6, 0.1, 0, 0.8, 0.5],
        [0.5, 0.5, 0.5, 0.8, 0, 0],
        [1, 0.5, 0, 0.5, 0, 0],
    ],
    8: [
        [0, 0.4, 1, 0.1, 0.4, 0.5, 0.9, 0.3],
        [0.4, 0, 0.7, 0.8, 0.6, 0.9, 0, 0],
        [1, 0.7, 0, 1, 0.1, 0.9, 0, 0.9],
        [0.1, 0.8, 1, 0, 0.3, 0.8, 0.7, 0.1],
        [0.4, 0.6, 0.1, 0.3, 0, 0.2, 1, 0.7],
        [0.5, 0.9, 0.9, 0.8, 0.2, 0, 1, 0.6],
        [0.9, 0, 0, 0.7, 1, 1, 0, 0.8],
        [0.3, 0, 0.9, 0.1, 0.7, 0.6, 0.8, 0],
    ],
    10: [
        [0, 0, 0.6, 0.9, 0.1, 0, 0.7, 0, 1, 0.3],
        [0, 0, 0.7, 1, 0.8, 0.7, 0.6, 0.8, 0.5, 1],
        [0.6, 0.7, 0, 0.7, 0.5, 0.7, 1, 0.8, 0.8, 1],
        [0.9, 1, 0.7, 0, 0.2, 0.6, 1, 0, 0.7, 0.9],
        [0.1, 0.8, 0.5, 0.2, 0, 0.7, 0.7, 0.7, 0.4, 0.3],
        [0, 0.7, 0.7, 0.6, 0.7, 0, 0.1, 0, 0.3, 0.2],
        [0.7, 0.6, 1, 1, 0.7, 0.1, 0, 0.4, 0.7, 1],
        [0, 0.8, 0.8, 0, 0.7, 0, 0.4, 0, 0.1, 0.6],
        [1, 0.5, 0.8, 0.7, 0.4, 0.3, 0.7, 0.1, 0, 0.4],
        [0.3, 1, 1, 0.9, 0.3, 0.2, 0.1, 0.6, 0.4, 0],
    ],
}

_DISTS = {
    3: [
        [0, 0.5, 0.6],
        [0.5, 0, 0.9],
        [0.6, 0.9, 0],
    ],
    4: [
        [0, 0.1, 0.9, 0.3],
        [0.1, 0, 0.5, 0.4],
        [0.9, 0.5, 0, 0.6],
        [0.3, 0.4, 0.6, 0],
    ],
    5: [
        [0, 0.3, 0.7, 0.8, 0.4],
        [0.3, 0, 0.1, 0.3, 0.8],
        [0.7, 0.1, 0, 0.5, 0.4],
        [0.8, 0.3, 0.5, 0, 0.3],
        [0.4, 0.8, 0.4, 0.3, 0],
    ],
    6: [
        [0, 0.5, 1, 0.3, 1, 0.1],
        [0.5, 0, 0.4, 0.1, 1, 0.7],
        [1, 0.4, 0, 0.8, 0.8, 0],
        [0.3, 0.1, 0.8, 0, 0.4, 1],
        [1, 1, 0.8, 0.4, 0, 0.1],
        [0.1, 0.7, 0, 1, 0.1, 0],
    ],
    8: [
        [0, 0, 0.1, 0.9, 0.4, 0.4, 0.8, 0.2],
        [0, 0, 0.8, 0.6, 0.2, 0.5, 0, 0.9],
        [0.1, 0.8, 0, 0.1, 0.6, 0.8, 0.7, 0.1],
        [0.9, 0.6, 0.1, 0, 0.3, 0.8, 0.6, 0.2],
        [0.4, 0.2, 0.6, 0.3, 0, 0.4, 0, 1],
        [0.4, 0.5, 0.8, 0.8, 0.4, 0, 0, 0.5],
        [0.8, 0, 0.7, 0.6, 0, 0, 0, 0.1],
        [0.2, 0.9, 0.1, 0.2, 1, 0.5, 0.1, 0],
    ],
    10: [
        [0, 0, 0.8, 0.3, 0.7, 0.5, 0.8, 0.3, 1, 0.4],
        [0, 0, 0.8, 0.5, 0.2, 0, 0.5, 0.3, 0.8, 1],
        [0.8, 0.8, 0, 0.3, 0.3, 0.8, 0.4, 0.8, 0.9, 0.3],
        [0.3, 0.5, 0.3, 0, 0.4, 0.9, 0.4, 0.9, 0.1, 0.6],
        [0.7, 0.2, 0.3, 0.4, 0, 0.6, 0, 0.9, 0.2, 1],
        [0.5, 0, 0.8, 0.9, 0.6, 0, 0.6, 0.9, 0.5, 0.1],
        [0.8, 0.5, 0.4, 0.4, 0, 0.6, 0, 0, 0.5, 1],
        [0.3, 0.3, 0.8, 0.9, 0.9, 0.9, 0, 0, 0.5, 0],
        [1, 0.8, 0.9, 0.1, 0.2, 0.5, 0.5, 0.5, 0, 0.1],
        [0.4, 1, 0.3, 0.6, 1, 0.1, 1, 0, 0.1, 0],
    ],
}

KNOWN_OPTIMA: dict[int, tuple[tuple[int, ...], float]] = {
    3: ((1, 2, 3), 0.92),
    4: ((4, 1, 3, 2), 2.64),
    5: ((2, 5, 3, 1, 4), 4.50),
    6: ((6, 1, 3, 4, 2, 5), 5.48),
    8: ((2, 4, 1, 3, 5, 8, 7, 6), 8.92),
    10: ((5, 10, 2, 9, 3, 6, 4, 1, 7, 8), 20.09),
}

SAMPLE_SIZES = tuple(sorted(_FLOWS))


def sample_instance(n: int) -> QapInstance:
    if n not in _FLOWS:
        raise KeyError(f"no bundled instance of size {n}; available: {SAMPLE_SIZES}")
    return QapInstance(n, np.array(_FLOWS[n]), np.array(_DISTS[n]), name=f"sample-n{n}")


def sample_optimum(n: int) -> tuple[Permutation, float]:
    mapping, value = KNOWN_OPTIMA[n]
    return Permutation(mapping), value
