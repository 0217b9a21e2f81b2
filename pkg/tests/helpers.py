"""Shared helpers for the test suites."""
import itertools

import numpy as np

from addequiv.core.linalg import GfMatrix


def matrix(spec, rows) -> GfMatrix:
    return GfMatrix.from_array(spec, rows)


def brute_force_distance(code) -> int:
    """Minimum nonzero weight by enumerating every message."""
    G = code.G.gf()
    best = code.n + 1
    for message in itertools.product(range(code.spec.q), repeat=code.k):
        if not any(message):
            continue
        word = (code.spec.GF(np.array(message)) @ G).view(np.ndarray)
        weight = int(np.count_nonzero(word.reshape(code.n, 2).any(axis=1)))
        best = min(best, weight)
    return best
