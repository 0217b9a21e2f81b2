"""
Minimum distance of an additive code by exhaustive codeword enumeration.

Messages are split into a low part of L digits, whose q^L codewords are
materialized once as a block, and a high part walked in q-ary Gray-code
order so that consecutive high offsets differ by adding a single generator
row. Every step therefore costs one vectorized table addition of the offset
onto the low block plus a weight count.
"""
import logging
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import List, Optional, Tuple

import numpy as np

from addequiv.config import get_settings
from addequiv.models.codes import AdditiveCode, CodeError
from addequiv.utils.errors import AddEquivError

logger = logging.getLogger(__name__)


class BudgetExceeded(AddEquivError):
    """Raised when an enumeration would exceed its configured budget."""

    def __init__(self, message: str, required: int, budget: int):
        super().__init__(message)
        self.required = required
        self.budget = budget


def _pair_weights(words: np.ndarray, n: int) -> np.ndarray:
    return np.count_nonzero(words.reshape(words.shape[0], n, 2).any(axis=2), axis=1)


def _low_block(rows: np.ndarray, code: AdditiveCode) -> np.ndarray:
    """All q^L combinations of the given rows, message digit 0 varying slowest."""
    t = code.spec.tables
    block = np.zeros((1, 2 * code.n), dtype=np.uint8)
    for row in rows:
        block = np.concatenate([t.add[block, t.mul[c, row]] for c in range(code.spec.q)])
    return block


def _gray_digits(t: int, q: int, length: int) -> List[int]:
    """Digits of the q-ary modular Gray code word of index t."""
    b = []
    for _ in range(length + 1):
        b.append(t % q)
        t //= q
    return [(b[i] - b[i + 1]) % q for i in range(length)]


def _scan_range(
    code: AdditiveCode,
    low: np.ndarray,
    high_rows: np.ndarray,
    start: int,
    stop: int,
    found_one: threading.Event,
) -> int:
    """Minimum weight over high indices [start, stop), skipping the zero codeword."""
    t = code.spec.tables
    q = code.spec.q
    offset = np.zeros(2 * code.n, dtype=np.uint8)
    for i, digit in enumerate(_gray_digits(start, q, len(high_rows))):
        if digit:
            offset = t.add[offset, t.mul[digit, high_rows[i]]]

    best = 2 * code.n + 1
    counter = start
    while counter < stop:
        weights = _pair_weights(t.add[low, offset], code.n)
        if counter == 0:
            weights = weights[1:]
        if weights.size:
            best = min(best, int(weights.min()))
        if best <= 1 or found_one.is_set():
            found_one.set()
            break
        counter += 1
        if counter < stop:
            # Gray step: digit j changes by +1, j = lowest non-(q-1) digit of counter - 1
            previous, j = counter - 1, 0
            while previous % q == q - 1:
                previous //= q
                j += 1
            offset = t.add[offset, high_rows[j]]
    return best


def min_distance(
    code: AdditiveCode,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> int:
    """
    Minimum Hamming weight over all nonzero codewords.

    Args:
        code: Additive code with k >= 1
        budget: Maximum number of codewords q^k to enumerate
                (defaults to settings.DISTANCE_BUDGET)
        workers: Threads evaluating disjoint message ranges
                 (defaults to settings.DISTANCE_WORKERS)

    Returns:
        The minimum distance d

    Raises:
        CodeError: for the zero code
        BudgetExceeded: if q^k exceeds the budget
    """
    settings = get_settings()
    budget = budget or settings.DISTANCE_BUDGET
    workers = workers or settings.DISTANCE_WORKERS
    q, k = code.spec.q, code.k
    if k == 0:
        raise CodeError("the zero code has no nonzero codewords")
    total = q ** k
    if total > budget:
        raise BudgetExceeded(
            f"q^k = {q}^{k} = {total} codewords exceed the budget {budget}",
            required=total, budget=budget,
        )

    low_len = 1
    while low_len < k and q ** (low_len + 1) <= settings.DISTANCE_CHUNK:
        low_len += 1
    G = code.G.entries
    low = _low_block(G[:low_len], code)
    high_rows = G[low_len:]
    high_count = q ** len(high_rows)
    logger.debug(
        f"Enumerating {total} codewords: low block {low.shape[0]}, {high_count} Gray steps"
    )

    found_one = threading.Event()
    workers = max(1, min(workers, high_count))
    if workers == 1:
        return _scan_range(code, low, high_rows, 0, high_count, found_one)

    bounds = [(high_count * w) // workers for w in range(workers + 1)]
    ranges: List[Tuple[int, int]] = [(a, b) for a, b in zip(bounds, bounds[1:]) if a < b]
    best = 2 * code.n + 1
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [
            executor.submit(_scan_range, code, low, high_rows, a, b, found_one)
            for a, b in ranges
        ]
        for future in as_completed(futures):
            best = min(best, future.result())
    return best
