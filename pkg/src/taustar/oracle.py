"""Brute-force reference computations used as ground truth in tests.

Everything here works straight from the defining quadruple sum or from the
four-point classification, with no shared machinery with the O(n^2) path.
Deliberately simple and slow; the CLI caps it at small n.
"""

from __future__ import annotations

from enum import Enum
from itertools import chain, combinations, islice, permutations
from typing import Iterator, Sequence

import numpy as np

from .core import Dataset, rank_dense
from .errors import TooFewSamplesError
from .result import TauStarResult, quadruple_denominator

__all__ = [
    "QuadrupleClass",
    "a_sign",
    "classify_quadruple",
    "count_quadruples_naive",
    "tstar_naive",
]

# All 24 orderings of four items, enumerated explicitly: the quadruple sum
# below never relies on a symmetry factor.
_ORDERINGS = tuple(permutations(range(4)))

_SUBSET_BLOCK = 1 << 18


class QuadrupleClass(Enum):
    CONCORDANT = "concordant"
    DISCORDANT = "discordant"
    NEITHER = "neither"


def a_sign(z1: float, z2: float, z3: float, z4: float) -> int:
    """Sign of |z1-z2| + |z3-z4| - |z1-z3| - |z2-z4|, in {-1, 0, +1}."""
    d = abs(z1 - z2) + abs(z3 - z4) - abs(z1 - z3) - abs(z2 - z4)
    return (d > 0) - (d < 0)


def classify_quadruple(p1, p2, p3, p4) -> QuadrupleClass:
    """Classify four (x, y) points as concordant, discordant or neither.

    Sort the points by x. A split exists when the second-smallest x is
    strictly below the third-smallest; otherwise the quadruple is neither
    (the split is unique when it exists). With low-pair ys {u1, u2} and
    high-pair ys {v1, v2}:

      concordant: max(u) < min(v) or min(u) > max(v)
      discordant: max(u) > min(v) and min(u) < max(v), and additionally
                  u1 != u2 and v1 != v2

    The distinctness requirement on each pair's ys is forced by the kernel:
    a quadruple whose low or high pair is tied in y and whose other pair
    straddles it sums to zero over all 24 orderings, not to the discordant
    weight (test_oracle verifies this exhaustively over a small alphabet).
    """
    pts = sorted((p1, p2, p3, p4), key=lambda p: p[0])
    if not pts[1][0] < pts[2][0]:
        return QuadrupleClass.NEITHER
    u1, u2 = pts[0][1], pts[1][1]
    v1, v2 = pts[2][1], pts[3][1]
    lo_min, lo_max = min(u1, u2), max(u1, u2)
    hi_min, hi_max = min(v1, v2), max(v1, v2)
    if lo_max < hi_min or lo_min > hi_max:
        return QuadrupleClass.CONCORDANT
    if lo_max > hi_min and lo_min < hi_max and u1 != u2 and v1 != v2:
        return QuadrupleClass.DISCORDANT
    return QuadrupleClass.NEITHER


def count_quadruples_naive(d: Dataset) -> tuple[int, int]:
    """Classify every 4-subset of the data; return (N_c, N_d). O(n^4)."""
    if d.n < 4:
        raise TooFewSamplesError(f"quadruple counting requires n >= 4, got n={d.n}")
    pts = list(zip(d.xs.tolist(), d.ys.tolist()))
    n_c = 0
    n_d = 0
    for q in combinations(pts, 4):
        cls = classify_quadruple(*q)
        if cls is QuadrupleClass.CONCORDANT:
            n_c += 1
        elif cls is QuadrupleClass.DISCORDANT:
            n_d += 1
    return n_c, n_d


def _subset_blocks(n: int, block: int = _SUBSET_BLOCK) -> Iterator[np.ndarray]:
    it = combinations(range(n), 4)
    while True:
        flat = np.fromiter(chain.from_iterable(islice(it, block)), dtype=np.int64)
        if flat.size == 0:
            return
        yield flat.reshape(-1, 4)


def _a_sign_block(z: np.ndarray, order: tuple[int, int, int, int]) -> np.ndarray:
    z1, z2, z3, z4 = (z[:, j] for j in order)
    d = np.abs(z1 - z2) + np.abs(z3 - z4) - np.abs(z1 - z3) - np.abs(z2 - z4)
    return np.sign(d)


def tstar_naive(d: Dataset) -> TauStarResult:
    """Literal evaluation of the defining sum over all ordered quadruples.

    Both coordinates are dense-ranked first: the sign kernel depends only
    on the joint weak ordering of its arguments, so integer ranks evaluate
    every term exactly, whereas raw float arithmetic can misreport a zero
    term through cancellation. The sum runs over all 24 orderings of every
    4-subset in int64 and is returned unreduced over n(n-1)(n-2)(n-3).
    """
    n = d.n
    if n < 4:
        raise TooFewSamplesError(f"tau-star requires n >= 4, got n={n}")
    rx = rank_dense(d.xs)
    ry = rank_dense(d.ys)
    total = 0
    for subsets in _subset_blocks(n):
        x = rx[subsets]
        y = ry[subsets]
        for order in _ORDERINGS:
            total += int((_a_sign_block(x, order) * _a_sign_block(y, order)).sum())
    denominator = quadruple_denominator(n)
    return TauStarResult(
        n=n,
        m_x=int(rx.max()),
        m_y=int(ry.max()),
        n_c=None,
        n_d=None,
        numerator=total,
        denominator=denominator,
        tstar=total / denominator,
        method="naive",
    )
