"""Input validation and the canonical ranked representation.

Every algorithm in this package consumes the same form: both coordinates
dense-ranked (equal values share a rank, ranks cover 1..m with no gaps)
and the pairs sorted by x-rank. Ties are decided by exact float equality;
the statistic is defined on order relations, so fuzzy tie detection would
silently change what is being estimated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import LengthMismatchError, NonFiniteValueError, TooFewSamplesError

__all__ = ["Dataset", "RankedDataset", "validate", "rank_dense", "to_ranked"]


def _as_float_array(values: Sequence[float] | np.ndarray, name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a 1-d sequence of numbers, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Dataset:
    """Paired observations (xs[i], ys[i]).

    Construction normalizes both coordinates to read-only float64 arrays and
    checks the lengths match. Use :func:`validate` to also reject non-finite
    values; code paths that build datasets from already-checked arrays (for
    example the permutation test) may construct directly.
    """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "xs", _as_float_array(self.xs, "xs"))
        object.__setattr__(self, "ys", _as_float_array(self.ys, "ys"))
        if self.xs.shape[0] != self.ys.shape[0]:
            raise LengthMismatchError(
                f"xs has {self.xs.shape[0]} values but ys has {self.ys.shape[0]}"
            )

    @property
    def n(self) -> int:
        return int(self.xs.shape[0])


@dataclass(frozen=True)
class RankedDataset:
    """Dense joint ranks sorted by x-rank.

    rx uses every integer in 1..m_x at least once, likewise ry and 1..m_y.
    The order among entries with equal rx is deterministic (y-rank, then
    original position) but carries no meaning; no downstream result may
    depend on it.
    """

    rx: np.ndarray
    ry: np.ndarray
    m_x: int
    m_y: int
    n: int


def validate(xs: Sequence[float], ys: Sequence[float]) -> Dataset:
    """Check lengths and finiteness, returning a Dataset.

    Raises LengthMismatchError or NonFiniteValueError (reporting the first
    offending index). Empty inputs are accepted; operations that need a
    minimum sample size enforce it themselves.
    """
    xa = _as_float_array(xs, "xs")
    ya = _as_float_array(ys, "ys")
    if xa.shape[0] != ya.shape[0]:
        raise LengthMismatchError(f"xs has {xa.shape[0]} values but ys has {ya.shape[0]}")
    for name, arr in (("xs", xa), ("ys", ya)):
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            i = int(bad[0])
            raise NonFiniteValueError(f"{name}[{i}] is not finite ({arr[i]!r})", index=i)
    return Dataset(xa, ya)


def rank_dense(values: Sequence[float]) -> np.ndarray:
    """Dense ranks in 1..m, where m is the number of distinct values.

    Equal inputs get equal ranks and distinct inputs keep their order:
    [2, 2, 3.5, 4, 4, 4] becomes [1, 1, 2, 3, 3, 3]. Computed by sort and
    scan (np.unique); float keys are compared exactly, never hashed or
    bucketed by tolerance.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-d sequence, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        i = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise NonFiniteValueError(f"values[{i}] is not finite ({arr[i]!r})", index=i)
    if arr.size == 0:
        return np.zeros(0, dtype=np.int64)
    _, inverse = np.unique(arr, return_inverse=True)
    return inverse.astype(np.int64, copy=False).reshape(arr.shape) + 1


def to_ranked(d: Dataset) -> RankedDataset:
    """Dense-rank both coordinates and sort the pairs by x-rank."""
    if d.n < 1:
        raise TooFewSamplesError("ranking requires at least one observation")
    rx = rank_dense(d.xs)
    ry = rank_dense(d.ys)
    # Tie order within equal rx is fixed purely for determinism.
    order = np.lexsort((np.arange(d.n), ry, rx))
    rx = rx[order]
    ry = ry[order]
    rx.flags.writeable = False
    ry.flags.writeable = False
    return RankedDataset(rx=rx, ry=ry, m_x=int(rx[-1]), m_y=int(ry.max()), n=d.n)
