"""Result record shared by the fast and brute-force computations."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["TauStarResult", "quadruple_denominator"]


def quadruple_denominator(n: int) -> int:
    """Number of ordered distinct quadruples, n(n-1)(n-2)(n-3)."""
    return n * (n - 1) * (n - 2) * (n - 3)


@dataclass(frozen=True)
class TauStarResult:
    """Exact outcome of a tau-star computation.

    numerator/denominator is the statistic as an unreduced exact rational;
    tstar is the one-time float conversion of that rational. The fast
    methods report the quadruple counts n_c and n_d (numerator equals
    16*n_c - 8*n_d); the brute-force method reports the raw kernel sum and
    leaves the counts as None. method is one of "fast-tied", "fast-untied"
    (same code path, label records that the input had no ties) or "naive".
    """

    n: int
    m_x: int
    m_y: int
    n_c: int | None
    n_d: int | None
    numerator: int
    denominator: int
    tstar: float
    method: str
