"""Quadratic-preprocessing grids over the rank lattice.

Both grids are dense (m_x+1) x (m_y+1) int64 matrices with a zero row 0 and
column 0, stored row-major, and answer their queries in O(1):

  CdfGrid      counts[r, s] = #{i : rx_i <= r and ry_i <= s}
  TiePairGrid  pair_counts[r, s] = sum over levels s' <= s of C(R(r, s'), 2)
               where R(r, s') = #{i : rx_i <= r and ry_i = s'}

Storage always uses the inclusive (<=) convention; callers express a strict
inequality by querying row or column r-1. Completed grids are immutable
(read-only buffers) and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import RankedDataset
from .errors import GridTooLargeError

__all__ = [
    "DEFAULT_MAX_GRID_CELLS",
    "CdfGrid",
    "TiePairGrid",
    "build_cdf_grid",
    "build_tie_pair_grid",
    "cum_count_x",
]

DEFAULT_MAX_GRID_CELLS = 2_000_000_000


@dataclass(frozen=True)
class CdfGrid:
    """Cumulative bivariate rank counts; counts[m_x, m_y] equals n."""

    counts: np.ndarray

    @property
    def m_x(self) -> int:
        return self.counts.shape[0] - 1

    @property
    def m_y(self) -> int:
        return self.counts.shape[1] - 1


@dataclass(frozen=True)
class TiePairGrid:
    """Cumulative counts of within-y-level pairs among x-rank prefixes."""

    pair_counts: np.ndarray


def _check_budget(rd: RankedDataset, max_cells: int) -> None:
    cells = (rd.m_x + 1) * (rd.m_y + 1)
    if cells > max_cells:
        raise GridTooLargeError(
            f"grid needs {cells} cells ({rd.m_x + 1} x {rd.m_y + 1}), "
            f"budget is {max_cells}"
        )


def _cell_counts(rd: RankedDataset) -> np.ndarray:
    # Tied observations accumulate: a cell holds the count at that rank pair.
    b = np.zeros((rd.m_x + 1, rd.m_y + 1), dtype=np.int64)
    np.add.at(b, (rd.rx, rd.ry), 1)
    return b


def build_cdf_grid(rd: RankedDataset, max_cells: int = DEFAULT_MAX_GRID_CELLS) -> CdfGrid:
    """Build the cumulative count grid in O(m_x * m_y) plus O(n) setup."""
    _check_budget(rd, max_cells)
    a = _cell_counts(rd)
    np.cumsum(a, axis=0, out=a)
    np.cumsum(a, axis=1, out=a)
    a.flags.writeable = False
    return CdfGrid(counts=a)


def build_tie_pair_grid(rd: RankedDataset, max_cells: int = DEFAULT_MAX_GRID_CELLS) -> TiePairGrid:
    """Build the within-y-level pair-count grid in O(m_x * m_y)."""
    _check_budget(rd, max_cells)
    r = _cell_counts(rd)
    np.cumsum(r, axis=0, out=r)  # R(r, s): points with rx <= r at y-level s
    pairs = r * (r - 1) // 2
    np.cumsum(pairs, axis=1, out=pairs)
    pairs.flags.writeable = False
    return TiePairGrid(pair_counts=pairs)


def cum_count_x(g: CdfGrid, r: int) -> int:
    """Number of observations with x-rank <= r (the full column total)."""
    if not 0 <= r <= g.m_x:
        raise IndexError(f"x-rank index {r} outside 0..{g.m_x}")
    return int(g.counts[r, g.m_y])
