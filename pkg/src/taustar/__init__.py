"""Exact tau-star sign covariance for paired samples.

The statistic compares, over all 4-subsets of the data, how often the
points split into two pairs separated in both coordinates against how
often the y-values interleave across an x-split. It is computed here in
O(n^2) from two cumulative rank grids, with and without ties, alongside a
literal O(n^4) evaluation used as ground truth and a seeded permutation
test for independence.
"""

from .core import Dataset, RankedDataset, rank_dense, to_ranked, validate
from .errors import (
    CsvFormatError,
    GridTooLargeError,
    InvalidPermutationCountError,
    LengthMismatchError,
    NonFiniteValueError,
    TauStarError,
    TooFewSamplesError,
)
from .fast import PairCounts, count_concordant, count_discordant, tstar_fast
from .grid import (
    DEFAULT_MAX_GRID_CELLS,
    CdfGrid,
    TiePairGrid,
    build_cdf_grid,
    build_tie_pair_grid,
    cum_count_x,
)
from .inference import PermutationTestResult, permutation_test
from .oracle import (
    QuadrupleClass,
    a_sign,
    classify_quadruple,
    count_quadruples_naive,
    tstar_naive,
)
from .result import TauStarResult

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "RankedDataset",
    "validate",
    "rank_dense",
    "to_ranked",
    "QuadrupleClass",
    "a_sign",
    "classify_quadruple",
    "count_quadruples_naive",
    "tstar_naive",
    "CdfGrid",
    "TiePairGrid",
    "build_cdf_grid",
    "build_tie_pair_grid",
    "cum_count_x",
    "DEFAULT_MAX_GRID_CELLS",
    "PairCounts",
    "TauStarResult",
    "count_concordant",
    "count_discordant",
    "tstar_fast",
    "PermutationTestResult",
    "permutation_test",
    "TauStarError",
    "LengthMismatchError",
    "NonFiniteValueError",
    "TooFewSamplesError",
    "GridTooLargeError",
    "InvalidPermutationCountError",
    "CsvFormatError",
    "__version__",
]
