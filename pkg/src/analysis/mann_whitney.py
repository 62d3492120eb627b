"""
Mann-Whitney U test.

U counts the pairs (x in a, y in b) with x > y, ties counting one half, via
midrank sums. Small samples get exact p-values by enumerating every split
of the pooled ranks; larger ones use the normal approximation with tie and
continuity corrections.
"""

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

from common.errors import UsageError

EXACT_LIMIT = 12
# U values are multiples of 1/2; this separates them safely
U_TOLERANCE = 1e-9


@dataclass(frozen=True)
class MannWhitneyResult:
    u: float
    p_value: float
    p_less: float
    p_greater: float
    exact: bool
    n_a: int
    n_b: int

    @property
    def mean_u(self) -> float:
        return self.n_a * self.n_b / 2.0


def _u_statistic(ranks: np.ndarray, n_a: int) -> float:
    return float(ranks[:n_a].sum() - n_a * (n_a + 1) / 2.0)


def _exact(ranks: np.ndarray, n_a: int, u_obs: float):
    n = ranks.shape[0]
    splits = np.array(list(itertools.combinations(range(n), n_a)), dtype=np.int64)
    u_all = ranks[splits].sum(axis=1) - n_a * (n_a + 1) / 2.0
    mu = n_a * (n - n_a) / 2.0
    total = float(u_all.shape[0])
    p_two = np.count_nonzero(np.abs(u_all - mu) >= abs(u_obs - mu) - U_TOLERANCE) / total
    p_less = np.count_nonzero(u_all <= u_obs + U_TOLERANCE) / total
    p_greater = np.count_nonzero(u_all >= u_obs - U_TOLERANCE) / total
    return p_two, p_less, p_greater


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> MannWhitneyResult:
    """
    Compare two samples.

    Args:
        a: First sample
        b: Second sample

    Returns:
        MannWhitneyResult with U for a, the two-sided p-value and both
        one-sided p-values (p_less: a tends to be smaller than b)

    Raises:
        UsageError: If either sample is empty
    """
    a = np.asarray(a, dtype=np.float64).reshape(-1)
    b = np.asarray(b, dtype=np.float64).reshape(-1)
    if a.shape[0] == 0 or b.shape[0] == 0:
        raise UsageError("mann_whitney_u needs two nonempty samples")
    n_a, n_b = a.shape[0], b.shape[0]
    ranks = stats.rankdata(np.concatenate([a, b]))
    u = _u_statistic(ranks, n_a)

    if n_a + n_b <= EXACT_LIMIT:
        p_two, p_less, p_greater = _exact(ranks, n_a, u)
        return MannWhitneyResult(u, float(p_two), float(p_less), float(p_greater), True, n_a, n_b)

    if np.unique(ranks).shape[0] == 1:
        # every value tied: no information either way
        return MannWhitneyResult(u, 1.0, 1.0, 1.0, False, n_a, n_b)
    results = {
        alt: stats.mannwhitneyu(a, b, alternative=alt, method="asymptotic", use_continuity=True).pvalue
        for alt in ("two-sided", "less", "greater")
    }
    return MannWhitneyResult(
        u, float(results["two-sided"]), float(results["less"]), float(results["greater"]), False, n_a, n_b,
    )
