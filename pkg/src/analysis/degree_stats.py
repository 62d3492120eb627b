"""
Degree statistics of benchmark graphs.
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np
import pandas as pd

from graph_model.graph import Graph


@dataclass(frozen=True)
class DegreeStats:
    histogram: Dict[int, int]
    mean_degree: float
    n: int
    m: int
    max_degree: int


def degree_histogram(g: Graph) -> DegreeStats:
    """Degree -> vertex count, plus the mean degree 2m/n."""
    degrees = g.degree
    values, counts = np.unique(degrees, return_counts=True)
    histogram = {int(k): int(c) for k, c in zip(values.tolist(), counts.tolist())}
    mean = 2.0 * g.m / g.n if g.n else 0.0
    return DegreeStats(
        histogram=histogram,
        mean_degree=mean,
        n=g.n,
        m=g.m,
        max_degree=int(degrees.max()) if g.n else 0,
    )


def degree_table(graphs: Dict[str, Graph]) -> pd.DataFrame:
    """One row per graph: n, m, mean and max degree."""
    rows = []
    for name, g in graphs.items():
        s = degree_histogram(g)
        rows.append({"graph": name, "n": s.n, "m": s.m, "mean_degree": round(s.mean_degree, 2),
                     "max_degree": s.max_degree})
    return pd.DataFrame(rows, columns=["graph", "n", "m", "mean_degree", "max_degree"])
