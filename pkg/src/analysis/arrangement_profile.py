"""
Arrangement sizes and build times per vertex.
"""

import logging
import time
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from common.errors import ArrangementError, GeometryError
from graph_model.drawing import Drawing, movement_square
from movement.config import MoveConfig
from movement.mover import _edge_sample, order_vertices
from region_search.face_counts import crossing_minimal_region

logger = logging.getLogger(__name__)

PROFILE_COLUMNS = ["vertex", "degree", "atoms", "subpieces", "pairs", "faces", "min_count", "time_ms"]


def arrangement_profile(d: Drawing, vertices: Optional[Iterable[int]] = None,
                        cfg: MoveConfig = MoveConfig(), limit: Optional[int] = None,
                        workers: int = 1) -> pd.DataFrame:
    """
    Build the crossing-minimal region of each vertex and record its size.

    Args:
        d: Drawing
        vertices: Vertices to profile (default: processing order)
        cfg: Supplies the obstacle sample size and seed
        limit: Profile at most this many vertices
        workers: Worker count

    Returns:
        DataFrame with PROFILE_COLUMNS; failed builds keep NaN sizes
    """
    rng = np.random.default_rng(cfg.seed)
    order = order_vertices(d) if vertices is None else [int(v) for v in vertices]
    if limit is not None:
        order = order[:limit]
    square = movement_square(d)
    rows = []
    for v in order:
        row = {"vertex": v, "degree": int(d.graph.degree[v])}
        if row["degree"] == 0:
            rows.append(row)
            continue
        start = time.perf_counter()
        try:
            sample = _edge_sample(d, v, cfg.samples, rng)
            region = crossing_minimal_region(d, v, obstacles=sample, box=square, workers=workers)
        except (ArrangementError, GeometryError) as exc:
            logger.warning("vertex %d: arrangement failed: %s", v, exc)
            rows.append(row)
            continue
        dual = region.dual
        row.update({
            "atoms": len(dual.atoms),
            "subpieces": dual.n_subpieces,
            "pairs": dual.n_pairs,
            "faces": region.counts.n_faces,
            "min_count": region.counts.min_count,
            "time_ms": (time.perf_counter() - start) * 1000.0,
        })
        rows.append(row)
    return pd.DataFrame(rows, columns=PROFILE_COLUMNS)
