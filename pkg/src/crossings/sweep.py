"""
Batch enumeration of intersecting segment pairs.

Segments are swept by the x-coordinate of their source. Every segment is
tested against the segments whose source lies in its own x-interval, after
a y-interval filter; the tests themselves are the exact orientation
predicates, vectorized with a float filter and exact fallback.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Sequence, Tuple

import numpy as np

from geometry.predicates import orient_signs
from geometry.primitives import IntersectionMode, Segment

logger = logging.getLogger(__name__)

PAIRS_PER_CHUNK = 1_000_000


def segments_to_array(segments: Sequence[Segment]) -> np.ndarray:
    if not segments:
        return np.zeros((0, 4))
    return np.array([s.as_tuple() for s in segments], dtype=np.float64)


def _candidate_chunks(coords: np.ndarray) -> Tuple[np.ndarray, List[Tuple[int, int]], np.ndarray]:
    order = np.argsort(coords[:, 0], kind="stable")
    sx = coords[order, 0]
    tx = coords[order, 2]
    ends = np.searchsorted(sx, tx, side="right")
    counts = np.maximum(ends - np.arange(order.shape[0]) - 1, 0)

    chunks = []
    start, acc = 0, 0
    for i, c in enumerate(counts.tolist()):
        acc += c
        if acc >= PAIRS_PER_CHUNK:
            chunks.append((start, i + 1))
            start, acc = i + 1, 0
    if start < order.shape[0]:
        chunks.append((start, order.shape[0]))
    return order, chunks, counts


def _test_chunk(coords: np.ndarray, order: np.ndarray, counts: np.ndarray,
                lo: int, hi: int, proper: bool) -> np.ndarray:
    cnt = counts[lo:hi]
    total = int(cnt.sum())
    if total == 0:
        return np.zeros((0, 2), dtype=np.int64)
    first = np.repeat(np.arange(lo, hi), cnt)
    offsets = np.arange(total) - np.repeat(np.cumsum(cnt) - cnt, cnt)
    second = first + 1 + offsets
    a = order[first]
    b = order[second]

    A = coords[a]
    B = coords[b]
    ylo_a = np.minimum(A[:, 1], A[:, 3])
    yhi_a = np.maximum(A[:, 1], A[:, 3])
    ylo_b = np.minimum(B[:, 1], B[:, 3])
    yhi_b = np.maximum(B[:, 1], B[:, 3])
    keep = np.maximum(ylo_a, ylo_b) <= np.minimum(yhi_a, yhi_b)
    a, b, A, B = a[keep], b[keep], A[keep], B[keep]
    if a.shape[0] == 0:
        return np.zeros((0, 2), dtype=np.int64)

    o1 = orient_signs(A[:, 0], A[:, 1], A[:, 2], A[:, 3], B[:, 0], B[:, 1]).astype(np.int64)
    o2 = orient_signs(A[:, 0], A[:, 1], A[:, 2], A[:, 3], B[:, 2], B[:, 3]).astype(np.int64)
    o3 = orient_signs(B[:, 0], B[:, 1], B[:, 2], B[:, 3], A[:, 0], A[:, 1]).astype(np.int64)
    o4 = orient_signs(B[:, 0], B[:, 1], B[:, 2], B[:, 3], A[:, 2], A[:, 3]).astype(np.int64)

    if proper:
        hit = (o1 * o2 < 0) & (o3 * o4 < 0)
    else:
        collinear = (o1 == 0) & (o2 == 0)
        hit = (o1 * o2 <= 0) & (o3 * o4 <= 0) & ~collinear
        for k in np.flatnonzero(collinear).tolist():
            sa, ta = (A[k, 0], A[k, 1]), (A[k, 2], A[k, 3])
            sb, tb = (B[k, 0], B[k, 1]), (B[k, 2], B[k, 3])
            hit[k] = max(sa, sb) <= min(ta, tb)

    pairs = np.stack([np.minimum(a[hit], b[hit]), np.maximum(a[hit], b[hit])], axis=1)
    return pairs.astype(np.int64)


def intersecting_pairs(coords: np.ndarray, proper: bool = False, workers: int = 1) -> np.ndarray:
    """
    Index pairs (i < j) of intersecting segments.

    Args:
        coords: (n, 4) array of lexicographically directed segments
        proper: Report only interior-interior crossings
        workers: Thread count for processing sweep chunks

    Returns:
        (k, 2) int array sorted lexicographically
    """
    coords = np.asarray(coords, dtype=np.float64).reshape(-1, 4)
    if coords.shape[0] < 2:
        return np.zeros((0, 2), dtype=np.int64)
    order, chunks, counts = _candidate_chunks(coords)

    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _test_chunk(coords, order, counts, c[0], c[1], proper), chunks))
    else:
        parts = [_test_chunk(coords, order, counts, lo, hi, proper) for lo, hi in chunks]

    pairs = np.concatenate(parts, axis=0) if parts else np.zeros((0, 2), dtype=np.int64)
    if pairs.shape[0]:
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
    logger.debug("sweep over %d segments found %d pairs", coords.shape[0], pairs.shape[0])
    return pairs


def enumerate_intersections(segments: Sequence[Segment], mode=IntersectionMode.CLOSED,
                            workers: int = 1) -> List[Tuple[int, int]]:
    """
    All intersecting index pairs of a list of segments.

    Args:
        segments: Segments to test
        mode: "closed" (default) or "proper"
        workers: Thread count

    Returns:
        Sorted list of (i, j) with i < j
    """
    mode = IntersectionMode(mode)
    pairs = intersecting_pairs(segments_to_array(segments), mode is IntersectionMode.PROPER, workers)
    return [tuple(p) for p in pairs.tolist()]
