"""
Vertex movement.

Vertices are visited in decreasing order of their crossing count. For each
vertex a set of candidate positions is generated by the configured strategy
and every candidate is scored against the full edge set; the vertex moves
only when a candidate strictly lowers its crossing count.
"""

import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from arrangement.face_polygon import FacePolygon, extract_face_polygon
from common.errors import ArrangementError, GeometryError
from crossings.crossing_count import CrossingTally, count_all, count_vertex_at_many
from geometry.primitives import BoundingBox, Point
from graph_model.drawing import Drawing, ensure_general_position, movement_square
from movement.config import MoveConfig, Strategy
from region_search.face_counts import MinimalRegion, crossing_minimal_region
from region_search.sampling import face_weights, sample_points_in_polygon

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MoveRecord:
    vertex: int
    pass_index: int
    old_position: Tuple[float, float]
    new_position: Tuple[float, float]
    old_crossings: int
    new_crossings: int
    accepted: bool
    candidates: int
    fallback: bool = False


@dataclass(frozen=True)
class PassRecord:
    pass_index: int
    total_before: int
    total_after: int
    accepted: int
    time_ms: float
    consistent: bool


@dataclass
class MoveReport:
    config: MoveConfig
    moves: List[MoveRecord] = field(default_factory=list)
    passes: List[PassRecord] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def cr_before(self) -> int:
        return self.passes[0].total_before if self.passes else 0

    @property
    def cr_after(self) -> int:
        return self.passes[-1].total_after if self.passes else 0

    def violations(self) -> List[str]:
        """Records that break the acceptance rule or increase the total."""
        problems = []
        for rec in self.moves:
            if rec.accepted and not rec.new_crossings < rec.old_crossings:
                problems.append(f"pass {rec.pass_index} vertex {rec.vertex}: accepted without improvement")
            if not rec.accepted and rec.new_position != rec.old_position:
                problems.append(f"pass {rec.pass_index} vertex {rec.vertex}: moved although rejected")
        for p in self.passes:
            if p.total_after > p.total_before:
                problems.append(f"pass {p.pass_index}: total rose from {p.total_before} to {p.total_after}")
        return problems

    def to_dict(self) -> dict:
        cfg = asdict(self.config)
        cfg["strategy"] = self.config.strategy.value
        cfg["degree_cap"] = None if self.config.degree_cap == math.inf else int(self.config.degree_cap)
        return {
            "config": cfg,
            "cr_before": self.cr_before,
            "cr_after": self.cr_after,
            "wall_time_s": round(self.wall_time_s, 6),
            "passes": [asdict(p) for p in self.passes],
            "moves": [asdict(m) for m in self.moves],
        }


def order_vertices(d: Drawing, tally: Optional[CrossingTally] = None) -> List[int]:
    """Vertices by decreasing Cr(d, v)^2, ties by ascending id."""
    tally = count_all(d) if tally is None else tally
    per = tally.per_vertex.astype(np.int64)
    ids = np.arange(per.shape[0])
    return np.lexsort((ids, -(per * per))).tolist()


def _edge_sample(d: Drawing, v: int, samples: Optional[int], rng: np.random.Generator) -> np.ndarray:
    ends = d.graph.edges
    pool = np.flatnonzero((ends[:, 0] != v) & (ends[:, 1] != v))
    if samples is None or samples >= pool.shape[0]:
        return pool
    return np.sort(rng.choice(pool, size=samples, replace=False))


def _primal_points(square: BoundingBox, budget: int, rng: np.random.Generator) -> np.ndarray:
    lo = np.array([square.xmin, square.ymin])
    hi = np.array([square.xmax, square.ymax])
    return rng.uniform(lo, hi, size=(budget, 2))


def _usable_polygon(region: MinimalRegion, face: int, cache: Dict[int, Optional[FacePolygon]]):
    if face not in cache:
        start = int(region.dual.cycle_representatives()[face])
        polygon = extract_face_polygon(region.dual, start)
        cache[face] = None if polygon.is_hole_cycle else polygon
    return cache[face]


def _restricted_points(region: MinimalRegion, budget: int, rng: np.random.Generator) -> np.ndarray:
    cache: Dict[int, Optional[FacePolygon]] = {}
    faces = [f for f, _ in region.faces if _usable_polygon(region, f, cache) is not None]
    if not faces or budget == 0:
        return np.zeros((0, 2))
    # round-robin over the tied minimal faces
    per_face = np.bincount(np.arange(budget) % len(faces), minlength=len(faces))
    parts = [sample_points_in_polygon(cache[f], rng, int(c)) for f, c in zip(faces, per_face) if c]
    return np.concatenate(parts, axis=0)


def _weighted_points(region: MinimalRegion, budget: int, rng: np.random.Generator) -> np.ndarray:
    cache: Dict[int, Optional[FacePolygon]] = {}
    allowed = np.flatnonzero(region.counts.interior).tolist()
    parts = []
    remaining = budget
    while remaining > 0 and allowed:
        ids, probs = face_weights(region.counts, allowed)
        drawn, per_face = np.unique(rng.choice(ids, size=remaining, p=probs), return_counts=True)
        rejected = set()
        for f, c in zip(drawn.tolist(), per_face.tolist()):
            polygon = _usable_polygon(region, f, cache)
            if polygon is None:
                rejected.add(f)
                continue
            parts.append(sample_points_in_polygon(polygon, rng, c))
            remaining -= c
        if not rejected:
            break
        allowed = [f for f in allowed if f not in rejected]
    return np.concatenate(parts, axis=0) if parts else np.zeros((0, 2))


def _neighbor_groups(d: Drawing, v: int, cap: float, rng: np.random.Generator) -> List[Optional[np.ndarray]]:
    neighbors = d.graph.adjacency[v]
    if neighbors.shape[0] <= cap:
        return [None]
    k = int(cap)
    shuffled = rng.permutation(neighbors)
    return [shuffled[i:i + k] for i in range(0, shuffled.shape[0], k)]


def candidate_positions(d: Drawing, v: int, cfg: MoveConfig, rng: np.random.Generator,
                        square: Optional[BoundingBox] = None, neighbors: Optional[Sequence[int]] = None,
                        workers: int = 1) -> np.ndarray:
    """
    Candidate positions for v under the configured strategy.

    Args:
        d: Drawing
        v: Vertex to move
        cfg: Move configuration
        rng: Random generator
        square: Movement square (default: computed from d)
        neighbors: Neighbor group defining the arrangement (default N(v))
        workers: Worker count for the arrangement

    Returns:
        (k, 2) array of positions

    Raises:
        ArrangementError: If the sampled arrangement is degenerate
    """
    square = movement_square(d) if square is None else square
    if cfg.strategy is Strategy.PRIMAL:
        return _primal_points(square, cfg.points, rng)

    sample = _edge_sample(d, v, cfg.samples, rng)
    region = crossing_minimal_region(d, v, obstacles=sample, box=square, neighbors=neighbors, workers=workers)
    if cfg.strategy is Strategy.RESTRICTED:
        return _restricted_points(region, cfg.points, rng)
    return _weighted_points(region, cfg.points, rng)


def move_vertex(d: Drawing, v: int, cfg: MoveConfig, rng: np.random.Generator,
                square: Optional[BoundingBox] = None, pass_index: int = 0,
                workers: int = 1) -> MoveRecord:
    """
    Try to move v to a candidate with fewer crossings; d is updated in place.

    The current position competes with the candidates and wins ties.
    """
    square = movement_square(d) if square is None else square
    current = d.position(v)
    if d.graph.degree[v] == 0:
        return MoveRecord(v, pass_index, tuple(current), tuple(current), 0, 0, False, 0)

    fallback = False
    parts = []
    for group in _neighbor_groups(d, v, cfg.degree_cap, rng):
        try:
            parts.append(candidate_positions(d, v, cfg, rng, square, neighbors=group, workers=workers))
        except (ArrangementError, GeometryError) as exc:
            logger.warning("vertex %d: arrangement failed (%s); using primal candidates", v, exc)
            fallback = True
            parts.append(_primal_points(square, max(cfg.points, 1), rng))
    candidates = np.concatenate(parts, axis=0) if parts else np.zeros((0, 2))
    if candidates.shape[0]:
        inside = ((candidates[:, 0] >= square.xmin) & (candidates[:, 0] <= square.xmax)
                  & (candidates[:, 1] >= square.ymin) & (candidates[:, 1] <= square.ymax))
        candidates = candidates[inside]

    points = np.vstack([np.asarray(current, dtype=np.float64)[None, :], candidates])
    counts = count_vertex_at_many(d, v, points, workers=workers)
    best = int(np.argmin(counts))
    accepted = bool(counts[best] < counts[0])
    if accepted:
        d.set_position(v, Point(points[best, 0], points[best, 1]))
    new = d.position(v)
    logger.debug("vertex %d: %d candidates, Cr %d -> %d%s", v, candidates.shape[0], int(counts[0]),
                 int(counts[best]), "" if accepted else " (kept)")
    return MoveRecord(
        vertex=int(v),
        pass_index=pass_index,
        old_position=tuple(current),
        new_position=tuple(new),
        old_crossings=int(counts[0]),
        new_crossings=int(counts[best]) if accepted else int(counts[0]),
        accepted=accepted,
        candidates=int(candidates.shape[0]),
        fallback=fallback,
    )


def minimize(d: Drawing, cfg: MoveConfig, workers: int = 1,
             on_move: Optional[Callable[[MoveRecord], None]] = None) -> Tuple[Drawing, MoveReport]:
    """
    Run cfg.passes sweeps of single-vertex moves.

    Args:
        d: Initial drawing (not modified); the working copy is jittered into
            general position first
        cfg: Move configuration; cfg.seed fixes every random choice
        workers: Worker count
        on_move: Called after every vertex

    Returns:
        (final drawing, MoveReport)
    """
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    work = d.copy()
    ensure_general_position(work, rng)
    square = movement_square(work)
    report = MoveReport(config=cfg)

    tally = count_all(work, workers)
    for pass_index in range(cfg.passes):
        pass_start = time.perf_counter()
        if pass_index and ensure_general_position(work, rng):
            tally = count_all(work, workers)
        before = tally.total
        gained = 0
        accepted = 0
        for v in order_vertices(work, tally):
            rec = move_vertex(work, v, cfg, rng, square, pass_index, workers)
            report.moves.append(rec)
            if rec.accepted:
                accepted += 1
                gained += rec.old_crossings - rec.new_crossings
            if on_move is not None:
                on_move(rec)
        tally = count_all(work, workers)
        consistent = tally.total == before - gained
        if not consistent:
            logger.warning("pass %d: total %d does not match %d - %d", pass_index, tally.total, before, gained)
        report.passes.append(PassRecord(
            pass_index=pass_index,
            total_before=before,
            total_after=tally.total,
            accepted=accepted,
            time_ms=(time.perf_counter() - pass_start) * 1000.0,
            consistent=consistent,
        ))
        logger.info("pass %d/%d: %d -> %d crossings, %d moves", pass_index + 1, cfg.passes,
                    before, tally.total, accepted)
    report.wall_time_s = time.perf_counter() - start
    return work, report
