"""
Splitting of collinear overlaps.

The obstacle e is part of the boundary for every neighbor u, and rays from a
shared endpoint coincide, so tagged pieces overlap along common lines. Such
groups are cut at the union of their endpoints into atoms; every atom keeps
the (tag, shadow side) annotations of all pieces covering it.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from arrangement.visibility import PieceKind, PieceTag, ShadowSide, TaggedPiece
from crossings.sweep import intersecting_pairs, segments_to_array
from geometry.predicates import orient_signs
from geometry.primitives import Segment

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AtomicPiece:
    """A piece of the arrangement after overlaps are split."""

    geometry: Segment
    annotations: Tuple[Tuple[PieceTag, ShadowSide], ...]

    @property
    def crossing_delta(self) -> int:
        """Change of the crossing count when moving from its right to its left side."""
        return sum(int(side) for _, side in self.annotations)

    @property
    def is_wall(self) -> bool:
        return any(tag.kind is PieceKind.BOX_WALL for tag, _ in self.annotations)

    @property
    def multiplicity(self) -> int:
        return len(self.annotations)


def _overlap_groups(pieces: Sequence[TaggedPiece], workers: int) -> DisjointSet:
    coords = segments_to_array([p.geometry for p in pieces])
    groups = DisjointSet(range(len(pieces)))
    pairs = intersecting_pairs(coords, proper=False, workers=workers)
    if pairs.shape[0] == 0:
        return groups
    A = coords[pairs[:, 0]]
    B = coords[pairs[:, 1]]
    o1 = orient_signs(A[:, 0], A[:, 1], A[:, 2], A[:, 3], B[:, 0], B[:, 1])
    o2 = orient_signs(A[:, 0], A[:, 1], A[:, 2], A[:, 3], B[:, 2], B[:, 3])
    for k in np.flatnonzero((o1 == 0) & (o2 == 0)).tolist():
        i, j = int(pairs[k, 0]), int(pairs[k, 1])
        a, b = pieces[i].geometry, pieces[j].geometry
        # collinear pieces touching in a single point stay separate
        if max(a.source, b.source) < min(a.target, b.target):
            groups.merge(i, j)
    return groups


def _split_group(pieces: Sequence[TaggedPiece], members: List[int]) -> List[AtomicPiece]:
    breakpoints = sorted({pieces[i].geometry.source for i in members} | {pieces[i].geometry.target for i in members})
    atoms = []
    for lo, hi in zip(breakpoints, breakpoints[1:]):
        covering = [i for i in members if pieces[i].geometry.source <= lo and hi <= pieces[i].geometry.target]
        if not covering:
            continue
        annotations = tuple((pieces[i].tag, pieces[i].shadow_side) for i in covering)
        atoms.append(AtomicPiece(Segment(lo, hi), annotations))
    return atoms


def atomize_overlaps(pieces: Sequence[TaggedPiece], workers: int = 1) -> List[AtomicPiece]:
    """
    Split collinear overlapping pieces into atoms with merged annotations.

    Args:
        pieces: Tagged pieces (any order)
        workers: Thread count for the overlap sweep

    Returns:
        Atoms in order of first appearance of their group in pieces; atoms of
        one group are ordered along their common line
    """
    if not pieces:
        return []
    groups = _overlap_groups(pieces, workers)
    members: Dict[int, List[int]] = {}
    for i in range(len(pieces)):
        members.setdefault(groups[i], []).append(i)

    atoms: List[AtomicPiece] = []
    emitted = set()
    merged = 0
    for i, piece in enumerate(pieces):
        root = groups[i]
        if root in emitted:
            continue
        emitted.add(root)
        group = members[root]
        if len(group) == 1:
            atoms.append(AtomicPiece(piece.geometry, ((piece.tag, piece.shadow_side),)))
        else:
            merged += len(group)
            atoms.extend(_split_group(pieces, group))
    logger.debug("atomized %d pieces into %d atoms (%d in overlap groups)", len(pieces), len(atoms), merged)
    return atoms
