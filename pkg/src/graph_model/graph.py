"""
Graph model and graph file formats.

This module holds the immutable simple undirected Graph used everywhere,
parsers for the edge-list, METIS and Matrix Market formats, and the
preprocessing step that keeps the largest connected component and peels
vertices of degree below two.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, TextIO, Tuple, Union

import numpy as np
import scipy.io
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from common.errors import EmptyGraphError, GraphFormatError

logger = logging.getLogger(__name__)

GRAPH_FORMATS = ("edgelist", "metis", "mtx")


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Simple undirected graph on vertices 0..n-1.

    edges is an (m, 2) int array with u < v in every row, rows sorted; an
    edge's id is its row index. adjacency[v] lists neighbors in increasing
    order and incident[v] the ids of the edges at v.
    """

    n: int
    edges: np.ndarray
    adjacency: Tuple[np.ndarray, ...] = field(repr=False)
    incident: Tuple[np.ndarray, ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph, dropping self-loops and duplicates."""
        graph, _, _ = _build(n, pairs)
        return graph

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @property
    def degree(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def neighbors(self, v: int) -> np.ndarray:
        return self.adjacency[v]

    def same_structure(self, other: "Graph") -> bool:
        return self.n == other.n and np.array_equal(self.edges, other.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ParseReport:
    duplicates: int = 0
    self_loops: int = 0


@dataclass(frozen=True, eq=False)
class PreprocessResult:
    graph: Graph
    mapping: np.ndarray  # new id -> old id
    removed_components: int
    peeled: int


def _build(n: int, pairs: Iterable[Tuple[int, int]]) -> Tuple[Graph, int, int]:
    seen = set()
    loops = 0
    duplicates = 0
    for u, v in pairs:
        u, v = int(u), int(v)
        if u < 0 or v < 0 or u >= n or v >= n:
            raise GraphFormatError(f"vertex id out of range in edge ({u}, {v}) for n={n}")
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            duplicates += 1
            continue
        seen.add(key)

    edges = np.array(sorted(seen), dtype=np.int64).reshape(-1, 2)
    adjacency: List[List[int]] = [[] for _ in range(n)]
    incident: List[List[int]] = [[] for _ in range(n)]
    for eid, (u, v) in enumerate(edges.tolist()):
        adjacency[u].append(v)
        adjacency[v].append(u)
        incident[u].append(eid)
        incident[v].append(eid)

    order = [np.argsort(np.asarray(a, dtype=np.int64), kind="stable") for a in adjacency]
    graph = Graph(
        n=n,
        edges=edges,
        adjacency=tuple(np.asarray(a, dtype=np.int64)[o] for a, o in zip(adjacency, order)),
        incident=tuple(np.asarray(i, dtype=np.int64)[o] for i, o in zip(incident, order)),
    )
    return graph, duplicates, loops


def parse_edge_list(stream: Union[TextIO, Iterable[str]]) -> Tuple[Graph, ParseReport]:
    """
    Parse a whitespace-separated edge list.

    Args:
        stream: Text lines of "u v" pairs; lines starting with '#' or '%' are
            comments

    Returns:
        Tuple of (graph, report counting dropped duplicates and self-loops)
    """
    pairs = []
    max_id = -1
    for line_no, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text[0] in "#%":
            continue
        tokens = text.split()
        if len(tokens) < 2:
            raise GraphFormatError(f"line {line_no}: expected 'u v', got {text!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {line_no}: non-integer vertex id in {text!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {line_no}: negative vertex id in {text!r}")
        pairs.append((u, v))
        max_id = max(max_id, u, v)

    graph, duplicates, loops = _build(max_id + 1, pairs)
    report = ParseReport(duplicates=duplicates, self_loops=loops)
    if duplicates or loops:
        logger.info("dropped %d duplicate edges and %d self-loops", duplicates, loops)
    return graph, report


def parse_metis(stream: Union[TextIO, Iterable[str]]) -> Tuple[Graph, ParseReport]:
    """Parse the METIS adjacency format used by the DIMACS challenge graphs."""
    lines = (line.strip() for line in stream)
    lines = [line for line in lines if not line.startswith("%")]
    if not lines or not lines[0]:
        raise GraphFormatError("METIS file without header line")
    try:
        header = [int(t) for t in lines[0].split()]
    except ValueError:
        raise GraphFormatError(f"malformed METIS header {lines[0]!r}") from None
    n = header[0]
    fmt = str(header[2]) if len(header) > 2 else "0"
    weighted_edges = fmt.endswith("1")
    body = lines[1:1 + n]
    if len(body) < n:
        body += [""] * (n - len(body))

    pairs = []
    for u, line in enumerate(body):
        try:
            values = [int(t) for t in line.split()]
        except ValueError:
            raise GraphFormatError(f"vertex {u + 1}: non-integer token in {line!r}") from None
        neighbors = values[0::2] if weighted_edges else values
        for w in neighbors:
            if w < 1:
                raise GraphFormatError(f"vertex {u + 1}: invalid neighbor id {w}")
            pairs.append((u, w - 1))

    graph, duplicates, loops = _build(n, pairs)
    # every edge appears twice in METIS adjacency lists
    duplicates = max(0, duplicates - graph.m)
    return graph, ParseReport(duplicates=duplicates, self_loops=loops)


def parse_matrix_market(path: Union[str, Path]) -> Tuple[Graph, ParseReport]:
    """Read a (square) Matrix Market file as an undirected graph."""
    try:
        matrix = coo_matrix(scipy.io.mmread(str(path)))
    except (ValueError, OSError) as exc:
        raise GraphFormatError(f"cannot read Matrix Market file {path}: {exc}") from exc
    if matrix.shape[0] != matrix.shape[1]:
        raise GraphFormatError(f"Matrix Market matrix is not square: {matrix.shape}")
    graph, duplicates, loops = _build(matrix.shape[0], zip(matrix.row.tolist(), matrix.col.tolist()))
    return graph, ParseReport(duplicates=duplicates, self_loops=loops)


def detect_format(path: Union[str, Path]) -> str:
    suffix = Path(path).suffix.lower()
    if suffix == ".graph":
        return "metis"
    if suffix == ".mtx":
        return "mtx"
    return "edgelist"


def load_graph(path: Union[str, Path], fmt: str = "auto") -> Tuple[Graph, ParseReport]:
    """
    Load a graph file.

    Args:
        path: File path
        fmt: One of "edgelist", "metis", "mtx" or "auto" (by suffix)

    Returns:
        Tuple of (graph, parse report)
    """
    fmt = detect_format(path) if fmt == "auto" else fmt
    if fmt not in GRAPH_FORMATS:
        raise GraphFormatError(f"unknown graph format {fmt!r}")
    if fmt == "mtx":
        return parse_matrix_market(path)
    with open(path, "r", encoding="utf-8") as f:
        if fmt == "metis":
            return parse_metis(f)
        return parse_edge_list(f)


def write_edge_list(g: Graph, stream: TextIO) -> None:
    for u, v in g.edges.tolist():
        stream.write(f"{u} {v}\n")


def _largest_component(g: Graph) -> Tuple[np.ndarray, int]:
    if g.m == 0:
        return np.arange(min(g.n, 1), dtype=np.int64), g.n
    rows = np.concatenate([g.edges[:, 0], g.edges[:, 1]])
    cols = np.concatenate([g.edges[:, 1], g.edges[:, 0]])
    matrix = coo_matrix((np.ones(rows.shape[0]), (rows, cols)), shape=(g.n, g.n)).tocsr()
    count, labels = connected_components(matrix, directed=False)
    sizes = np.bincount(labels, minlength=count)
    # ties go to the component containing the smallest vertex id
    first_of = {}
    for v, label in enumerate(labels.tolist()):
        first_of.setdefault(label, v)
    candidates = [c for c in range(count) if sizes[c] == sizes.max()]
    best = min(candidates, key=lambda c: first_of[c])
    return np.flatnonzero(labels == best), int(count)


def induced_subgraph(g: Graph, vertices: np.ndarray) -> Tuple[Graph, np.ndarray]:
    """Subgraph induced by vertices (sorted), with new -> old mapping."""
    vertices = np.sort(np.asarray(vertices, dtype=np.int64))
    new_id = np.full(g.n, -1, dtype=np.int64)
    new_id[vertices] = np.arange(vertices.shape[0])
    keep = (new_id[g.edges[:, 0]] >= 0) & (new_id[g.edges[:, 1]] >= 0) if g.m else np.zeros(0, bool)
    pairs = new_id[g.edges[keep]] if g.m else np.zeros((0, 2), dtype=np.int64)
    graph, _, _ = _build(vertices.shape[0], pairs.tolist())
    return graph, vertices


def preprocess(g: Graph) -> PreprocessResult:
    """
    Reduce a graph to the part that matters for crossing minimization.

    Keeps the largest connected component, then repeatedly removes vertices
    of degree below two.

    Args:
        g: Input graph

    Returns:
        PreprocessResult with the reduced graph and the new -> old id mapping

    Raises:
        EmptyGraphError: if nothing survives (the input was a forest)
    """
    component, n_components = _largest_component(g)
    sub, mapping = induced_subgraph(g, component)

    # Step 1: peel vertices of degree < 2 until none is left
    degree = sub.degree.copy()
    alive = np.ones(sub.n, dtype=bool)
    queue = deque(int(v) for v in np.flatnonzero(degree < 2))
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in sub.adjacency[v].tolist():
            if alive[w]:
                degree[w] -= 1
                if degree[w] == 1:
                    queue.append(w)

    peeled = int((~alive).sum())
    if not alive.any():
        raise EmptyGraphError(f"preprocessing removed all {g.n} vertices (the graph is a forest)")

    # Step 2: relabel the survivors
    core, core_map = induced_subgraph(sub, np.flatnonzero(alive))
    logger.info("preprocess: n %d -> %d, m %d -> %d", g.n, core.n, g.m, core.m)
    return PreprocessResult(
        graph=core,
        mapping=mapping[core_map],
        removed_components=max(0, n_components - 1),
        peeled=peeled,
    )
