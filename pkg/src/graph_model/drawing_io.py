"""
Drawing file formats.

JSON: {"n": int, "positions": [[x, y], ...]}
CSV:  id,x,y with one row per vertex

Floats are written with their shortest round-trip representation and read
back with a round-trip parser, so write-then-read is bit-identical.
"""

import json
import os
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from common.errors import DrawingFormatError
from graph_model.drawing import Drawing
from graph_model.graph import Graph

DRAWING_FORMATS = ("json", "csv")


def _format_for(path: Union[str, Path], fmt: str) -> str:
    if fmt == "auto":
        fmt = "csv" if Path(path).suffix.lower() == ".csv" else "json"
    if fmt not in DRAWING_FORMATS:
        raise DrawingFormatError(f"unknown drawing format {fmt!r}")
    return fmt


def drawing_to_json(d: Drawing) -> str:
    payload = {"n": d.graph.n, "positions": [[float(x), float(y)] for x, y in d.positions.tolist()]}
    return json.dumps(payload, indent=2)


def drawing_from_json(text: str, g: Graph) -> Drawing:
    try:
        payload = json.loads(text)
        positions = payload["positions"]
        coords = [[float(x), float(y)] for x, y in positions]
    except (ValueError, KeyError, TypeError) as exc:
        raise DrawingFormatError(f"malformed drawing JSON: {exc}") from exc
    if "n" in payload and int(payload["n"]) != len(coords):
        raise DrawingFormatError(f"drawing declares n={payload['n']} but lists {len(coords)} positions")
    if len(coords) != g.n:
        raise DrawingFormatError(f"drawing has {len(coords)} positions, graph has {g.n} vertices")
    return Drawing(g, np.array(coords, dtype=np.float64).reshape(-1, 2))


def drawing_to_frame(d: Drawing) -> pd.DataFrame:
    return pd.DataFrame({
        "id": np.arange(d.graph.n),
        "x": [repr(float(x)) for x in d.positions[:, 0]],
        "y": [repr(float(y)) for y in d.positions[:, 1]],
    })


def drawing_from_frame(df: pd.DataFrame, g: Graph) -> Drawing:
    missing = {"id", "x", "y"} - set(df.columns)
    if missing:
        raise DrawingFormatError(f"drawing CSV lacks columns {sorted(missing)}")
    if len(df) != g.n:
        raise DrawingFormatError(f"drawing has {len(df)} positions, graph has {g.n} vertices")
    try:
        ids = df["id"].astype(np.int64).to_numpy()
        xs = np.array([float(t) for t in df["x"]], dtype=np.float64)
        ys = np.array([float(t) for t in df["y"]], dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise DrawingFormatError(f"malformed number in drawing CSV: {exc}") from exc
    if sorted(ids.tolist()) != list(range(g.n)):
        raise DrawingFormatError("drawing CSV ids must be exactly 0..n-1")
    positions = np.empty((g.n, 2), dtype=np.float64)
    positions[ids, 0] = xs
    positions[ids, 1] = ys
    return Drawing(g, positions)


def write_drawing(d: Drawing, path: Union[str, Path], fmt: str = "auto") -> None:
    """
    Write a drawing to JSON or CSV.

    Args:
        d: Drawing to write
        path: Output path
        fmt: "json", "csv" or "auto" (by suffix)
    """
    fmt = _format_for(path, fmt)
    directory = os.path.dirname(str(path))
    if directory:
        os.makedirs(directory, exist_ok=True)
    if fmt == "json":
        with open(path, "w", encoding="utf-8") as f:
            f.write(drawing_to_json(d))
    else:
        drawing_to_frame(d).to_csv(path, index=False)


def read_drawing(path: Union[str, Path], g: Graph, fmt: str = "auto") -> Drawing:
    """
    Read a drawing of graph g from JSON or CSV.

    Raises:
        DrawingFormatError: on malformed numbers or a position count mismatch
    """
    fmt = _format_for(path, fmt)
    if fmt == "json":
        with open(path, "r", encoding="utf-8") as f:
            return drawing_from_json(f.read(), g)
    try:
        df = pd.read_csv(path, dtype={"x": str, "y": str})
    except (ValueError, pd.errors.ParserError) as exc:
        raise DrawingFormatError(f"cannot parse drawing CSV {path}: {exc}") from exc
    return drawing_from_frame(df, g)
