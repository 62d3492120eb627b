"""
SVG rendering of drawings.

One <line> per edge, one <circle> per vertex, optional square crossing
markers. The y axis is flipped so drawings appear in the usual orientation.
"""

from dataclasses import dataclass

import svgwrite

from crossings.crossing_count import crossing_pairs
from geometry.predicates import intersection_point
from geometry.primitives import Segment
from graph_model.drawing import Drawing, bounds

PADDING = 0.05


@dataclass(frozen=True)
class SvgOptions:
    size_px: int = 800
    show_crossings: bool = False
    edge_color: str = "#4d4d4d"
    vertex_color: str = "#1f77b4"
    marker_color: str = "#d62728"


def to_svg(d: Drawing, options: SvgOptions = SvgOptions()) -> str:
    """
    Render a drawing as SVG 1.1 text.

    Args:
        d: Drawing to render
        options: Colors, pixel size and whether to mark crossings

    Returns:
        The SVG document as a string
    """
    dwg = svgwrite.Drawing(size=(f"{options.size_px}px", f"{options.size_px}px"), profile="full")
    if d.graph.n == 0:
        dwg.viewbox(0, 0, 1, 1)
        return dwg.tostring()

    xmin, ymin, xmax, ymax = bounds(d)
    width, height = xmax - xmin, ymax - ymin
    extent = max(width, height) or 1.0
    pad_x = PADDING * (width or extent)
    pad_y = PADDING * (height or extent)
    dwg.viewbox(xmin - pad_x, -ymax - pad_y, width + 2 * pad_x, height + 2 * pad_y)

    stroke = extent / 400.0
    radius = extent / 120.0
    pos = d.positions

    edges = dwg.add(dwg.g(id="edges", stroke=options.edge_color, stroke_width=stroke))
    for u, v in d.graph.edges.tolist():
        edges.add(dwg.line(start=(pos[u, 0], -pos[u, 1]), end=(pos[v, 0], -pos[v, 1])))

    vertices = dwg.add(dwg.g(id="vertices", fill=options.vertex_color))
    for x, y in pos.tolist():
        vertices.add(dwg.circle(center=(x, -y), r=radius))

    if options.show_crossings:
        markers = dwg.add(dwg.g(id="crossings", fill=options.marker_color))
        coords = d.edge_coords()
        for e, f in crossing_pairs(d).tolist():
            p = intersection_point(Segment(*_split(coords[e])), Segment(*_split(coords[f])))
            markers.add(dwg.rect(insert=(p.x - radius, -p.y - radius), size=(2 * radius, 2 * radius)))

    return dwg.tostring()


def _split(row):
    return (float(row[0]), float(row[1])), (float(row[2]), float(row[3]))


def write_svg(d: Drawing, path, options: SvgOptions = SvgOptions()) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(to_svg(d, options))
