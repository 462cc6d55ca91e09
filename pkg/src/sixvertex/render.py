"""SVG and CSV emitters for configurations, statistics and arcs.

The SVG mapping from lattice to pixel coordinates is affine with an
integer scale, so a round trip recovers integer lattice coordinates
exactly.  Colors follow the figure convention: W5 dots blue, W6 red.
File writes are atomic (write to a temp name, then rename).
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .model import Configuration, VertexType, classify_vertex
from .tangent import Line, ParametricArc

W5_COLOR = "#1f4fd8"  # blue
W6_COLOR = "#d81f1f"  # red
ARC_COLOR = "#777777"  # gray overlay


@dataclass(frozen=True)
class RenderSpec:
    """Canvas and style parameters for configuration figures."""

    scale: int = 4           # px per lattice unit (integer: exact round trip)
    pad: int = 12
    dot_radius: float = 1.6
    w5_color: str = W5_COLOR
    w6_color: str = W6_COLOR
    arc_color: str = ARC_COLOR
    frame: str = "unit"


@dataclass
class SvgCanvas:
    width_units: float
    height_units: float
    spec: RenderSpec = field(default_factory=RenderSpec)
    elements: List[str] = field(default_factory=list)

    def to_px(self, x: float, y: float) -> Tuple[float, float]:
        s, p = self.spec.scale, self.spec.pad
        return (p + s * x, p + s * (self.height_units - y))

    def from_px(self, px: float, py: float) -> Tuple[float, float]:
        s, p = self.spec.scale, self.spec.pad
        return ((px - p) / s, self.height_units - (py - p) / s)

    def dot(self, x: float, y: float, color: str) -> None:
        cx, cy = self.to_px(x, y)
        self.elements.append(
            f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{self.spec.dot_radius}" fill="{color}"/>'
        )

    def polyline(self, pts: Sequence[Tuple[float, float]], color: str, width: float = 1.5) -> None:
        if len(pts) < 2:
            return
        coords = " ".join("{:.3f},{:.3f}".format(*self.to_px(x, y)) for x, y in pts)
        self.elements.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"/>'
        )

    def rect_outline(self, x0, y0, x1, y1, color="#000000") -> None:
        pts = [(x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0)]
        self.polyline(pts, color, width=1.0)

    def document(self) -> str:
        s, p = self.spec.scale, self.spec.pad
        w = 2 * p + s * self.width_units
        h = 2 * p + s * self.height_units
        body = "\n".join(self.elements)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{w:.0f}" height="{h:.0f}" viewBox="0 0 {w:.0f} {h:.0f}">\n'
            f'<rect width="100%" height="100%" fill="white"/>\n'
            f"{body}\n</svg>\n"
        )


def atomic_write(path: str, content: str) -> None:
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_configuration(
    cfg: Configuration,
    spec: Optional[RenderSpec] = None,
    overlays: Sequence[ParametricArc] = (),
    segments: Sequence[Tuple[Tuple[float, float], Tuple[float, float]]] = (),
    rescale: Optional[float] = None,
) -> str:
    """Fig-2-style picture: one dot per c-type vertex, plus overlays.

    Overlays and segments are given in rescaled coordinates and multiplied
    by ``rescale`` (defaults to the domain width) to land on the lattice.
    """
    spec = spec or RenderSpec()
    g = cfg.graph
    W, H = g.width, g.height
    canvas = SvgCanvas(width_units=W + 1, height_units=H + 1, spec=spec)
    scale = rescale if rescale is not None else float(W)
    canvas.rect_outline(0.5, 0.5, W + 0.5, H + 0.5, "#bbbbbb")
    for (i, j) in g.vertices():
        t = classify_vertex(cfg, (i, j))
        if t == VertexType.W5:
            canvas.dot(i, j, spec.w5_color)
        elif t == VertexType.W6:
            canvas.dot(i, j, spec.w6_color)
    for arc in overlays:
        pts = [(x * scale, y * scale) for x, y in zip(arc.x, arc.y)]
        canvas.polyline(pts, spec.arc_color, width=2.0)
    for (a, b) in segments:
        canvas.polyline(
            [(a[0] * scale, a[1] * scale), (b[0] * scale, b[1] * scale)],
            spec.arc_color,
            width=2.0,
        )
    return canvas.document()


def render_stats_figure(
    width: int,
    height: int,
    w5_field: np.ndarray,
    w6_field: np.ndarray,
    n_samples: int,
    spec: Optional[RenderSpec] = None,
    overlays: Sequence[ParametricArc] = (),
    segments=(),
    rescale: Optional[float] = None,
) -> str:
    """Density version of the overlay figure: dot opacity follows the
    empirical per-vertex c-vertex frequency."""
    spec = spec or RenderSpec()
    canvas = SvgCanvas(width_units=width + 1, height_units=height + 1, spec=spec)
    scale = rescale if rescale is not None else float(width)
    canvas.rect_outline(0.5, 0.5, width + 0.5, height + 0.5, "#bbbbbb")
    for (fld, color) in ((w5_field, spec.w5_color), (w6_field, spec.w6_color)):
        dens = fld / max(n_samples, 1)
        ys, xs = np.nonzero(dens > 0.02)
        for j, i in zip(ys, xs):
            op = min(1.0, float(dens[j, i]) * 2.0)
            cx, cy = canvas.to_px(i + 1, j + 1)
            canvas.elements.append(
                f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{spec.dot_radius}" '
                f'fill="{color}" fill-opacity="{op:.3f}"/>'
            )
    for arc in overlays:
        pts = [(x * scale, y * scale) for x, y in zip(arc.x, arc.y)]
        canvas.polyline(pts, spec.arc_color, width=2.0)
    for (a, b) in segments:
        canvas.polyline(
            [(a[0] * scale, a[1] * scale), (b[0] * scale, b[1] * scale)],
            spec.arc_color,
            width=2.0,
        )
    return canvas.document()


def arc_to_csv(arc: ParametricArc) -> str:
    """z,x,y rows at 17 significant digits; frame recorded as a comment."""
    lines = [f"# frame: {arc.frame}; label: {arc.label}"
             + ("; EXPERIMENTAL" if arc.experimental else "")]
    lines.append("z,x,y")
    for z, x, y in zip(arc.z, arc.x, arc.y):
        lines.append(f"{z:.17g},{x:.17g},{y:.17g}")
    return "\n".join(lines) + "\n"


def lines_to_csv(lines_seq: Iterable[Line]) -> str:
    out = ["z,m,r"]
    for ln in lines_seq:
        out.append(f"{ln.z:.17g},{ln.m:.17g},{ln.r:.17g}")
    return "\n".join(out) + "\n"
