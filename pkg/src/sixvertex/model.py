"""Domains, boundary conditions and configurations of the six-vertex model
in the path (thick/thin edge) representation.

Geometry conventions
--------------------
Vertices sit at integer coordinates (i, j): i is the column index counted
from the west, j the row index counted from the south, both starting at 1.
Edges are addressed by half-integer midpoints and encoded as keys:

    ("h", i, j)   horizontal edge with midpoint (i + 1/2, j),
                  endpoints (i, j) and (i+1, j)
    ("v", i, j)   vertical edge with midpoint (i, j + 1/2),
                  endpoints (i, j) and (i, j+1)
    ("bend", i)   triangoloid only: the 90-degree bend of the i-th line of
                  the north-west bundle, from (i, a+c) north slot to
                  (a+b+1, a+c + (a+b+1-i)) west slot

Each edge stores one canonical thickness bit (0 thin, 1 thick), the view
from its south/west endpoint (for external edges: from inside the domain).
An edge may carry a "twist" (a defect): the opposite endpoint then sees the
complementary thickness.  The triangoloid's defect line is the set of bend
edges, all twisted.

Vertex types (views in (W, S, E, N) order):

    w1 (0,0,0,0)   w2 (1,1,1,1)     weight wa
    w3 (0,1,0,1)   w4 (1,0,1,0)     weight wb   (vertical / horizontal pass)
    w5 (0,1,1,0)   w6 (1,0,0,1)     weight wc   (S->E turn / W->N turn)

Thick paths step north and east only; under domain-wall conditions on the
square, w6 vertices map to the +1 entries of the alternating sign matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    DegreeMismatch,
    InvalidLocalPattern,
    NoValidConfiguration,
    ParityMismatch,
)
from .params import ModelParams

EdgeKey = Tuple  # ("h", i, j) | ("v", i, j) | ("bend", i)
Vertex = Tuple[int, int]


class VertexType(IntEnum):
    W1 = 1
    W2 = 2
    W3 = 3
    W4 = 4
    W5 = 5
    W6 = 6


_PATTERN_TO_TYPE: Dict[Tuple[int, int, int, int], VertexType] = {
    (0, 0, 0, 0): VertexType.W1,
    (1, 1, 1, 1): VertexType.W2,
    (0, 1, 0, 1): VertexType.W3,
    (1, 0, 1, 0): VertexType.W4,
    (0, 1, 1, 0): VertexType.W5,
    (1, 0, 0, 1): VertexType.W6,
}


def classify_pattern(w: int, s: int, e: int, n: int) -> VertexType:
    """Vertex type from the four local thickness views, or raise."""
    try:
        return _PATTERN_TO_TYPE[(w, s, e, n)]
    except KeyError:
        raise InvalidLocalPattern(f"pattern (W,S,E,N)=({w},{s},{e},{n}) is not one of the six")


# ===================================================================== graph


@dataclass(frozen=True)
class DomainGraph:
    """Concrete lattice realisation of a domain.

    rows maps a row index j to the inclusive column interval (lo, hi) of
    vertices present in that row.  west_input[j] is the edge key feeding the
    leftmost vertex of row j from the west.  boundary maps every external
    edge key to its fixed thickness (view from inside).  twists is the
    canonical defect pattern of the domain.
    """

    rows: Tuple[Tuple[int, Tuple[int, int]], ...]
    west_input: Mapping[int, EdgeKey]
    boundary: Mapping[EdgeKey, int]
    twists: FrozenSet[EdgeKey]
    bend_targets: Mapping[EdgeKey, Vertex] = field(default_factory=dict)

    # -- basic queries ----------------------------------------------------

    def row_interval(self, j: int) -> Optional[Tuple[int, int]]:
        for jj, iv in self.rows:
            if jj == j:
                return iv
        return None

    @property
    def height(self) -> int:
        return max(j for j, _ in self.rows)

    @property
    def width(self) -> int:
        return max(hi for _, (_, hi) in self.rows)

    def vertices(self) -> Iterable[Vertex]:
        for j, (lo, hi) in self.rows:
            for i in range(lo, hi + 1):
                yield (i, j)

    def has_vertex(self, v: Vertex) -> bool:
        iv = self.row_interval(v[1])
        return iv is not None and iv[0] <= v[0] <= iv[1]

    def vertex_edges(self, v: Vertex) -> Dict[str, EdgeKey]:
        """Edge keys at the four slots of vertex v."""
        i, j = v
        if not self.has_vertex(v):
            raise DegreeMismatch(f"{v} is not a vertex of the domain")
        lo, hi = self.row_interval(j)
        west = self.west_input[j] if i == lo else ("h", i - 1, j)
        north: EdgeKey = ("v", i, j)
        for bk, tgt in self.bend_targets.items():
            if bk[1] == i and self._bend_source(bk) == v:
                north = bk
            if tgt == v:
                west = bk
        return {"W": west, "S": ("v", i, j - 1), "E": ("h", i, j), "N": north}

    def _bend_source(self, bk: EdgeKey) -> Vertex:
        # bend edge ("bend", i) starts at (i, Hb); Hb is recoverable from
        # the target row of any bend edge
        tgt = self.bend_targets[bk]
        return (bk[1], tgt[1] - (tgt[0] - bk[1]))

    def edge_endpoints(self, e: EdgeKey) -> Tuple[Optional[Vertex], Optional[Vertex]]:
        """(canonical endpoint, far endpoint); None where the edge is external."""
        kind = e[0]
        if kind == "h":
            _, i, j = e
            a, b = (i, j), (i + 1, j)
        elif kind == "v":
            _, i, j = e
            a, b = (i, j), (i, j + 1)
        else:
            a, b = self._bend_source(e), self.bend_targets[e]
        return (a if self.has_vertex(a) else None, b if self.has_vertex(b) else None)

    def internal_edges(self) -> List[EdgeKey]:
        out = []
        for v in self.vertices():
            for slot, e in self.vertex_edges(v).items():
                if slot in ("E", "N"):
                    a, b = self.edge_endpoints(e)
                    if a is not None and b is not None:
                        out.append(e)
        return out

    def all_edges(self) -> List[EdgeKey]:
        """Every edge, external ones included, in the documented order:
        row-major from the south, horizontal edges before vertical edges
        within a row, bend edges last."""
        horiz = set()
        vert = set()
        for v in self.vertices():
            es = self.vertex_edges(v)
            for slot in ("W", "S", "E", "N"):
                e = es[slot]
                if e[0] == "h":
                    horiz.add(e)
                elif e[0] == "v":
                    vert.add(e)
        ordered: List[EdgeKey] = []
        maxrow = self.height + 1
        for j in range(0, maxrow + 1):
            ordered.extend(sorted(e for e in horiz if e[2] == j))
            ordered.extend(sorted(e for e in vert if e[2] == j))
        ordered.extend(sorted(self.bend_targets.keys()))
        return ordered

    def is_external(self, e: EdgeKey) -> bool:
        a, b = self.edge_endpoints(e)
        return a is None or b is None


# ============================================================== boundary


@dataclass(frozen=True)
class BoundaryCondition:
    """Fixed thickness of every external edge (view from inside)."""

    edges: Mapping[EdgeKey, int]

    def __getitem__(self, e: EdgeKey) -> int:
        return self.edges[e]


def _rect_rows(width: int, height: int):
    return tuple((j, (1, width)) for j in range(1, height + 1))


def _rect_external_edges(width: int, height: int):
    south = [("v", i, 0) for i in range(1, width + 1)]
    north = [("v", i, height) for i in range(1, width + 1)]
    west = [("h", 0, j) for j in range(1, height + 1)]
    east = [("h", width, j) for j in range(1, height + 1)]
    return south, north, west, east


def rectangle_graph(width: int, height: int, bc: Mapping[EdgeKey, int]) -> DomainGraph:
    return DomainGraph(
        rows=_rect_rows(width, height),
        west_input={j: ("h", 0, j) for j in range(1, height + 1)},
        boundary=dict(bc),
        twists=frozenset(),
    )


def dwbc_boundary(width: int, height: int) -> Dict[EdgeKey, int]:
    """Thick on west and north, thin on south and east."""
    south, north, west, east = _rect_external_edges(width, height)
    bc = {e: 0 for e in south + east}
    bc.update({e: 1 for e in north + west})
    return bc


def check_balance(graph: DomainGraph) -> None:
    """Thick externals on south+west must balance north+east (no defects)."""
    if graph.twists:
        return
    south_west = 0
    north_east = 0
    for e, v in graph.boundary.items():
        kind, i, j = e
        if kind == "v":
            south_west += v if j == 0 else 0
            north_east += v if j != 0 else 0
        else:
            low = graph.row_interval(j)[0]
            south_west += v if i == low - 1 else 0
            north_east += v if i != low - 1 else 0
    if south_west != north_east:
        raise NoValidConfiguration(
            f"thick-edge balance violated: S+W={south_west}, N+E={north_east}"
        )


# ------------------------------------------------------------ domain kinds


@dataclass(frozen=True)
class Rectangle:
    """N columns by M rows with an explicit boundary condition."""

    width: int
    height: int
    bc: BoundaryCondition

    def graph(self) -> DomainGraph:
        g = rectangle_graph(self.width, self.height, self.bc.edges)
        check_balance(g)
        return g


@dataclass(frozen=True)
class SquareDWBC:
    n: int

    def graph(self) -> DomainGraph:
        return rectangle_graph(self.n, self.n, dwbc_boundary(self.n, self.n))


@dataclass(frozen=True)
class RefinedSquare:
    """(n-1) x n rectangle, DWBC except the r-th south edge is thick."""

    n: int
    r: int

    def graph(self) -> DomainGraph:
        width, height = self.n, self.n - 1
        bc = dwbc_boundary(width, height)
        bc[("v", self.r, 0)] = 1
        g = rectangle_graph(width, height, bc)
        check_balance(g)
        return g


@dataclass(frozen=True)
class LambdaNL:
    """N x (N+L) rectangle; west side thick on its top-most N-1 edges and on
    the bottom-most one, north thick, all else thin."""

    n: int
    l: int

    def graph(self) -> DomainGraph:
        width, height = self.n, self.n + self.l
        bc = dwbc_boundary(width, height)
        for j in range(1, height + 1):
            top_part = j >= self.l + 2
            bc[("h", 0, j)] = 1 if (top_part or j == 1) else 0
        g = rectangle_graph(width, height, bc)
        check_balance(g)
        return g


@dataclass(frozen=True)
class DigitallyConvex:
    """Domain enclosed by four directed boundary paths, given as a word over
    N/E/S/W read counter-clockwise with the interior on the left, starting
    at the south-west corner of the south side."""

    word: str

    def __post_init__(self):
        _validate_convex_word(self.word)

    def graph(self) -> DomainGraph:
        return _convex_graph(self.word)


@dataclass(frozen=True)
class TrapezoidGT:
    """Isosceles trapezoid of the triangular lattice with n unit triangles
    against the long base, at strictly increasing positions x.  Carrier for
    the Gelfand-Tsetlin counting; not a six-vertex domain."""

    n: int
    k: int
    x: Tuple[int, ...]

    def __post_init__(self):
        if len(self.x) != self.n:
            raise ValueError("need exactly n triangle positions")
        if any(self.x[i] >= self.x[i + 1] for i in range(self.n - 1)):
            raise ValueError("positions must be strictly increasing")
        if self.x[0] < 1 or self.x[-1] > self.n + self.k:
            raise ValueError("positions must lie within the long base")


@dataclass(frozen=True)
class Triangoloid:
    """Three crossing bundles of a+b, b+c and c+a lines.

    Assembled layout: an L-shaped grid.  The bottom rectangle is
    (a+2b+c) wide and (a+c) tall; the north-east patch, (b+c) wide and
    (a+b) tall, sits on top of its right part.  Column i <= a+b continues
    through a bend edge into north-east row a+b+1-i (nested bends); the
    bend edges carry the defect line, and the triangular face sits between
    the innermost bend, the top row of the bottom rectangle, and the first
    north-east column.
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        sums = (self.a + self.b, self.b + self.c, self.c + self.a)
        if min(sums) < 1:
            raise ValueError("bundle sizes a+b, b+c, c+a must all be >= 1")
        if min(self.a, self.b, self.c) < 0:
            raise ValueError("a, b, c must be nonnegative")

    @property
    def south_width(self) -> int:
        return self.a + 2 * self.b + self.c

    @property
    def bottom_height(self) -> int:
        return self.a + self.c

    def graph(self) -> DomainGraph:
        a, b, c = self.a, self.b, self.c
        W, Hb = self.south_width, self.bottom_height
        ab, bc_ = a + b, b + c
        rows = [(j, (1, W)) for j in range(1, Hb + 1)]
        rows += [(j, (ab + 1, W)) for j in range(Hb + 1, Hb + ab + 1)]
        bends = {("bend", i): (ab + 1, Hb + (ab + 1 - i)) for i in range(1, ab + 1)}
        west_input = {j: ("h", 0, j) for j in range(1, Hb + 1)}
        for j in range(Hb + 1, Hb + ab + 1):
            west_input[j] = ("bend", ab + 1 - (j - Hb))
        bc = {}
        for i in range(1, W + 1):
            bc[("v", i, 0)] = 0  # south
        for j in range(1, Hb + 1):
            bc[("h", 0, j)] = 1  # west: c paths below, a defect-enders above
            bc[("h", W, j)] = 0  # lower east
        for j in range(Hb + 1, Hb + ab + 1):
            bc[("h", W, j)] = 0  # upper east
        for i in range(ab + 1, W + 1):
            bc[("v", i, Hb + ab)] = 1  # north
        return DomainGraph(
            rows=tuple(rows),
            west_input=west_input,
            boundary=bc,
            twists=frozenset(bends.keys()),
            bend_targets=bends,
        )


DomainSpec = (Rectangle, SquareDWBC, RefinedSquare, LambdaNL, DigitallyConvex, Triangoloid)


def _validate_convex_word(word: str) -> None:
    if not word or any(ch not in "NESW" for ch in word):
        raise ValueError("boundary word must be a nonempty string over N/E/S/W")
    dx = word.count("E") - word.count("W")
    dy = word.count("N") - word.count("S")
    if dx or dy:
        raise ValueError("boundary word does not close")
    phases = [set("NE"), set("NW"), set("SW"), set("SE")]
    pos = 0
    for ch in word:
        while pos < 4 and ch not in phases[pos]:
            pos += 1
        if pos == 4:
            raise ValueError("word is not convex in the four-directed-path sense")


def _convex_graph(word: str) -> DomainGraph:
    # trace the boundary polygon; cells inside by scan fill
    x = y = 0
    pts = [(0, 0)]
    for ch in word:
        dx, dy = {"E": (1, 0), "W": (-1, 0), "N": (0, 1), "S": (0, -1)}[ch]
        x, y = x + dx, y + dy
        pts.append((x, y))
    minx = min(p[0] for p in pts)
    miny = min(p[1] for p in pts)
    pts = [(p[0] - minx, p[1] - miny) for p in pts]
    maxy = max(p[1] for p in pts)
    # horizontal segments per row boundary for scan fill
    cells = set()
    for yy in range(maxy):
        crossings = []
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 == x1 and min(y0, y1) <= yy < max(y0, y1):
                crossings.append(x0)
        crossings.sort()
        for k in range(0, len(crossings), 2):
            for xx in range(crossings[k], crossings[k + 1]):
                cells.add((xx, yy))
    # vertices of the six-vertex lattice = cell centers, 1-based
    rows = {}
    for (cx, cy) in cells:
        j = cy + 1
        rows.setdefault(j, []).append(cx + 1)
    row_list = []
    for j in sorted(rows):
        cols = sorted(rows[j])
        if cols != list(range(cols[0], cols[-1] + 1)):
            raise ValueError("rows are not contiguous; word is not digitally convex")
        row_list.append((j, (cols[0], cols[-1])))
    graph_rows = tuple(row_list)
    # DWBC-type boundary: thick on west/north sides, thin on south/east
    bc: Dict[EdgeKey, int] = {}
    intervals = dict(graph_rows)
    height = max(j for j, _ in graph_rows)
    for j, (lo, hi) in graph_rows:
        bc[("h", lo - 1, j)] = 1  # west side of this row
        bc[("h", hi, j)] = 0  # east side
        below = intervals.get(j - 1)
        above = intervals.get(j + 1)
        for i in range(lo, hi + 1):
            if below is None or not (below[0] <= i <= below[1]):
                bc[("v", i, j - 1)] = 0  # south side under this cell-row
            if above is None or not (above[0] <= i <= above[1]):
                bc[("v", i, j)] = 1  # north side above
    g = DomainGraph(
        rows=graph_rows,
        west_input={j: ("h", lo - 1, j) for j, (lo, hi) in graph_rows},
        boundary=bc,
        twists=frozenset(),
    )
    check_balance(g)
    return g


# ============================================================ configuration


@dataclass(frozen=True)
class Configuration:
    """Thickness assignment of every edge of a domain graph.

    values[e] is the canonical-side view; the far endpoint of a twisted
    edge sees the complement.
    """

    graph: DomainGraph
    values: Mapping[EdgeKey, int]
    twists: FrozenSet[EdgeKey] = None  # defaults to the domain's pattern

    def __post_init__(self):
        if self.twists is None:
            object.__setattr__(self, "twists", self.graph.twists)

    def view(self, e: EdgeKey, at: Vertex) -> int:
        """Thickness of edge e as seen from endpoint ``at``."""
        v = self.values[e]
        canon, _far = self.graph.edge_endpoints(e)
        if canon == at:
            return v
        return v ^ (1 if e in self.twists else 0)

    def local_views(self, vertex: Vertex) -> Tuple[int, int, int, int]:
        es = self.graph.vertex_edges(vertex)
        return tuple(self.view(es[s], vertex) for s in ("W", "S", "E", "N"))

    def to_json(self) -> str:
        order = self.graph.all_edges()
        return json.dumps(
            {
                "edge_order": "row-major from south; horizontal before vertical per row; bends last",
                "edges": [int(self.values[e]) for e in order],
            }
        )


def classify_vertex(config: Configuration, vertex: Vertex) -> VertexType:
    """Type of an internal vertex from its four incident edge views."""
    return classify_pattern(*config.local_views(vertex))


def config_weight(config: Configuration, params: ModelParams) -> Fraction:
    """Boltzmann weight: product of vertex weights over internal vertices."""
    w = Fraction(1)
    for v in config.graph.vertices():
        w *= params.vertex_weight(int(classify_vertex(config, v)))
    return w


def thick_paths(config: Configuration) -> List[List[Vertex]]:
    """Decompose the thick edges into north/east directed paths.

    Each path is returned as its vertex itinerary.  Paths start on thick
    south/west external edges or at twisted (defect) edges, and end on
    north/east externals or at defects.
    """
    g = config.graph
    used = set()

    def step(vertex, came_from_slot):
        # entering `vertex` from W or S; leave through E or N per type
        t = classify_vertex(config, vertex)
        if t == VertexType.W2:
            out = "N" if came_from_slot == "W" else "E"
        elif t == VertexType.W3:
            out = "N"
        elif t == VertexType.W4:
            out = "E"
        elif t == VertexType.W5:
            out = "E"
        elif t == VertexType.W6:
            out = "N"
        else:
            raise InvalidLocalPattern(f"path enters empty vertex {vertex}")
        return out

    starts = []
    for v in g.vertices():
        es = g.vertex_edges(v)
        for slot in ("W", "S"):
            e = es[slot]
            a, b = g.edge_endpoints(e)
            external = a is None or b is None
            twisted = e in config.twists
            if config.view(e, v) == 1 and (external or twisted):
                starts.append((v, slot, e))
    paths = []
    for v0, slot, e0 in starts:
        if e0 in used and not (e0 in config.twists):
            continue
        path = [v0]
        used.add(e0)
        vertex, came = v0, slot
        while True:
            out = step(vertex, came)
            e = g.vertex_edges(vertex)[out]
            used.add(e)
            a, b = g.edge_endpoints(e)
            far = b if a == vertex else a
            if far is None or (e in config.twists and config.view(e, far) == 0):
                break  # reached the boundary or a defect endpoint
            nxt_slot = "W" if out == "E" else "S"
            path.append(far)
            vertex, came = far, nxt_slot
        paths.append(path)
    return paths


# ================================================================= defects


@dataclass(frozen=True)
class DefectPattern:
    """Set of twisted edges of a domain, with face-parity bookkeeping."""

    graph: DomainGraph
    twisted: FrozenSet[EdgeKey]

    def face_parities(self) -> Dict[str, int]:
        return {
            name: sum(1 for e in edges if e in self.twisted) % 2
            for name, edges in faces_of(self.graph).items()
        }

    def nu(self, face_name: str) -> int:
        return self.face_parities()[face_name]


def canonical_defects(graph: DomainGraph) -> DefectPattern:
    return DefectPattern(graph=graph, twisted=graph.twists)


def apply_gauge(pattern: DefectPattern, vertex: Vertex) -> DefectPattern:
    """Toggle the defect status of the four edges incident to ``vertex``.

    Only allowed at vertices all of whose incident edges are internal;
    gauging next to the boundary would flip fixed boundary edges.
    """
    g = pattern.graph
    es = g.vertex_edges(vertex)
    keys = list(es.values())
    if any(g.is_external(e) for e in keys):
        raise DegreeMismatch(f"vertex {vertex} touches the boundary; gauge not allowed")
    twisted = set(pattern.twisted)
    for e in keys:
        twisted.symmetric_difference_update({e})
    return DefectPattern(graph=g, twisted=frozenset(twisted))


def check_same_parities(a: DefectPattern, b: DefectPattern) -> None:
    if a.face_parities() != b.face_parities():
        raise ParityMismatch("defect patterns have different face parities")


def faces_of(graph: DomainGraph) -> Dict[str, List[EdgeKey]]:
    """All faces of the domain graph as edge lists.

    The outer face is listed through the internal edges its boundary walk
    crosses once (the hull); external edges are crossed twice by that walk
    and so never affect its parity.
    """
    faces: Dict[str, List[EdgeKey]] = {}
    intervals = dict(graph.rows)
    bends = sorted(graph.bend_targets.keys())
    for j, (lo, hi) in graph.rows:
        above = intervals.get(j + 1)
        if above is None:
            continue
        for i in range(max(lo, above[0]), min(hi, above[1])):
            # unit cell with corners (i,j),(i+1,j),(i,j+1),(i+1,j+1)
            faces[f"cell:{i},{j}"] = [
                ("h", i, j),
                ("h", i, j + 1),
                ("v", i, j),
                ("v", i + 1, j),
            ]
    if bends:
        ab = len(bends)
        hb = graph._bend_source(bends[0])[1]
        col = graph.bend_targets[bends[0]][0]
        for i in range(1, ab):
            faces[f"corridor:{i}"] = [
                ("h", i, hb),
                ("bend", i),
                ("bend", i + 1),
                ("v", col, hb + (ab - i)),
            ]
        faces["triangle"] = [("h", ab, hb), ("bend", ab), ("v", col, hb)]
    seen: Dict[EdgeKey, int] = {}
    for edges in faces.values():
        for e in edges:
            seen[e] = seen.get(e, 0) + 1
    faces["outer"] = [e for e in graph.internal_edges() if seen.get(e, 0) == 1]
    return faces


# ============================================================ serialization


def domain_to_json(domain) -> str:
    kind = type(domain).__name__
    payload = {"kind": kind}
    for f in domain.__dataclass_fields__:
        v = getattr(domain, f)
        if isinstance(v, BoundaryCondition):
            v = {"|".join(map(str, k)): t for k, t in v.edges.items()}
        payload[f] = v
    return json.dumps(payload)


def domain_from_json(s: str):
    payload = json.loads(s)
    kind = payload.pop("kind")
    cls = {d.__name__: d for d in DomainSpec}[kind]
    if "bc" in payload:
        edges = {}
        for k, t in payload["bc"].items():
            parts = k.split("|")
            edges[(parts[0], int(parts[1]), int(parts[2]))] = t
        payload["bc"] = BoundaryCondition(edges=edges)
    if "x" in payload:
        payload["x"] = tuple(payload["x"])
    return cls(**payload)


def config_from_json(graph: DomainGraph, s: str) -> Configuration:
    payload = json.loads(s)
    order = graph.all_edges()
    values = {e: int(v) for e, v in zip(order, payload["edges"])}
    return Configuration(graph=graph, values=values)


def transpose_graph(graph: DomainGraph) -> DomainGraph:
    """Reflect a bend-free domain across the main diagonal.

    Transposition maps valid configurations to valid configurations and
    preserves the weight classes (w3 <-> w4, w5 <-> w6), so the partition
    function is invariant and a west-side correlator becomes a south-side
    one on the transposed domain.
    """
    if graph.bend_targets:
        raise NotImplementedError("transpose is defined for bend-free domains")
    cols: Dict[int, List[int]] = {}
    for j, (lo, hi) in graph.rows:
        for i in range(lo, hi + 1):
            cols.setdefault(i, []).append(j)
    rows = []
    for i in sorted(cols):
        js = sorted(cols[i])
        assert js == list(range(js[0], js[-1] + 1))
        rows.append((i, (js[0], js[-1])))
    bc: Dict[EdgeKey, int] = {}
    for (kind, i, j), v in graph.boundary.items():
        bc[("v" if kind == "h" else "h", j, i)] = v
    west_input = {j: ("h", lo - 1, j) for j, (lo, hi) in rows}
    return DomainGraph(rows=tuple(rows), west_input=west_input, boundary=bc, twists=frozenset())


def complement_graph(graph: DomainGraph) -> DomainGraph:
    """Arrow reversal: every boundary edge flips thickness.

    Configurations complement bijectively (w1<->w2 etc. within weight
    classes), so partition functions are invariant.
    """
    return DomainGraph(
        rows=graph.rows,
        west_input=graph.west_input,
        boundary={e: 1 - v for e, v in graph.boundary.items()},
        twists=graph.twists,
        bend_targets=graph.bend_targets,
    )


def mirror_rectangle(width: int, height: int, bc: Mapping[EdgeKey, int]):
    """Left-right mirror of a rectangle with its boundary condition.

    Horizontal-edge conditions swap sides and complement (the mirrored
    arrows flip); vertical-edge conditions reverse order.  Combined with
    swapping wa and wb this leaves the partition function invariant.
    """
    out: Dict[EdgeKey, int] = {}
    for (kind, i, j), v in bc.items():
        if kind == "v":
            out[("v", width + 1 - i, j)] = v
        else:
            out[("h", width - i, j)] = 1 - v
    return rectangle_graph(width, height, out)
