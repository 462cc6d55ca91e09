"""Exact uniform sampling at the ice point via monotone coupling from the
past, plus empirical statistics for validating the analytic curves.

Height representation: each face f of the domain carries an integer h(f)
with |h(f) - h(g)| = 1 across every edge; crossing a vertical edge eastward
h increases by 1 iff the edge is thick, crossing a horizontal edge
northward h decreases by 1 iff the edge is thick.  Boundary conditions fix
h on the ring of non-free faces; configurations of the domain biject with
admissible interior extensions, which form a distributive lattice under
the pointwise order.

The Markov chain is the checkerboard single-site dynamics: faces of one
parity class are swept with independent coins (raise/lower by 2 where
admissible).  The coupled update is monotone, so Propp-Wilson coupling
from the past with the doubling schedule yields exact uniform samples.
Coins are drawn from a counter-based generator keyed by (seed, sweep
index), which makes every tape segment replayable.

The triangoloid's two height charts are coupled through the defect seam
with opposite orientations (order-reversing across the bends,
order-preserving across the glue), so no product order makes the coupled
update monotone; ``cftp_sample`` refuses it after running the exhaustive
small-instance check, and tiny triangoloids fall back to an
enumeration-backed exact sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numba import njit

from .errors import DegenerateField, NoValidConfiguration, NonIcePoint, NotMonotone
from .model import Configuration, DomainGraph, Triangoloid
from .params import ModelParams

UINT64 = np.uint64
_CAP_SWEEPS = 1 << 24


# ------------------------------------------------------------- face grids


@dataclass
class HeightFrame:
    """Face-grid data of a rectangle-family domain.

    Arrays indexed [j, i] over faces i in 0..W, j in 0..H.  ``free`` marks
    faces whose four surrounding edges are internal (the dynamic sites);
    ``h_lo``/``h_hi`` are the minimal and maximal admissible heights.
    The kernel operates on red/black split storage (R[j,k] = h[j, 2k+(j&1)],
    B[j,k] = h[j, 2k+1-(j&1)]) so that each half-sweep reads one array and
    writes the other; per-row free intervals are precomputed per color.
    """

    graph: DomainGraph
    free: np.ndarray
    h_lo: np.ndarray
    h_hi: np.ndarray
    rbounds: np.ndarray = None
    bbounds: np.ndarray = None
    roff: np.ndarray = None
    boff: np.ndarray = None

    def __post_init__(self):
        H1, W1 = self.free.shape
        self.rbounds = np.zeros((H1, 2), dtype=np.int32)
        self.bbounds = np.zeros((H1, 2), dtype=np.int32)
        self.roff = np.zeros(H1, dtype=np.int32)
        self.boff = np.zeros(H1, dtype=np.int32)
        for j in range(1, H1 - 1):
            o = j & 1
            self.roff[j] = o - 1
            self.boff[j] = -o
            idx = np.nonzero(self.free[j])[0]
            if idx.size == 0:
                continue
            a, b = int(idx[0]), int(idx[-1])
            assert idx.size == b - a + 1, "free cells must be contiguous per row"
            self.rbounds[j] = ((a - o + 1) // 2, (b - o) // 2 + 1)
            self.bbounds[j] = ((a - (1 - o) + 1) // 2, (b - (1 - o)) // 2 + 1)

    @property
    def shape(self):
        return self.free.shape


def _pack_rb(h: np.ndarray):
    """Split a face-grid array into red ((i+j) even) and black columns."""
    H1, W1 = h.shape
    Wh = W1 // 2 + 1
    R = np.zeros((H1, Wh), dtype=np.int16)
    B = np.zeros((H1, Wh), dtype=np.int16)
    for j in range(H1):
        o = j & 1
        red = h[j, o::2]
        blk = h[j, 1 - o::2]
        R[j, : red.size] = red
        B[j, : blk.size] = blk
    return R, B


def _unpack_rb(R: np.ndarray, B: np.ndarray, shape):
    H1, W1 = shape
    h = np.zeros(shape, dtype=np.int16)
    for j in range(H1):
        o = j & 1
        n_red = len(range(o, W1, 2))
        n_blk = len(range(1 - o, W1, 2))
        h[j, o::2] = R[j, :n_red]
        h[j, 1 - o::2] = B[j, :n_blk]
    return h


def _face_increments(graph: DomainGraph):
    """(edge, face_a, face_b, delta) with h(face_b) = h(face_a) + delta
    when the edge is thick, and -delta when thin."""
    out = []
    for e in graph.all_edges():
        kind, i, j = e[0], e[1], e[2] if len(e) > 2 else None
        if kind == "v":
            out.append((e, (i - 1, j), (i, j), 1))
        elif kind == "h":
            out.append((e, (i, j - 1), (i, j), -1))
    return out


def build_height_frame(domain) -> HeightFrame:
    """Ring heights from the boundary condition, then extremal interior
    extensions by min/max relaxation."""
    graph = domain if isinstance(domain, DomainGraph) else domain.graph()
    if graph.bend_targets:
        raise NotMonotone("triangoloid domains have no single-chart height function")
    W, H = graph.width, graph.height
    free = np.zeros((H + 1, W + 1), dtype=np.uint8)
    for j in range(1, H + 1):
        iv = graph.row_interval(j)
        if iv is None:
            continue
        above = graph.row_interval(j + 1)
        if above is None:
            continue
        lo = max(iv[0], above[0])
        hi = min(iv[1], above[1])
        for i in range(lo, hi):
            free[j, i] = 1  # corners (i,j),(i+1,j),(i,j+1),(i+1,j+1) all exist

    NOVAL = np.iinfo(np.int32).min
    ring = np.full((H + 1, W + 1), NOVAL, dtype=np.int32)
    ring[0, 0] = 0
    # propagate across external edges only (their state is fixed)
    pending = [(0, 0)]
    ext = [(e, fa, fb, d) for (e, fa, fb, d) in _face_increments(graph) if graph.is_external(e)]
    by_face: Dict[Tuple[int, int], List] = {}
    for rec in ext:
        by_face.setdefault(rec[1], []).append(rec)
        by_face.setdefault(rec[2], []).append(rec)
    while pending:
        f = pending.pop()
        for (e, fa, fb, d) in by_face.get(f, ()):  # noqa: B905
            thick = graph.boundary[e]
            step = d if thick else -d
            ha = ring[fa[1], fa[0]] if 0 <= fa[0] <= W and 0 <= fa[1] <= H else NOVAL
            hb = ring[fb[1], fb[0]] if 0 <= fb[0] <= W and 0 <= fb[1] <= H else NOVAL
            if ha != NOVAL and hb == NOVAL:
                ring[fb[1], fb[0]] = ha + step
                pending.append(fb)
            elif hb != NOVAL and ha == NOVAL:
                ring[fa[1], fa[0]] = hb - step
                pending.append(fa)
            elif ha != NOVAL and hb != NOVAL and hb - ha != step:
                raise NoValidConfiguration("boundary heights are inconsistent")
    fixed = (ring != NOVAL) & (free == 0)
    # every neighbour of a free face must be free or ring-fixed
    for j in range(H + 1):
        for i in range(W + 1):
            if free[j, i]:
                for dj, di in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    jj, ii = j + dj, i + di
                    if not (0 <= ii <= W and 0 <= jj <= H):
                        raise NotMonotone("free face touches the grid border")
                    if not free[jj, ii] and not fixed[jj, ii]:
                        raise NotMonotone(f"face ({ii},{jj}) is neither free nor fixed")
    big = 10 * (W + H + 2)
    h_hi = np.where(fixed, ring, big).astype(np.int32)
    h_lo = np.where(fixed, ring, -big).astype(np.int32)
    h_hi[(free == 0) & (~fixed)] = 0  # irrelevant cells
    h_lo[(free == 0) & (~fixed)] = 0
    for _ in range(2 * (W + H) + 4):
        up = np.full_like(h_hi, big)
        up[1:, :] = np.minimum(up[1:, :], h_hi[:-1, :] + 1)
        up[:-1, :] = np.minimum(up[:-1, :], h_hi[1:, :] + 1)
        up[:, 1:] = np.minimum(up[:, 1:], h_hi[:, :-1] + 1)
        up[:, :-1] = np.minimum(up[:, :-1], h_hi[:, 1:] + 1)
        new = np.where(free == 1, np.minimum(h_hi, up), h_hi)
        dn = np.full_like(h_lo, -big)
        dn[1:, :] = np.maximum(dn[1:, :], h_lo[:-1, :] - 1)
        dn[:-1, :] = np.maximum(dn[:-1, :], h_lo[1:, :] - 1)
        dn[:, 1:] = np.maximum(dn[:, 1:], h_lo[:, :-1] - 1)
        dn[:, :-1] = np.maximum(dn[:, :-1], h_lo[:, 1:] - 1)
        new_lo = np.where(free == 1, np.maximum(h_lo, dn), h_lo)
        if np.array_equal(new, h_hi) and np.array_equal(new_lo, h_lo):
            break
        h_hi, h_lo = new, new_lo
    if np.any((free == 1) & (h_lo > h_hi)):
        raise NoValidConfiguration("no admissible height extension")
    frame = HeightFrame(graph=graph, free=free, h_lo=h_lo.astype(np.int16), h_hi=h_hi.astype(np.int16))
    _assert_admissible(frame, frame.h_lo)
    _assert_admissible(frame, frame.h_hi)
    return frame


def _relevant(frame: HeightFrame) -> np.ndarray:
    """Faces whose height is meaningful: free ones and their neighbours."""
    free = frame.free == 1
    rel = free.copy()
    rel[1:, :] |= free[:-1, :]
    rel[:-1, :] |= free[1:, :]
    rel[:, 1:] |= free[:, :-1]
    rel[:, :-1] |= free[:, 1:]
    return rel


def _assert_admissible(frame: HeightFrame, h: np.ndarray) -> None:
    rel = _relevant(frame)
    both = rel[:, 1:] & rel[:, :-1]
    dx = np.abs(h[:, 1:] - h[:, :-1])[both]
    both = rel[1:, :] & rel[:-1, :]
    dy = np.abs(h[1:, :] - h[:-1, :])[both]
    assert dx.size == 0 or int(dx.max()) == 1
    assert dy.size == 0 or int(dy.max()) == 1
    assert dx.size == 0 or int(dx.min()) == 1
    assert dy.size == 0 or int(dy.min()) == 1


def config_from_heights(frame: HeightFrame, h: np.ndarray) -> Configuration:
    graph = frame.graph
    values = {}
    for (e, fa, fb, d) in _face_increments(graph):
        if graph.is_external(e):
            values[e] = graph.boundary[e]
        else:
            diff = int(h[fb[1], fb[0]]) - int(h[fa[1], fa[0]])
            values[e] = 1 if diff == d else 0
    return Configuration(graph=graph, values=values)


def heights_from_config(cfg: Configuration) -> np.ndarray:
    """Integrate a configuration into its height function (tests/oracles)."""
    graph = cfg.graph
    W, H = graph.width, graph.height
    NOVAL = np.iinfo(np.int32).min
    h = np.full((H + 1, W + 1), NOVAL, dtype=np.int32)
    h[0, 0] = 0
    pending = [(0, 0)]
    incs = _face_increments(graph)
    by_face: Dict[Tuple[int, int], List] = {}
    for rec in incs:
        by_face.setdefault(rec[1], []).append(rec)
        by_face.setdefault(rec[2], []).append(rec)
    while pending:
        f = pending.pop()
        for (e, fa, fb, d) in by_face.get(f, ()):
            step = d if cfg.values[e] else -d
            if h[fa[1], fa[0]] != NOVAL and h[fb[1], fb[0]] == NOVAL:
                h[fb[1], fb[0]] = h[fa[1], fa[0]] + step
                pending.append(fb)
            elif h[fb[1], fb[0]] != NOVAL and h[fa[1], fa[0]] == NOVAL:
                h[fa[1], fa[0]] = h[fb[1], fb[0]] - step
                pending.append(fa)
    return h


def single_site_update(h: np.ndarray, free: np.ndarray, j: int, i: int, coin: int) -> None:
    """One height move at face (i, j): raise by 2 on coin=1 if all four
    neighbours sit at h+1, lower by 2 on coin=0 if all sit at h-1."""
    if not free[j, i]:
        return
    v = h[j, i]
    if coin:
        if (
            h[j - 1, i] == v + 1
            and h[j + 1, i] == v + 1
            and h[j, i - 1] == v + 1
            and h[j, i + 1] == v + 1
        ):
            h[j, i] = v + 2
    else:
        if (
            h[j - 1, i] == v - 1
            and h[j + 1, i] == v - 1
            and h[j, i - 1] == v - 1
            and h[j, i + 1] == v - 1
        ):
            h[j, i] = v - 2


# ------------------------------------------------------------ random tape


@dataclass(frozen=True)
class RandomTape:
    """Counter-based coin source: the coins of sweep t are a pure function
    of (seed, t), so any tape segment replays identically."""

    seed: int

    def child(self, index: int) -> "RandomTape":
        mixed = np.random.SeedSequence([self.seed & 0xFFFFFFFF, self.seed >> 32, index])
        return RandomTape(seed=int(mixed.generate_state(1, np.uint64)[0]))


@njit(cache=True, inline="always")
def _mix64(z):
    z = (z + UINT64(0x9E3779B97F4A7C15)) & UINT64(0xFFFFFFFFFFFFFFFF)
    z = ((z ^ (z >> UINT64(30))) * UINT64(0xBF58476D1CE4E5B9)) & UINT64(0xFFFFFFFFFFFFFFFF)
    z = ((z ^ (z >> UINT64(27))) * UINT64(0x94D049BB133111EB)) & UINT64(0xFFFFFFFFFFFFFFFF)
    return z ^ (z >> UINT64(31))


@njit(cache=True, nogil=True, inline="always")
def _next_bits(x):
    x ^= x >> UINT64(12)
    x ^= (x << UINT64(25)) & UINT64(0xFFFFFFFFFFFFFFFF)
    x ^= x >> UINT64(27)
    return x, (x * UINT64(0x2545F4914F6CDD1D)) & UINT64(0xFFFFFFFFFFFFFFFF)


@njit(cache=True, nogil=True)
def _color_pass(dst_lo, dst_hi, src_lo, src_hi, bounds, off, x, coins):
    """One half-sweep: update all cells of one color from the other color.

    dst/src are the red/black split-storage arrays; bounds[j] = (k0, k1)
    the free interval of this color in row j; off[j] the west-neighbour
    column offset.  The per-site move is the heat-bath form
    h' = min(nbrs) + 1 on coin 1, max(nbrs) - 1 on coin 0, which on
    admissible states equals the raise/lower-by-2 attempt dynamics.
    Row slices keep the hot loops SIMD-vectorizable.
    """
    H1 = dst_lo.shape[0]
    for j in range(1, H1 - 1):
        k0 = bounds[j, 0]
        k1 = bounds[j, 1]
        n = k1 - k0
        if n <= 0:
            continue
        kk = 0
        while kk < n:
            x, chunk = _next_bits(x)
            m = n - kk if n - kk < 64 else 64
            for b in range(m):
                coins[kk + b] = np.int16((chunk >> UINT64(b)) & UINT64(1))
            kk += m
        o = off[j]
        d = dst_lo[j, k0:k1]
        up = src_lo[j - 1, k0:k1]
        dn = src_lo[j + 1, k0:k1]
        w = src_lo[j, k0 + o : k1 + o]
        e = src_lo[j, k0 + o + 1 : k1 + o + 1]
        for k in range(d.shape[0]):
            a = up[k]
            b_ = dn[k]
            p = w[k]
            q = e[k]
            mn = min(min(a, b_), min(p, q))
            mx = max(max(a, b_), max(p, q))
            d[k] = mx - 1 + coins[k] * (mn - mx + 2)
        d = dst_hi[j, k0:k1]
        up = src_hi[j - 1, k0:k1]
        dn = src_hi[j + 1, k0:k1]
        w = src_hi[j, k0 + o : k1 + o]
        e = src_hi[j, k0 + o + 1 : k1 + o + 1]
        for k in range(d.shape[0]):
            a = up[k]
            b_ = dn[k]
            p = w[k]
            q = e[k]
            mn = min(min(a, b_), min(p, q))
            mx = max(max(a, b_), max(p, q))
            d[k] = mx - 1 + coins[k] * (mn - mx + 2)
    return x


@njit(cache=True, nogil=True)
def _run_sweeps(
    rlo, blo, rhi, bhi, rbounds, bbounds, roff, boff, seed, t_start, t_end, coins
):
    """Checkerboard sweeps for absolute times t in [t_start, t_end) applied
    to both chains with shared coins; returns the number of differing free
    cells afterwards.  Coins for sweep t are a pure function of (seed, t)."""
    for t in range(t_start, t_end):
        x = _mix64(UINT64(seed) ^ (UINT64(t & 0xFFFFFFFFFFFF) * UINT64(0xD1342543DE82EF95)))
        if x == UINT64(0):
            x = UINT64(0x106689D45497FDB5)
        x = _color_pass(rlo, rhi, blo, bhi, rbounds, roff, x, coins)
        x = _color_pass(blo, bhi, rlo, rhi, bbounds, boff, x, coins)
    diff = 0
    H1 = rlo.shape[0]
    for j in range(1, H1 - 1):
        for k in range(rbounds[j, 0], rbounds[j, 1]):
            if rlo[j, k] != rhi[j, k]:
                diff += 1
        for k in range(bbounds[j, 0], bbounds[j, 1]):
            if blo[j, k] != bhi[j, k]:
                diff += 1
    return diff


# ------------------------------------------------------------------ CFTP


_FRAME_CACHE: Dict[object, HeightFrame] = {}


def _frame_for(domain) -> HeightFrame:
    key = domain if not isinstance(domain, DomainGraph) else id(domain)
    if key not in _FRAME_CACHE:
        _FRAME_CACHE[key] = build_height_frame(domain)
    return _FRAME_CACHE[key]


def cftp_heights(domain, seed: int, t_hint: int = 0) -> Tuple[np.ndarray, int]:
    """Exact sample of the height function; returns (heights, T used)."""
    frame = _frame_for(domain)
    if not frame.free.any():
        return frame.h_lo.copy(), 0
    rlo0, blo0 = _pack_rb(frame.h_lo)
    rhi0, bhi0 = _pack_rb(frame.h_hi)
    coins = np.zeros(rlo0.shape[1] + 1, dtype=np.int16)
    T = max(2, t_hint)
    while True:
        rlo, blo = rlo0.copy(), blo0.copy()
        rhi, bhi = rhi0.copy(), bhi0.copy()
        diff = _run_sweeps(
            rlo, blo, rhi, bhi,
            frame.rbounds, frame.bbounds, frame.roff, frame.boff,
            np.uint64(seed & (2**64 - 1)), -T, 0, coins,
        )
        if diff == 0:
            return _unpack_rb(rlo, blo, frame.shape), T
        if T > _CAP_SWEEPS:
            raise NotMonotone(
                f"no coalescence within {T} sweeps; doubling schedule aborted"
            )
        T *= 2


def cftp_sample(domain, seed: int, params: Optional[ModelParams] = None) -> Configuration:
    """Uniform configuration at the ice point, deterministic in ``seed``."""
    if params is not None and not params.is_ice_point:
        raise NonIcePoint("exact sampling is implemented at equal weights only")
    if isinstance(domain, Triangoloid):
        report = triangoloid_monotone_report(domain)
        raise NotMonotone(
            "triangoloid height charts are not jointly monotone: " + report["summary"]
        )
    frame = _frame_for(domain)
    h, _ = cftp_heights(domain, seed)
    return config_from_heights(frame, h)


# ------------------------------------------------- triangoloid (fallback)


def triangoloid_monotone_report(domain: Triangoloid, probe: Optional[Triangoloid] = None) -> dict:
    """Empirical check of the seam-coupled height structure on a tiny
    instance: do extremal states exist under either relative orientation of
    the two charts?  Returns a report dict; 'monotone' stays False unless
    both extremes exist."""
    probe = probe or (domain if _tiny(domain) else Triangoloid(1, 1, 1))
    from .enumeration import enumerate_configurations

    charts = []
    for cfg in enumerate_configurations(probe):
        charts.append(_triangoloid_charts(cfg, probe))
    results = {}
    for sign_name, sgn in (("aligned", 1), ("reversed", -1)):
        def leq(a, b):
            return np.all(a[0] <= b[0]) and (
                np.all(a[1] <= b[1]) if sgn == 1 else np.all(a[1] >= b[1])
            )

        has_top = any(all(leq(o, c) for o in charts) for c in charts)
        has_bot = any(all(leq(c, o) for o in charts) for c in charts)
        results[sign_name] = {"top": has_top, "bottom": has_bot}
    monotone = any(v["top"] and v["bottom"] for v in results.values())
    summary = (
        f"probe {probe}: "
        + ", ".join(
            f"{k}: top={v['top']} bottom={v['bottom']}" for k, v in results.items()
        )
    )
    return {"monotone": monotone, "summary": summary, "detail": results}


def _tiny(domain: Triangoloid) -> bool:
    return (domain.a + domain.b + domain.c) <= 4


def _triangoloid_charts(cfg: Configuration, dom: Triangoloid):
    """Per-patch height charts (bottom rectangle, north-east patch)."""
    g = cfg.graph
    W, Hb = dom.south_width, dom.bottom_height
    ab, bc_ = dom.a + dom.b, dom.b + dom.c
    hb = np.zeros((Hb + 1, W + 1), dtype=np.int32)
    for i in range(1, W + 1):
        hb[0, i] = hb[0, i - 1] + (1 if cfg.values[("v", i, 0)] else -1)
    for j in range(1, Hb + 1):
        hb[j, 0] = hb[j - 1, 0] + (-1 if cfg.values[("h", 0, j)] else 1)
        for i in range(1, W + 1):
            hb[j, i] = hb[j, i - 1] + (1 if cfg.values[("v", i, j - 1)] else -1)
    hne = np.zeros((ab + 1, bc_ + 1), dtype=np.int32)
    for k in range(1, bc_ + 1):
        hne[0, k] = hne[0, k - 1] + (1 if cfg.values[("v", ab + k, Hb)] else -1)
    for l in range(1, ab + 1):
        bend = ("bend", ab + 1 - l)
        west_view = cfg.values[bend] ^ 1  # defect flip at the seam
        hne[l, 0] = hne[l - 1, 0] + (-1 if west_view else 1)
        for k in range(1, bc_ + 1):
            hne[l, k] = hne[l, k - 1] + (1 if cfg.values[("v", ab + k, Hb + l - 1)] else -1)
    return hb, hne


def exact_sample_tiny(domain, seed: int) -> Configuration:
    """Exact uniform sample by enumeration (tiny domains, ice point).

    The fallback used for triangoloids, whose seam-coupled heights fail the
    monotonicity check required by coupling from the past.
    """
    from .enumeration import enumerate_configurations

    configs = list(enumerate_configurations(domain))
    if not configs:
        raise NoValidConfiguration("domain admits no configuration")
    rng = np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1)]))
    return configs[int(rng.integers(0, len(configs)))]


# -------------------------------------------------------------- statistics


@dataclass
class SampleStats:
    """Aggregated per-vertex c-vertex counts and the refinement histogram."""

    domain: object
    n_samples: int
    histogram: np.ndarray        # refinement position r = 1..width
    w5: np.ndarray               # [j-1, i-1] counts of S->E turns
    w6: np.ndarray               # counts of W->N turns
    width: int
    height: int

    def density(self) -> np.ndarray:
        if self.n_samples == 0:
            return np.zeros_like(self.w5, dtype=float)
        return (self.w5 + self.w6) / float(self.n_samples)


def _fields_from_heights(h: np.ndarray):
    """Vectorized W5/W6 indicator fields from a height array."""
    # thickness views at vertex (i, j): see module docstring conventions
    west = (h[1:, :-1] - h[:-1, :-1]) == -1   # ("h", i-1, j)
    east = (h[1:, 1:] - h[:-1, 1:]) == -1     # ("h", i, j)
    south = (h[:-1, 1:] - h[:-1, :-1]) == 1   # ("v", i, j-1)
    north = (h[1:, 1:] - h[1:, :-1]) == 1     # ("v", i, j)
    w5 = (~west) & south & east & (~north)
    w6 = west & (~south) & (~east) & north
    return w5, w6


def refinement_position_from_heights(h: np.ndarray) -> Optional[int]:
    """Column of the unique thick vertical edge above the first row, or
    None when the boundary condition admits several (e.g. the refined
    square, whose first row hosts two paths)."""
    thick = (h[1, 1:] - h[1, :-1]) == 1
    (idx,) = np.nonzero(thick)
    if idx.size != 1:
        return None
    return int(idx[0]) + 1


def collect_stats(
    domain, n_samples: int, seed: int, progress=None, threads: int = 1
) -> SampleStats:
    """Aggregate refinement histogram and c-vertex fields over independent
    exact samples (one spawned tape per sample).

    Samples are embarrassingly parallel; with threads > 1 they run
    concurrently (the sweep kernel releases the GIL).
    """
    tape = RandomTape(seed=seed)
    use_enum = isinstance(domain, Triangoloid)
    if use_enum:
        graph = domain.graph()
        W, H = graph.width, graph.height
    else:
        frame = _frame_for(domain)
        H, W = frame.shape[0] - 1, frame.shape[1] - 1
    hist = np.zeros(W, dtype=np.int64)
    w5 = np.zeros((H, W), dtype=np.int64)
    w6 = np.zeros((H, W), dtype=np.int64)
    done = [0]
    import threading

    merge_lock = threading.Lock()

    def one_sample(k: int, t_hint: int) -> int:
        child = tape.child(k)
        if use_enum:
            cfg = exact_sample_tiny(domain, child.seed)
            from .model import VertexType, classify_vertex

            for (i, j) in cfg.graph.vertices():
                t = classify_vertex(cfg, (i, j))
                if t == VertexType.W5:
                    w5[j - 1, i - 1] += 1
                elif t == VertexType.W6:
                    w6[j - 1, i - 1] += 1
            hist[_triangoloid_refinement(cfg) - 1] += 1
            T = 0
        else:
            h, T = cftp_heights(domain, child.seed, t_hint=t_hint)
            f5, f6 = _fields_from_heights(h)
            r = refinement_position_from_heights(h)
            with merge_lock:
                w5[:, :] += f5
                w6[:, :] += f6
                if r is not None:
                    hist[r - 1] += 1
        with merge_lock:
            done[0] += 1
            if progress is not None:
                progress(done[0], n_samples)
        return T

    if threads <= 1 or use_enum:
        t_hint = 0
        for k in range(n_samples):
            t_hint = max(t_hint, one_sample(k, t_hint))
    else:
        from concurrent.futures import ThreadPoolExecutor

        # calibrate the sweep-count hint on the first sample, then fan out
        t_hint = one_sample(0, 0) if n_samples else 0
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda k: one_sample(k, t_hint), range(1, n_samples)))
    return SampleStats(
        domain=domain, n_samples=n_samples, histogram=hist, w5=w5, w6=w6, width=W, height=H
    )


def _triangoloid_refinement(cfg: Configuration) -> int:
    g = cfg.graph
    lo, hi = g.rows[0][1]
    j = g.rows[0][0]
    thick = [i for i in range(lo, hi + 1) if cfg.view(g.vertex_edges((i, j))["N"], (i, j)) == 1]
    assert len(thick) == 1
    return thick[0]


def box_smooth(field: np.ndarray, size: int = 5) -> np.ndarray:
    """Plain box average, edge-replicated."""
    from scipy.ndimage import uniform_filter

    return uniform_filter(field.astype(float), size=size, mode="nearest")


def frozen_boundary(stats: SampleStats, threshold: float = 0.05) -> List[np.ndarray]:
    """Level set of the smoothed c-vertex density at ``threshold``.

    Marching squares over the vertex grid; returns polylines of (x, y)
    points rescaled by 1/max(width, height).
    """
    if stats.n_samples < 1:
        raise DegenerateField("no samples")
    dens = box_smooth(stats.density(), 5)
    if np.ptp(dens) == 0:
        raise DegenerateField("density field is constant")
    scale = 1.0 / float(max(stats.width, stats.height))
    segments = _marching_squares(dens, threshold)
    polys = _chain_segments(segments)
    out = []
    for poly in polys:
        pts = np.asarray(poly, dtype=float)
        # grid index (row j-1, col i-1) -> vertex (i, j) -> rescaled
        out.append(np.column_stack([(pts[:, 1] + 1.0) * scale, (pts[:, 0] + 1.0) * scale]))
    return out


def _marching_squares(field: np.ndarray, level: float) -> List[Tuple[Tuple[float, float], Tuple[float, float]]]:
    """Segment soup of the iso-level curve, in (row, col) coordinates."""
    f = field - level
    H, W = f.shape
    segs = []

    def interp(p0, v0, p1, v1):
        t = v0 / (v0 - v1)
        return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))

    for j in range(H - 1):
        for i in range(W - 1):
            corners = [((j, i), f[j, i]), ((j, i + 1), f[j, i + 1]),
                       ((j + 1, i + 1), f[j + 1, i + 1]), ((j + 1, i), f[j + 1, i])]
            crossings = []
            for k in range(4):
                (p0, v0), (p1, v1) = corners[k], corners[(k + 1) % 4]
                if (v0 > 0) != (v1 > 0):
                    crossings.append(interp(p0, v0, p1, v1))
            if len(crossings) == 2:
                segs.append((crossings[0], crossings[1]))
            elif len(crossings) == 4:
                segs.append((crossings[0], crossings[1]))
                segs.append((crossings[2], crossings[3]))
    return segs


def _chain_segments(segs):
    """Chain a segment soup into polylines, consuming each segment once."""

    def key(p):
        return (round(p[0], 9), round(p[1], 9))

    adj: Dict[tuple, list] = {}
    for idx, (a, b) in enumerate(segs):
        adj.setdefault(key(a), []).append((idx, b))
        adj.setdefault(key(b), []).append((idx, a))
    used = [False] * len(segs)
    polys = []
    for start, (a, b) in enumerate(segs):
        if used[start]:
            continue
        used[start] = True
        chain = [a, b]
        for forward in (True, False):
            while True:
                tip = chain[-1] if forward else chain[0]
                nxt = None
                for (idx, other) in adj.get(key(tip), ()):  # noqa: B905
                    if not used[idx]:
                        nxt = (idx, other)
                        break
                if nxt is None:
                    break
                used[nxt[0]] = True
                if forward:
                    chain.append(nxt[1])
                else:
                    chain.insert(0, nxt[1])
        polys.append(chain)
    return polys
