"""Tangent-line families and their envelopes (geometric caustics).

The arctic curve of a domain-wall-type side is computed as the envelope of
the one-parameter family of straight lines

    F(x, y; z) = x - y / m(z) - r(z) = 0,        z in [1, oo),

where m(z) is the slope fixed by the local single-path analysis,

    m(z) = (z - 1) (t^2 z - 2 delta t + 1) / (z (t^2 - 2 delta t + 1)),

and r(z) is the scaled logarithmic derivative of the boundary generating
function, r(z) = lim (1/N) z d/dz ln h_N(z).  The envelope solves the
linear system F = 0, dF/dz = 0 point by point in z.

Evaluators for r(z): the closed forms at the ice point and on the
free-fermion line, the finite-size extrapolation from exact h_N
polynomials, and the triangoloid ice-point form (in ``triarc``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    EmptySequence,
    NonPositiveZ,
    NonProbabilisticWeights,
    SingularSystem,
)
from .params import ModelParams
from .poly import Polynomial


# ------------------------------------------------------------- geometry


@dataclass(frozen=True)
class Line:
    """Line y = m (x - r): slope m, x-intercept r, family parameter z.

    At z = 1 the slope vanishes and the line degenerates to the boundary
    axis y = 0; the (m, r) form stays valid there.
    """

    z: float
    m: float
    r: float

    def coefficients(self) -> Tuple[float, float, float]:
        """(A, B, C) with A x + B y + C = 0, normalized to A = m-safe form."""
        # m x - y - m r = 0  avoids the 1/m singularity at z = 1
        return (self.m, -1.0, -self.m * self.r)

    def signed_distance(self, x: float, y: float) -> float:
        a, b, c = self.coefficients()
        return (a * x + b * y + c) / math.hypot(a, b)


@dataclass
class ParametricArc:
    """Envelope points (x(z), y(z)) with their parameter values."""

    z: np.ndarray
    x: np.ndarray
    y: np.ndarray
    label: str = ""
    frame: str = "unit"
    experimental: bool = False
    skipped: List[float] = field(default_factory=list)

    def __post_init__(self):
        self.z = np.asarray(self.z, dtype=float)
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        assert np.all(np.diff(self.z) > 0), "z must be strictly increasing"
        assert np.all(np.isfinite(self.x)) and np.all(np.isfinite(self.y))

    def points(self) -> np.ndarray:
        return np.column_stack([self.x, self.y])


def default_zgrid(n: int = 200, eps: float = 1e-3, zmax: float = 1e4) -> np.ndarray:
    """Log-spaced grid on (1 + eps, zmax]; both contact points are limits."""
    return 1.0 + np.geomspace(eps, zmax - 1.0, n)


# ------------------------------------------------------------ slope m(z)


def _combo(params: ModelParams) -> float:
    combo = float(params.weight_combo)  # t^2 - 2 delta t + 1
    if combo <= 0:
        raise NonProbabilisticWeights("t^2 - 2*delta*t + 1 must be positive")
    return combo


def slope_m(z: float, params: ModelParams) -> float:
    """Slope of the tangent line through (r(z), 0); 0 at z = 1, monotone
    increasing on [1, oo) for probabilistic weights."""
    t = float(params.t)
    p = _combo(params)
    q = t * t * z - 2 * float(params.delta) * t + 1
    return (z - 1.0) * q / (z * p)


def slope_m_prime(z: float, params: ModelParams) -> float:
    t = float(params.t)
    p = _combo(params)
    q = t * t * z - 2 * float(params.delta) * t + 1
    return (q + t * t * z * (z - 1.0)) / (p * z * z)


def local_criterium_check(z: float, params: ModelParams) -> float:
    """Solve the homogeneous two-equation system of the single-path
    stationarity analysis for the turn ratio d and the slope m, and return
    |m - slope_m(z)|; vanishes identically.

        1 = z (1 - m d),        1 = m d^2 / (omega (1 - d)(1 - m d))
    """
    if z <= 1.0:
        return abs(slope_m(max(z, 1.0), params))
    omega = float(params.omega)
    d = omega / (z - 1.0 + omega)
    m = (z - 1.0) / (z * d)
    return abs(m - slope_m(z, params))


# ------------------------------------------------------------ r evaluators


@dataclass(frozen=True)
class REvaluator:
    """Boundary one-point function transform r(z) with metadata.

    value/derivative are callables of z; at_one and at_infinity are the
    documented endpoint limits (contact points r(1) = 1 - kappa).
    """

    value: Callable[[float], float]
    derivative: Callable[[float], float]
    at_one: float
    at_infinity: float
    label: str

    def __call__(self, z: float) -> float:
        return self.value(z)


def r_asm(z: float) -> float:
    """Ice-point closed form, in the cancellation-free equivalent form
    z / (sqrt(z^2 - z + 1) + 1)."""
    s = math.sqrt(z * z - z + 1.0)
    return z / (s + 1.0)


def _r_asm_prime(z: float) -> float:
    s = math.sqrt(z * z - z + 1.0)
    return (2.0 * s - z + 2.0) / (2.0 * s * (s + 1.0) ** 2)


def asm_evaluator() -> REvaluator:
    return REvaluator(
        value=r_asm, derivative=_r_asm_prime, at_one=0.5, at_infinity=1.0, label="ice-point"
    )


def r_free_fermion(z: float, t: float) -> float:
    """Free-fermion (delta = 0) closed form t^2 z / (t^2 z + 1)."""
    return t * t * z / (t * t * z + 1.0)


def free_fermion_evaluator(t: float) -> REvaluator:
    t2 = t * t

    def val(z: float) -> float:
        return t2 * z / (t2 * z + 1.0)

    def der(z: float) -> float:
        return t2 / (t2 * z + 1.0) ** 2

    return REvaluator(
        value=val,
        derivative=der,
        at_one=t2 / (t2 + 1.0),
        at_infinity=1.0,
        label=f"free-fermion t={t}",
    )


def r_finite_n(z: float, h_polys: Sequence[Tuple[int, Polynomial]]) -> float:
    """Finite-size estimate of r(z) from exact generating polynomials,
    r_N(z) = (1/N) z h_N'(z)/h_N(z), Richardson-extrapolated in 1/N using
    the two largest sizes (two-term model r + c/N)."""
    if z <= 0:
        raise NonPositiveZ(f"z must be positive, got {z}")
    if len({n for n, _ in h_polys}) < 2:
        raise EmptySequence("need h_N for at least two distinct N")
    vals = sorted((n, (1.0 / n) * z * p.derivative()(float(z)) / p(float(z))) for n, p in h_polys)
    (n1, r1), (n2, r2) = vals[-2], vals[-1]
    return (n2 * r2 - n1 * r1) / (n2 - n1)


def finite_n_evaluator(h_polys: Sequence[Tuple[int, Polynomial]], label="finite-N") -> REvaluator:
    polys = tuple(h_polys)

    def val(z: float) -> float:
        return r_finite_n(z, polys)

    def der(z: float) -> float:
        h = max(1e-6, 1e-7 * z)
        return (val(z + h) - val(z - h)) / (2.0 * h)

    # h_N has degree N-1, so r_N(z) -> (N-1)/N and the extrapolation -> 1
    return REvaluator(value=val, derivative=der, at_one=val(1.0), at_infinity=1.0, label=label)


# --------------------------------------------------------------- envelope


def line_family(z: float, params: ModelParams, r_eval: REvaluator) -> Line:
    """Member of the tangent-line family at parameter z."""
    return Line(z=z, m=slope_m(z, params), r=r_eval(z))


CoefficientFamily = Callable[[float], Tuple[float, float, float]]


def envelope_of_coefficients(
    family: CoefficientFamily,
    grid: Sequence[float],
    d_family: Optional[CoefficientFamily] = None,
    label: str = "",
) -> ParametricArc:
    """Envelope of lines A(z) x + B(z) y + C(z) = 0 over the grid.

    For each z, solves {F = 0, dF/dz = 0} as a 2x2 linear system.  The
    derivative coefficients are analytic when supplied, otherwise a 5-point
    central difference with step max(1e-5, 1e-4 z).  Parallel-line points
    raise no error; they are skipped and recorded on the arc.
    """
    xs, ys, zs, skipped = [], [], [], []
    for z in grid:
        a, b, c = family(z)
        if d_family is not None:
            da, db, dc = d_family(z)
        else:
            h = max(1e-5, 1e-4 * z)
            stencil = (-2, -1, 1, 2)
            wts = (1.0, -8.0, 8.0, -1.0)
            acc = np.zeros(3)
            for s, w in zip(stencil, wts):
                acc += w * np.asarray(family(z + s * h))
            da, db, dc = acc / (12.0 * h)
        det = a * db - b * da
        norm = max(abs(a), abs(b), abs(da), abs(db), 1.0)
        if abs(det) < 1e-13 * norm * norm:
            skipped.append(float(z))
            continue
        x = (-c * db + b * dc) / det
        y = (-a * dc + c * da) / det
        zs.append(float(z))
        xs.append(float(x))
        ys.append(float(y))
    if not zs:
        raise SingularSystem(f"all {len(list(grid))} grid points were singular")
    arc = ParametricArc(z=np.array(zs), x=np.array(xs), y=np.array(ys), label=label)
    arc.skipped = skipped
    return arc


def envelope(
    params: ModelParams,
    r_eval: REvaluator,
    grid: Optional[Sequence[float]] = None,
    analytic: bool = True,
) -> ParametricArc:
    """Arctic-curve arc for the square-type family of ``line_family``.

    With an analytic r derivative the system solves in closed form:
    y = r'(z) m(z)^2 / m'(z), x = r(z) + r'(z) m(z) / m'(z).
    """
    if grid is None:
        grid = default_zgrid()
    if analytic:
        xs, ys = [], []
        for z in grid:
            m = slope_m(z, params)
            mp = slope_m_prime(z, params)
            r = r_eval(z)
            rp = r_eval.derivative(z)
            y = rp * m * m / mp
            x = r + rp * m / mp
            xs.append(x)
            ys.append(y)
        return ParametricArc(
            z=np.asarray(grid, float),
            x=np.array(xs),
            y=np.array(ys),
            label=f"square-arc[{r_eval.label}]",
        )

    def fam(z: float):
        ln = line_family(z, params, r_eval)
        return ln.coefficients()

    return envelope_of_coefficients(fam, grid, label=f"square-arc[{r_eval.label}]")


def support_line_residuals(arc: ParametricArc, lines: Sequence[Line]):
    """(max over lines of min distance to arc, worst one-sided slack).

    A line supports the arc when it touches it (min |distance| small) and
    the arc stays on one side (signed distances do not change sign beyond
    the slack).
    """
    pts = arc.points()
    worst_touch = 0.0
    worst_slack = 0.0
    for ln in lines:
        a, b, c = ln.coefficients()
        norm = math.hypot(a, b)
        d = (a * pts[:, 0] + b * pts[:, 1] + c) / norm
        worst_touch = max(worst_touch, float(np.min(np.abs(d))))
        lo, hi = float(np.min(d)), float(np.max(d))
        # one-sided: all d >= -slack or all d <= slack
        worst_slack = max(worst_slack, min(-lo, hi) if lo < -0.0 and hi > 0.0 else 0.0)
    return worst_touch, worst_slack


def arc_endpoints_square(params: ModelParams, r_eval: REvaluator) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """Contact points (1-kappa, 0) at z=1 and (1, kappa) at z->oo, with
    kappa = 1 - r(1)."""
    kappa = 1.0 - r_eval.at_one
    return (r_eval.at_one, 0.0), (1.0, kappa)


def reflect_arc(arc: ParametricArc, which: str) -> ParametricArc:
    """Symmetry image of a unit-frame arc.

    'main'/'anti' reflect across the square's diagonals (exact symmetries
    for all t; the south-east arc is 'anti'-symmetric, so its 'main' image
    is the north-west arc).  'mirror_x'/'mirror_y' reflect across the
    vertical/horizontal axes, which map the model at t to the model at
    1/t; at t = 1 they yield the south-west and north-east arcs.
    """
    if which == "main":
        x, y = arc.y.copy(), arc.x.copy()
    elif which == "anti":
        x, y = 1.0 - arc.y, 1.0 - arc.x
    elif which == "mirror_x":
        x, y = 1.0 - arc.x, arc.y.copy()
    elif which == "mirror_y":
        x, y = arc.x.copy(), 1.0 - arc.y
    else:
        raise ValueError("which must be main/anti/mirror_x/mirror_y")
    return ParametricArc(z=arc.z, x=x, y=y, label=arc.label + f"+{which}", frame=arc.frame)


def full_curve_arcs(arc: ParametricArc, t_one: bool = True) -> List[ParametricArc]:
    """The four arcs of a square-domain curve from its south-east arc.

    Valid as stated for t = 1 (the axis mirrors are model symmetries only
    together with t -> 1/t).
    """
    if not t_one:
        raise ValueError("axis mirrors require the t->1/t partner arc; compose manually")
    return [
        arc,
        reflect_arc(arc, "main"),      # north-west
        reflect_arc(arc, "mirror_x"),  # south-west
        reflect_arc(arc, "mirror_y"),  # north-east
    ]
