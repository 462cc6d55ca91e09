"""Closed-form arctic curve of the ice-point triangoloid.

With aspect ratios alpha + beta + gamma = 1 the boundary transform is
r(z) = xi_sp(z) + eta_sp(z), where eta_sp equals the square's ice-point
r and xi_sp carries the hexagon refinement:

    xi_sp = [(g-b) z + a + b - sqrt(((g-b) z + a + b)^2 + 4 g b z (z-1))] / (2(1-z))

(signs fixed by r(z) -> 1 + beta as z -> oo).  The south-east arc then has
the parametric form

    x(z) = 1 + beta - zeta(z; a, b, g),
    y(z) = zeta(z/(z-1); b, a, g),

in the frame whose x axis runs along the south side (length 1 + beta) and
whose y axis runs up the west side.  The other two arcs follow by cyclic
permutation of the ratios composed with the frame maps that carry their
local south sides onto the east and west sides of the assembled domain.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import NegativeDiscriminant
from .hexagon import AspectRatios
from .tangent import Line, ParametricArc, REvaluator, r_asm, _r_asm_prime


def tri_xi_sp(z: float, ratios: AspectRatios) -> float:
    """Hexagon part of the triangoloid saddle, in the rationalized form
    2 g b z / (sqrt(D) + (g-b) z + a + b), smooth through z = 1."""
    a, b, g = ratios.alpha, ratios.beta, ratios.gamma
    n = (g - b) * z + a + b
    disc = n * n + 4.0 * g * b * z * (z - 1.0)
    if disc < 0:
        raise NegativeDiscriminant(f"discriminant {disc} < 0 at z={z}")
    return 2.0 * g * b * z / (math.sqrt(disc) + n)


def tri_r(z: float, ratios: AspectRatios) -> float:
    """r(z) = xi_sp + eta_sp for the triangoloid at the ice point."""
    return tri_xi_sp(z, ratios) + r_asm(z)


def triangoloid_evaluator(ratios: AspectRatios) -> REvaluator:
    rr = ratios.normalized()

    def val(z: float) -> float:
        return tri_r(z, rr)

    def der(z: float) -> float:
        h = max(1e-6, 1e-5 * z)  # scale-aware step; r' decays like 1/z^2
        return (val(z + h) - val(z - h)) / (2.0 * h)

    a, b, g = rr.alpha, rr.beta, rr.gamma
    kappa = 0.5 + b * g / (a + g) if a + g > 0 else 0.5
    return REvaluator(
        value=val, derivative=der, at_one=kappa, at_infinity=1.0 + b, label="triangoloid"
    )


def south_contact(ratios: AspectRatios) -> float:
    """South contact point kappa = (a+b+g)/2 + b g / (a + g)."""
    r = ratios.normalized()
    return 0.5 + r.beta * r.gamma / (r.alpha + r.gamma)


def tri_zeta(z: float, ratios: AspectRatios, internal_branch: bool = False) -> float:
    """The caustic building block zeta(z; a, b, g); ``internal_branch``
    flips the sign of the last square root (the experimental guess for the
    internal arcs)."""
    a, b, g = ratios.alpha, ratios.beta, ratios.gamma
    s = math.sqrt(z * z - z + 1.0)
    n = (g - b) * z + a + b
    disc = n * n + 4.0 * g * b * z * (z - 1.0)
    if disc < 0:
        raise NegativeDiscriminant(f"discriminant {disc} < 0 at z={z}")
    sign = 1.0 if internal_branch else -1.0
    return (
        (3.0 - a) / 2.0
        - (2.0 * z - 1.0) / (2.0 * s)
        + sign * ((1.0 - a) ** 2 * z + a * g - b) / (2.0 * math.sqrt(disc))
    )


def _zeta_pair(z: float, ratios: AspectRatios, internal: bool) -> Tuple[float, float]:
    a, b, g = ratios.alpha, ratios.beta, ratios.gamma
    x = 1.0 + b - tri_zeta(z, AspectRatios(a, b, g), internal_branch=internal)
    w = z / (z - 1.0)
    y = tri_zeta(w, AspectRatios(b, a, g), internal_branch=internal)
    return x, y


def _cone_point(ratios: AspectRatios) -> Tuple[float, float]:
    r = ratios.normalized()
    return (r.alpha + r.beta, r.alpha + r.gamma)


def fold_about_cone(x: float, y: float, ratios: AspectRatios) -> Tuple[float, float]:
    """Rotate by -90 degrees about the conical singularity (the triangular
    face), the map identifying the two sheets across the defect seam."""
    cx, cy = _cone_point(ratios)
    u, v = x - cx, y - cy
    return (cx + v, cy - u)


_ARC_FRAMES = {
    # arc index -> (cyclic parameter shift, local -> global frame map)
    0: (lambda r: r, lambda x, y, r: (x, y)),
    # east-north arc: local south side maps onto the east side going up
    1: (
        lambda r: AspectRatios(r.gamma, r.alpha, r.beta),
        lambda x, y, r: (1.0 + r.beta - y, x),
    ),
    # west-south arc: local south side maps onto the west side going down
    2: (
        lambda r: AspectRatios(r.beta, r.gamma, r.alpha),
        lambda x, y, r: (y, 1.0 + r.gamma - x),
    ),
}


def triangoloid_arc(
    ratios: AspectRatios,
    arc_index: int = 0,
    grid: Optional[Sequence[float]] = None,
) -> ParametricArc:
    """One external arc of the triangoloid arctic curve in the assembled
    frame (south side on the x axis, cone at (alpha+beta, alpha+gamma))."""
    rr = ratios.normalized()
    if grid is None:
        grid = 1.0 + np.geomspace(1e-3, 1e4, 200)
    if arc_index not in _ARC_FRAMES:
        raise ValueError("arc_index must be 0, 1 or 2")
    shift, frame = _ARC_FRAMES[arc_index]
    local = shift(rr)
    xs, ys = [], []
    for z in grid:
        xl, yl = _zeta_pair(float(z), local, internal=False)
        xg, yg = frame(xl, yl, rr)
        xs.append(xg)
        ys.append(yg)
    return ParametricArc(
        z=np.asarray(grid, float),
        x=np.array(xs),
        y=np.array(ys),
        label=f"triangoloid-arc{arc_index}",
        frame="triangoloid",
    )


def triangoloid_internal_guess(
    ratios: AspectRatios, grid: Optional[Sequence[float]] = None
) -> Tuple[ParametricArc, float, float]:
    """EXPERIMENTAL alternate-branch curve for the internal arcs.

    Returns (arc, endpoint_gap, predicted_gap): the curve obtained with the
    other square-root sign, the distance by which its two endpoints miss
    each other after folding about the cone, and the small-gamma prediction
    gamma (1 - alpha beta) / ((alpha+gamma)(beta+gamma)).
    """
    rr = ratios.normalized()
    a, b, g = rr.alpha, rr.beta, rr.gamma
    if grid is None:
        grid = 1.0 + np.geomspace(1e-6, 1e6, 400)
    xs, ys = [], []
    for z in grid:
        x, y = _zeta_pair(float(z), rr, internal=True)
        xs.append(x)
        ys.append(y)
    arc = ParametricArc(
        z=np.asarray(grid, float),
        x=np.array(xs),
        y=np.array(ys),
        label="triangoloid-internal-guess EXPERIMENTAL",
        frame="triangoloid",
        experimental=True,
    )
    # endpoint at z -> 1 (x limit at z=1, y limit at w -> oo)
    x1 = 1.0 + b - tri_zeta(1.0, rr, internal_branch=True)
    y1 = a + g  # limit of the internal-branch zeta(w; b, a, g) as w -> oo
    # endpoint at z -> oo
    xinf = 1.0 + b - (1.0 - a)  # internal zeta -> 1 - a
    yinf = tri_zeta(1.0, AspectRatios(b, a, g), internal_branch=True)
    fx, fy = fold_about_cone(xinf, yinf, rr)
    gap = math.hypot(x1 - fx, y1 - fy)
    predicted = g * (1.0 - a * b) / ((a + g) * (b + g))
    return arc, gap, predicted


def tri_line_family(z: float, ratios: AspectRatios) -> Line:
    """Ice-point tangent line of the triangoloid: slope z-1, intercept r(z)."""
    return Line(z=z, m=z - 1.0, r=tri_r(z, ratios.normalized()))
