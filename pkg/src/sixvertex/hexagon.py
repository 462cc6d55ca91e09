"""Arctic ellipse of lozenge tilings of the (a,b,c)-hexagon.

A minimal working instance of the tangent construction: the refined
counts give a one-parameter family of lines (parameter xi in [0, alpha],
the rescaled arrival position of the peeled path), whose envelope is the
west arc of the inscribed ellipse.  Coordinates are Cartesian, centered
in the rescaled (alpha,beta,gamma)-hexagon whose horizontal sides have
length beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import OutOfRange
from .tangent import ParametricArc, envelope_of_coefficients

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class AspectRatios:
    """Rescaled side (or bundle) sizes.  The hexagon imposes no
    normalization; the triangoloid uses alpha + beta + gamma = 1."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("aspect ratios must be nonnegative")

    def normalized(self) -> "AspectRatios":
        s = self.alpha + self.beta + self.gamma
        return AspectRatios(self.alpha / s, self.beta / s, self.gamma / s)

    @property
    def total(self) -> float:
        return self.alpha + self.beta + self.gamma


def hexagon_saddle_eta(xi: float, ratios: AspectRatios) -> float:
    """eta_sp = gamma xi / (alpha + beta + gamma - xi), the concentration
    point of the cut-line crossing position."""
    return ratios.gamma * xi / (ratios.total - xi)


def hexagon_family(xi: float, ratios: AspectRatios) -> Tuple[float, float, float]:
    """Coefficients (A, B, C) of the tangent line A x + B y + C = 0 at
    parameter xi in [0, alpha]."""
    a, b, g = ratios.alpha, ratios.beta, ratios.gamma
    if not -1e-12 <= xi <= a + 1e-12:
        raise OutOfRange(f"xi must lie in [0, alpha], got {xi}")
    s = a + b + g
    A = 2.0 * (a * s - (a + g) * xi)
    B = (2.0 / SQRT3) * (a * s - (3.0 * a + 2.0 * b + g) * xi + 2.0 * xi * xi)
    C = a * (a + b) * s - 2.0 * a * s * xi + (a + g) * xi * xi
    return A, B, C


def _hexagon_family_derivative(xi: float, ratios: AspectRatios):
    a, b, g = ratios.alpha, ratios.beta, ratios.gamma
    s = a + b + g
    dA = -2.0 * (a + g)
    dB = (2.0 / SQRT3) * (-(3.0 * a + 2.0 * b + g) + 4.0 * xi)
    dC = -2.0 * a * s + 2.0 * (a + g) * xi
    return dA, dB, dC


def hexagon_saddle_points(xi: float, ratios: AspectRatios):
    """The two concentration points defining the tangent line: the arrival
    point on the top side and the cut-line crossing point."""
    a, b, g = ratios.alpha, ratios.beta, ratios.gamma
    eta = hexagon_saddle_eta(xi, ratios)
    p1 = ((4.0 * xi - 3.0 * a - 2.0 * b - g) / 4.0, (SQRT3 / 2.0) * (a + g) / 2.0)
    p2 = ((2.0 * eta - a - 2.0 * b - g) / 4.0, (SQRT3 / 2.0) * (2.0 * eta + g - a) / 2.0)
    return p1, p2


def hexagon_envelope(ratios: AspectRatios, grid: Optional[Sequence[float]] = None) -> ParametricArc:
    """West arc of the arctic ellipse, as the caustic of hexagon_family."""
    a = ratios.alpha
    if grid is None:
        grid = np.linspace(1e-4 * a, a * (1 - 1e-4), 200)
    return envelope_of_coefficients(
        lambda xi: hexagon_family(xi, ratios),
        grid,
        d_family=lambda xi: _hexagon_family_derivative(xi, ratios),
        label="hexagon-west-arc",
    )


def hexagon_ellipse_residual(x: float, y: float, ratios: AspectRatios) -> float:
    """E(x,y) of the inscribed ellipse; zero on the ellipse, positive at the
    center, negative outside (e.g. at the hexagon corners).

    The cross-term coefficient is 2 sqrt(3) (alpha + 2 beta + gamma)
    (alpha - gamma): with this coefficient, and only with it, the conic is
    tangent to all six side lines, i.e. genuinely inscribed.  (The two
    candidate coefficients coincide for alpha == gamma.)
    """
    a, b, g = ratios.alpha, ratios.beta, ratios.gamma
    s = a + b + g
    return (
        3.0 * a * b * g * s
        - 3.0 * (a + g) ** 2 * x * x
        + 2.0 * SQRT3 * (a + 2.0 * b + g) * (a - g) * x * y
        - ((a + 2.0 * b + g) ** 2 - 4.0 * a * g) * y * y
    )


def hexagon_side_lines(ratios: AspectRatios):
    """The six side lines in the centered frame, counterclockwise."""
    a, b, g = ratios.alpha, ratios.beta, ratios.gamma
    return [
        lambda x: (SQRT3 / 2.0) * (2.0 * x + b + g),
        lambda x: (SQRT3 / 4.0) * (a + g),
        lambda x: (SQRT3 / 2.0) * (-2.0 * x + a + b),
        lambda x: (SQRT3 / 2.0) * (2.0 * x - b - g),
        lambda x: -(SQRT3 / 4.0) * (a + g),
        lambda x: (SQRT3 / 2.0) * (-2.0 * x - a - b),
    ]


def hexagon_corners(ratios: AspectRatios):
    """Vertices of the rescaled hexagon: intersections of adjacent sides,
    the last three by central symmetry."""
    a, b, g = ratios.alpha, ratios.beta, ratios.gamma
    y_top = (SQRT3 / 4.0) * (a + g)
    upper = [
        ((a - 2.0 * b - g) / 4.0, y_top),
        ((a + 2.0 * b - g) / 4.0, y_top),
        ((a + 2.0 * b + g) / 4.0, (SQRT3 / 4.0) * (a - g)),
    ]
    return upper + [(-x, -y) for (x, y) in upper]
