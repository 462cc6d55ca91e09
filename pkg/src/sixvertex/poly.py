"""Dense univariate polynomials over exact rationals.

Small helper used for generating functions h_N(z) and the corner-weight
polynomial in omega.  Coefficients are ``fractions.Fraction``; trailing
zeros are trimmed so degree is well defined.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, float, Fraction]


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number]):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: Number):
        """Evaluate by Horner's rule; exact if z is int/Fraction."""
        acc = Fraction(0) if isinstance(z, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * z + (c if isinstance(z, (int, Fraction)) else float(c))
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Polynomial({list(self.coeffs)})"


def poly_from_values(values: Sequence[Number]) -> Polynomial:
    """Polynomial sum_r values[r] z^r."""
    return Polynomial(values)
