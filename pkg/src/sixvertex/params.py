"""Boltzmann weights of the six-vertex model and derived parameters.

Weights are kept as exact rationals so that partition functions,
boundary correlators and the convolution formulas stay exact.  All four
derived quantities are rational functions of the weights:

    delta = (a^2 + b^2 - c^2) / (2ab)
    t     = b / a
    omega = (c / b)^2            # turn weight of an isolated path
    theta = (2*delta*t - 1) / (t^2 - 2*delta*t + 1) = (b^2 - c^2) / c^2

Note the frequently used combination t^2 - 2*delta*t + 1 equals (c/a)^2,
which is why everything downstream of the weights is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rationalish = Union[int, str, Fraction]


def _as_fraction(v: Rationalish) -> Fraction:
    f = Fraction(v)
    if f <= 0:
        raise ValueError("weights must be positive rationals")
    return f


@dataclass(frozen=True)
class ModelParams:
    """Immutable weight triple (wa, wb, wc) with derived parameters."""

    wa: Fraction
    wb: Fraction
    wc: Fraction

    def __init__(self, wa: Rationalish, wb: Rationalish, wc: Rationalish):
        object.__setattr__(self, "wa", _as_fraction(wa))
        object.__setattr__(self, "wb", _as_fraction(wb))
        object.__setattr__(self, "wc", _as_fraction(wc))

    @property
    def delta(self) -> Fraction:
        return (self.wa**2 + self.wb**2 - self.wc**2) / (2 * self.wa * self.wb)

    @property
    def t(self) -> Fraction:
        return self.wb / self.wa

    @property
    def omega(self) -> Fraction:
        return (self.wc / self.wb) ** 2

    @property
    def theta(self) -> Fraction:
        return (self.wb**2 - self.wc**2) / self.wc**2

    @property
    def weight_combo(self) -> Fraction:
        """t^2 - 2*delta*t + 1, always equal to (wc/wa)^2."""
        return (self.wc / self.wa) ** 2

    @property
    def is_ice_point(self) -> bool:
        return self.wa == self.wb == self.wc

    def vertex_weight(self, kind: int) -> Fraction:
        """Weight of a vertex of type ``kind`` in 1..6."""
        if kind in (1, 2):
            return self.wa
        if kind in (3, 4):
            return self.wb
        if kind in (5, 6):
            return self.wc
        raise ValueError(f"vertex type must be 1..6, got {kind}")

    def swapped_ab(self) -> "ModelParams":
        """Weights with the roles of wa and wb exchanged (t -> 1/t)."""
        return ModelParams(self.wb, self.wa, self.wc)

    def __repr__(self) -> str:  # pragma: no cover
        return f"ModelParams(wa={self.wa}, wb={self.wb}, wc={self.wc})"


ICE_POINT = ModelParams(1, 1, 1)
