"""Saddle-point analysis of the Lambda_{N,L} partition function.

The free-energy gain of starting the last path L rows lower is

    F(u) = S(xi_sp, eta_sp; u),   u = L/N,

with the action (l(x) = x ln x, Stirling form)

    S(xi, eta; u) = l(xi) - l(eta) - l(xi-eta) + l(u) - l(eta) - l(u-eta)
                    - 2 eta ln t + eta ln(t^2 - 2 delta t + 1) + SN(xi),

where SN(xi) is the large-size limit of (1/N) ln H_N^(xi N).  The saddle
solves in closed form:

    eta_sp = [-(xi+u) + sqrt((xi+u)^2 + 4 theta xi u)] / (2 theta),
    xi_sp  = r(z),  z = xi_sp / (xi_sp - eta_sp),
    xi_sp / u = z (t^2 - 2 delta t + 1) / ((t^2 z - 2 delta t + 1)(z - 1)).

The square-root branch is fixed by eta_sp -> 0 as u -> 0.  The theta -> 0
(free-fermion) limit eta = xi u / (xi + u) is the uniform limit of the
rationalized form used below, so no special casing is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.optimize import brentq

from .params import ModelParams
from .tangent import REvaluator, asm_evaluator, free_fermion_evaluator


def xlogx(x: float) -> float:
    return 0.0 if x == 0.0 else x * math.log(x)


def saddle_eta(u: float, xi: float, params: ModelParams) -> float:
    """eta_sp in the rationalized, cancellation-free form
    2 xi u / (sqrt((xi+u)^2 + 4 theta xi u) + xi + u)."""
    if u < 0:
        raise ValueError("u must be nonnegative")
    theta = float(params.theta)
    disc = (xi + u) ** 2 + 4.0 * theta * xi * u
    # disc >= (xi - u)^2 for theta >= -1, which positive weights guarantee
    return 2.0 * xi * u / (math.sqrt(disc) + xi + u)


def saddle_action(
    xi: float,
    eta: float,
    u: float,
    params: ModelParams,
    SN: Callable[[float], float],
) -> float:
    """The action S(xi, eta; u); SN supplies the boundary-correlation term."""
    if not (0.0 < eta < min(xi, u)):
        raise ValueError(f"need 0 < eta < min(xi, u), got xi={xi}, eta={eta}, u={u}")
    t = float(params.t)
    combo = float(params.weight_combo)
    return (
        xlogx(xi)
        - 2.0 * xlogx(eta)
        - xlogx(xi - eta)
        + xlogx(u)
        - xlogx(u - eta)
        - 2.0 * eta * math.log(t)
        + eta * math.log(combo)
        + SN(xi)
    )


# -------------------------------------------------- SN profiles (rate fns)


def sn_ice_point(xi: float) -> float:
    """lim (1/N) ln H_N^(xi N) at the ice point, from the refined ASM
    asymptotics: l(2-x) - l(1-x) + l(1+x) - l(x) - 3 ln 3 + 2 ln 2."""
    return (
        xlogx(2.0 - xi)
        - xlogx(1.0 - xi)
        + xlogx(1.0 + xi)
        - xlogx(xi)
        - 3.0 * math.log(3.0)
        + 2.0 * math.log(2.0)
    )


def sn_free_fermion(t: float) -> Callable[[float], float]:
    """Rate function of the binomial-type free-fermion refinement, with
    its maximum (value 0) at xi* = t^2/(1+t^2)."""
    xi_star = t * t / (1.0 + t * t)
    c = -xlogx(xi_star) - xlogx(1.0 - xi_star) + 2.0 * xi_star * math.log(t)

    def sn(xi: float) -> float:
        return -xlogx(xi) - xlogx(1.0 - xi) + 2.0 * xi * math.log(t) - c

    return sn


def sn_profile_for(r_eval: REvaluator, t: float = 1.0) -> Callable[[float], float]:
    if r_eval.label == "ice-point":
        return sn_ice_point
    if r_eval.label.startswith("free-fermion"):
        return sn_free_fermion(t)
    raise ValueError(f"no closed-form SN profile for {r_eval.label}")


# ---------------------------------------------------------- saddle solver


@dataclass(frozen=True)
class SaddleSolution:
    xi_sp: float
    eta_sp: float
    u: float
    z: float
    lam: float     # turn density l/N of the single-path analysis
    d_ratio: float  # d = lam / eta

    def __post_init__(self):
        assert self.z >= 1.0 and 0.0 <= self.eta_sp < self.xi_sp < 1.0 + 1e-12


def u_of_z(z: float, params: ModelParams, r_eval: REvaluator) -> float:
    """Invert the closed-form relation xi_sp/u = z P / (Q (z-1)) at xi=r(z)."""
    t = float(params.t)
    p = float(params.weight_combo)
    q = t * t * z - 2.0 * float(params.delta) * t + 1.0
    return r_eval(z) * q * (z - 1.0) / (z * p)


def saddle_from_z(z: float, params: ModelParams, r_eval: REvaluator) -> SaddleSolution:
    """Closed-form saddle data at spectral parameter z > 1."""
    xi = r_eval(z)
    u = u_of_z(z, params, r_eval)
    eta = saddle_eta(u, xi, params)
    omega = float(params.omega)
    d = omega / (z - 1.0 + omega)
    return SaddleSolution(xi_sp=xi, eta_sp=eta, u=u, z=z, lam=d * eta, d_ratio=d)


def saddle_from_u(u: float, params: ModelParams, r_eval: REvaluator) -> SaddleSolution:
    """Solve for z given u (monotone root find), then assemble the saddle."""
    if u == 0.0:
        return SaddleSolution(xi_sp=r_eval(1.0), eta_sp=0.0, u=0.0, z=1.0, lam=0.0, d_ratio=0.0)
    f = lambda z: u_of_z(z, params, r_eval) - u
    zmax = 2.0
    while f(zmax) < 0 and zmax < 1e12:
        zmax *= 2.0
    z = brentq(f, 1.0 + 1e-13, zmax, xtol=1e-14, rtol=1e-15)
    return saddle_from_z(z, params, r_eval)


def gradient_fd(
    sol: SaddleSolution,
    params: ModelParams,
    SN: Callable[[float], float],
    step: float = 1e-6,
) -> tuple[float, float]:
    """Central finite-difference gradient of the action at the saddle
    (5-point stencil, step 1e-6 by default)."""
    xi, eta, u = sol.xi_sp, sol.eta_sp, sol.u

    def s(x, e):
        return saddle_action(x, e, u, params, SN)

    def central(f):
        return (f(-2) - 8.0 * f(-1) + 8.0 * f(1) - f(2)) / (12.0 * step)

    dxi = central(lambda k: s(xi + k * step, eta))
    deta = central(lambda k: s(xi, eta + k * step))
    return dxi, deta


def free_energy(u: float, params: ModelParams, r_eval: REvaluator, SN) -> float:
    """F(u) = S at the saddle; 0 at u = 0 and increasing in u."""
    if u == 0.0:
        return 0.0
    sol = saddle_from_u(u, params, r_eval)
    return saddle_action(sol.xi_sp, sol.eta_sp, sol.u, params, SN)


def ice_point_saddle(z: float, params: ModelParams) -> SaddleSolution:
    return saddle_from_z(z, params, asm_evaluator())
