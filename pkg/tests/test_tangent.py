"""Tangent-line families, envelopes, saddle points, hexagon, triangoloid."""

import math
import random

import numpy as np
import pytest

from sixvertex.counts import asm_refined_probability
from sixvertex.enumeration import boundary_correlator
from sixvertex.errors import EmptySequence, NonPositiveZ, SingularSystem
from sixvertex.hexagon import (
    AspectRatios,
    hexagon_corners,
    hexagon_ellipse_residual,
    hexagon_envelope,
    hexagon_family,
    hexagon_saddle_eta,
    hexagon_saddle_points,
)
from sixvertex.model import SquareDWBC
from sixvertex.params import ICE_POINT, ModelParams
from sixvertex.poly import Polynomial
from sixvertex.saddle import (
    free_energy,
    gradient_fd,
    saddle_action,
    saddle_eta,
    saddle_from_u,
    saddle_from_z,
    sn_free_fermion,
    sn_ice_point,
)
from sixvertex.tangent import (
    Line,
    asm_evaluator,
    default_zgrid,
    envelope,
    envelope_of_coefficients,
    finite_n_evaluator,
    free_fermion_evaluator,
    line_family,
    local_criterium_check,
    r_asm,
    r_finite_n,
    r_free_fermion,
    reflect_arc,
    slope_m,
    slope_m_prime,
    support_line_residuals,
)
from sixvertex.triarc import (
    south_contact,
    tri_line_family,
    tri_r,
    tri_zeta,
    triangoloid_arc,
    triangoloid_evaluator,
    triangoloid_internal_guess,
)

FF_345 = ModelParams(3, 4, 5)  # exactly delta = 0, t = 4/3


# ------------------------------------------------------------------ r(z)


def test_r_asm_values():
    assert abs(r_asm(1.0) - 0.5) < 1e-15
    assert abs(r_asm(3.0) - (math.sqrt(7) - 1) / 2) < 1e-15
    assert abs(r_asm(1e12) - 1.0) < 1e-10
    ev = asm_evaluator()
    h = 1e-6
    for z in (1.0, 1.7, 4.0, 50.0):
        fd = (r_asm(z + h) - r_asm(z - h)) / (2 * h)
        assert abs(ev.derivative(z) - fd) < 1e-8


def test_r_free_fermion_values():
    assert r_free_fermion(1.0, 1.0) == 0.5
    assert r_free_fermion(1.0, 2.0) == 0.8
    assert abs(r_free_fermion(1e9, 1.0) - 1.0) < 1e-8


def test_r_monotone_nondecreasing():
    zs = default_zgrid(200)
    for ev in (asm_evaluator(), free_fermion_evaluator(1.0), free_fermion_evaluator(2.0),
               triangoloid_evaluator(AspectRatios(0.5, 0.3, 0.2))):
        vals = [ev(z) for z in zs]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:])), ev.label
        assert abs(vals[0] - ev.at_one) < 1e-2
        assert vals[-1] <= ev.at_infinity + 1e-6


def _ice_hpolys(ns):
    return [(n, Polynomial([asm_refined_probability(n, r) for r in range(1, n + 1)])) for n in ns]


def test_r_finite_n_ice_point():
    polys = _ice_hpolys(range(3, 6))
    assert abs(r_finite_n(2.0, polys) - r_asm(2.0)) < 0.05
    assert abs(r_finite_n(1.0, polys) - 0.5) < 1e-12
    with pytest.raises(NonPositiveZ):
        r_finite_n(-1.0, polys)
    with pytest.raises(EmptySequence):
        r_finite_n(2.0, polys[:1])


def test_r_finite_n_free_fermion_exact_weights():
    # (3,4,5) sits exactly on delta = 0 with t = 4/3; brute-force h_N
    polys = []
    for n in range(3, 7):
        ct = boundary_correlator(SquareDWBC(n), FF_345)
        polys.append((n, ct.h_poly))
    t = float(FF_345.t)
    for z in (1.0, 2.0, 5.0):
        assert abs(r_finite_n(z, polys) - r_free_fermion(z, t)) < 0.05


def test_r_finite_n_free_fermion_binomial_t1():
    # at delta=0, t=1 the boundary correlation is exactly binomial
    from sixvertex.counts import binomial
    from fractions import Fraction

    polys = []
    for n in range(3, 7):
        H = [Fraction(binomial(n - 1, r - 1), 2 ** (n - 1)) for r in range(1, n + 1)]
        polys.append((n, Polynomial(H)))
    for z in (1.0, 2.0, 5.0):
        assert abs(r_finite_n(z, polys) - r_free_fermion(z, 1.0)) < 0.05


def test_r_finite_n_monotone_convergence():
    # |r_N - r_asm| decreases across N = 3..6 (finite-size convergence)
    for z in (1.5, 2.0, 4.0):
        errs = []
        for n in range(3, 7):
            poly = _ice_hpolys([n])[0][1]
            rn = (1.0 / n) * z * poly.derivative()(z) / poly(z)
            errs.append(abs(rn - r_asm(z)))
        assert all(b < a for a, b in zip(errs, errs[1:]))


# ------------------------------------------------------------------ slope


def test_slope_examples():
    assert slope_m(1.0, ICE_POINT) == 0.0
    assert abs(slope_m(2.0, ICE_POINT) - 1.0) < 1e-15  # m(z) = z - 1 at ice point
    t1 = ModelParams(1, 1, "99/70")  # delta ~ 0, t = 1
    for z in (1.5, 3.0):
        approx = (z - 1) * (z + 1) / (2 * z)
        assert abs(slope_m(z, ModelParams(3, 4, 5).swapped_ab().swapped_ab()) - slope_m(z, FF_345) * 0 - slope_m(z, FF_345)) >= 0  # smoke
    # delta=0, t=1 closed form via near-free-fermion rational weights
    for z in (1.5, 3.0, 10.0):
        m345 = slope_m(z, FF_345)
        t = 4.0 / 3.0
        want = (z - 1) * (t * t * z + 1) / (z * (t * t + 1))
        assert abs(m345 - want) < 1e-12


def test_slope_monotone_increasing():
    for params in (ICE_POINT, FF_345, ModelParams(1, 2, 3), ModelParams(5, 3, 4)):
        zs = default_zgrid(300)
        ms = [slope_m(z, params) for z in zs]
        assert all(b > a for a, b in zip(ms, ms[1:]))
        h = 1e-6
        for z in (1.3, 2.0, 7.0):
            fd = (slope_m(z + h, params) - slope_m(z - h, params)) / (2 * h)
            assert abs(slope_m_prime(z, params) - fd) < 1e-6


def test_local_criterium():
    assert local_criterium_check(2.0, ICE_POINT) <= 1e-12
    assert local_criterium_check(5.0, FF_345) <= 1e-12
    assert local_criterium_check(1.0 + 1e-9, ModelParams(1, 2, 3)) <= 1e-9
    rng = random.Random(3)
    for _ in range(25):
        params = ModelParams(rng.randint(1, 9), rng.randint(1, 9), rng.randint(1, 9))
        z = 1.0 + 10 ** rng.uniform(-3, 3)
        assert local_criterium_check(z, params) <= 1e-9 * max(1.0, slope_m(z, params))


# ----------------------------------------------------------------- saddle


def test_saddle_eta_limits():
    assert saddle_eta(0.0, 0.7, ICE_POINT) == 0.0
    # theta = 0 at the ice point: eta = xi u / (xi + u)
    assert abs(saddle_eta(2.0, 0.7, ICE_POINT) - 0.7 * 2 / 2.7) < 1e-15
    # theta -> 0 limit equals the quadratic-root limit for small theta
    p_small = ModelParams(1, 1000001, 1000000)  # theta tiny positive
    xi, u = 0.6, 1.7
    assert abs(saddle_eta(u, xi, p_small) - xi * u / (xi + u)) < 1e-4
    # monotone increase in u
    vals = [saddle_eta(u, 0.9, ModelParams(1, 2, 3)) for u in np.linspace(0, 100, 300)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 0.9


def test_saddle_gradients_vanish_ice_point():
    for z in (1.5, 2.0, 8.0):
        sol = saddle_from_z(z, ICE_POINT, asm_evaluator())
        assert abs(sol.z - sol.xi_sp / (sol.xi_sp - sol.eta_sp)) < 1e-10
        dxi, deta = gradient_fd(sol, ICE_POINT, sn_ice_point)
        assert abs(dxi) < 1e-9 and abs(deta) < 1e-9


def test_saddle_gradients_random_regime():
    # weights drawn with t in [1/3, 3] keep the saddle away from the
    # degenerate simplex corner where finite differences lose accuracy
    rng = random.Random(11)
    done = 0
    while done < 50:
        wa, wb, wc = (rng.randint(1, 5) for _ in range(3))
        params = ModelParams(wa, wb, wc)
        t = float(params.t)
        if not (1.0 / 3.0 <= t <= 3.0):
            continue
        r_eval = free_fermion_evaluator(t)
        u = 10 ** rng.uniform(-1.3, 0.7)
        sol = saddle_from_u(u, params, r_eval)
        assert abs(sol.z - sol.xi_sp / (sol.xi_sp - sol.eta_sp)) < 1e-9 * sol.z
        dxi, deta = gradient_fd(sol, params, sn_free_fermion(t))
        assert abs(dxi) < 1e-9 and abs(deta) < 1e-9
        done += 1


def test_saddle_xi_u_identity():
    # xi_sp/u from the saddle system equals z(t^2-2dt+1)/((t^2 z-2dt+1)(z-1))
    rng = random.Random(5)
    for _ in range(20):
        params = ModelParams(rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5))
        z = 1.0 + 10 ** rng.uniform(-2, 2)
        sol = saddle_from_u(saddle_from_z(z, params, asm_evaluator()).u, params, asm_evaluator())
        t, d = float(params.t), float(params.delta)
        combo = t * t - 2 * d * t + 1
        want = sol.z * combo / ((t * t * sol.z - 2 * d * t + 1) * (sol.z - 1))
        assert abs(sol.xi_sp / sol.u - want) < 1e-12 * want
        assert abs(sol.z - z) < 1e-7 * z  # round trip through the u-root


def test_free_energy_increasing():
    us = np.linspace(0.0, 3.0, 13)
    vals = [free_energy(u, ICE_POINT, asm_evaluator(), sn_ice_point) for u in us]
    assert vals[0] == 0.0
    assert all(np.isfinite(vals))
    assert all(b > a for a, b in zip(vals, vals[1:]))


# --------------------------------------------------------------- envelope


def test_envelope_square_ice_endpoints_and_support():
    grid = default_zgrid(200)
    arc = envelope(ICE_POINT, asm_evaluator(), grid)
    # endpoints approach (1/2, 0) and (1, 1/2)
    assert abs(arc.x[0] - 0.5) < 1e-3 and abs(arc.y[0]) < 1e-5
    assert abs(arc.x[-1] - 1.0) < 1e-3 and abs(arc.y[-1] - 0.5) < 1e-3
    lines = [line_family(z, ICE_POINT, asm_evaluator()) for z in grid]
    touch, slack = support_line_residuals(arc, lines)
    assert touch <= 1e-6
    assert slack <= 1e-6


def test_envelope_square_ice_known_ellipse():
    # frozen oracle: eliminating z analytically gives the SE-arc ellipse
    # 4x^2 + 4y^2 + 4xy - 4x - 8y + 1 = 0
    arc = envelope(ICE_POINT, asm_evaluator(), default_zgrid(100))
    res = 4 * arc.x**2 + 4 * arc.y**2 + 4 * arc.x * arc.y - 4 * arc.x - 8 * arc.y + 1
    assert np.max(np.abs(res)) < 1e-9


def test_envelope_free_fermion_circle_t1():
    # delta=0, t=1: the arctic circle (x-1/2)^2 + (y-1/2)^2 = 1/4
    params = ModelParams(1, 1, 1)  # slope uses only delta, t -> fake via direct form
    ev = free_fermion_evaluator(1.0)
    # build coefficients directly: m(z) = (z-1)(z+1)/(2z) at delta=0, t=1
    def fam(z):
        m = (z - 1) * (z + 1) / (2 * z)
        return (m, -1.0, -m * ev(z))

    arc = envelope_of_coefficients(fam, default_zgrid(150))
    res = (arc.x - 0.5) ** 2 + (arc.y - 0.5) ** 2 - 0.25
    assert np.max(np.abs(res)) < 1e-8


def test_envelope_numeric_matches_analytic():
    grid = default_zgrid(80, zmax=100.0)
    a1 = envelope(FF_345, free_fermion_evaluator(4.0 / 3.0), grid, analytic=True)
    a2 = envelope(FF_345, free_fermion_evaluator(4.0 / 3.0), grid, analytic=False)
    assert np.max(np.abs(a1.x - a2.x)) < 1e-8
    assert np.max(np.abs(a1.y - a2.y)) < 1e-8


def test_envelope_singular_family():
    with pytest.raises(SingularSystem):
        envelope_of_coefficients(lambda z: (1.0, 1.0, -1.0), [1.5, 2.0, 3.0])


def test_reflected_arcs():
    from sixvertex.tangent import full_curve_arcs

    arc = envelope(ICE_POINT, asm_evaluator(), default_zgrid(50))
    main = reflect_arc(arc, "main")
    anti = reflect_arc(arc, "anti")
    assert np.allclose(main.x, arc.y)
    assert np.allclose(anti.x, 1 - arc.y)
    # the SE arc is anti-diagonal symmetric: 'anti' maps it into itself
    res = 4 * anti.x**2 + 4 * anti.y**2 + 4 * anti.x * anti.y - 4 * anti.x - 8 * anti.y + 1
    assert np.max(np.abs(res)) < 1e-9
    # the four arcs cover all four contact points
    arcs = full_curve_arcs(arc)
    endpoints = set()
    for a in arcs:
        endpoints.add((round(a.x[0], 2), round(a.y[0], 2)))
        endpoints.add((round(a.x[-1], 2), round(a.y[-1], 2)))
    assert {(0.5, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 0.5)} <= endpoints


# ---------------------------------------------------------------- hexagon


def test_hexagon_family_side_lines():
    r = AspectRatios(1.3, 0.8, 0.6)
    a, b, g = r.alpha, r.beta, r.gamma
    A, B, C = hexagon_family(0.0, r)
    # xi=0: the line y = (sqrt3/2)(-2x - a - b) carrying the gamma side
    for x in (-1.0, 0.3, 2.0):
        y = (math.sqrt(3) / 2) * (-2 * x - a - b)
        assert abs(A * x + B * y + C) < 1e-12
    A, B, C = hexagon_family(a, r)
    for x in (-1.0, 0.3, 2.0):
        y = (math.sqrt(3) / 2) * (2 * x + b + g)
        assert abs(A * x + B * y + C) < 1e-12


def test_hexagon_family_through_saddle_points():
    r = AspectRatios(0.9, 1.4, 0.5)
    for xi in np.linspace(0.05, r.alpha - 0.05, 9):
        A, B, C = hexagon_family(xi, r)
        for (px, py) in hexagon_saddle_points(xi, r):
            assert abs(A * px + B * py + C) < 1e-12


def test_hexagon_saddle_eta_range():
    r = AspectRatios(1.0, 2.0, 0.5)
    etas = [hexagon_saddle_eta(x, r) for x in np.linspace(0, r.alpha, 50)]
    assert etas[0] == 0.0
    assert abs(etas[-1] - r.alpha * r.gamma / (r.beta + r.gamma)) < 1e-12
    assert all(b >= a for a, b in zip(etas, etas[1:]))


def test_hexagon_envelope_on_ellipse():
    rng = random.Random(2)
    for _ in range(20):
        r = AspectRatios(rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0))
        arc = hexagon_envelope(r)
        worst = max(
            abs(hexagon_ellipse_residual(x, y, r)) for x, y in zip(arc.x, arc.y)
        )
        assert worst <= 1e-8


def test_hexagon_symmetric_inscribed_circle():
    r = AspectRatios(1.0, 1.0, 1.0)
    A, B, C = hexagon_family(0.5, r)
    dist = abs(C) / math.hypot(A, B)
    inradius = math.sqrt(3) / 2.0  # apothem of the unit-side regular hexagon
    assert abs(dist - inradius) < 1e-9
    arc = hexagon_envelope(r)
    assert np.max(np.abs(np.hypot(arc.x, arc.y) - inradius)) < 1e-9


def test_hexagon_center_and_corners_signs():
    for r in (AspectRatios(1, 1, 1), AspectRatios(0.7, 1.3, 0.4)):
        assert hexagon_ellipse_residual(0.0, 0.0, r) > 0
        for (cx, cy) in hexagon_corners(r):
            assert hexagon_ellipse_residual(cx, cy, r) < 0


# ------------------------------------------------------------- triangoloid


def test_tri_r_limits():
    r = AspectRatios(0.5, 0.3, 0.2)
    assert abs(tri_r(1.0, r) - south_contact(r)) < 1e-14
    assert abs(south_contact(r) - (0.5 + 0.3 * 0.2 / 0.7)) < 1e-15
    # z -> oo limit 1 + beta via the w = 1/z tail
    for z in (1e6, 1e9):
        assert abs(tri_r(z, r) - (1.0 + r.beta)) < 2.0 / z ** 0.5
    assert abs(tri_r(1e9, r) - 1.3) < 1e-4


def test_triangoloid_arc_equal_ratios_is_scaled_asm_arc():
    # alpha=beta=gamma: arc0 equals the square's ice arc scaled by 1+beta
    r = AspectRatios(1.0, 1.0, 1.0).normalized()
    grid = default_zgrid(200)
    tri = triangoloid_arc(r, 0, grid)
    sq = envelope(ICE_POINT, asm_evaluator(), grid)
    s = 1.0 + r.beta
    assert np.max(np.abs(tri.x - s * sq.x)) < 1e-6
    assert np.max(np.abs(tri.y - s * sq.y)) < 1e-6


def test_triangoloid_arc_endpoints():
    r = AspectRatios(0.52, 0.33, 0.15)
    grid = 1.0 + np.geomspace(1e-9, 1e9, 300)
    arc = triangoloid_arc(r, 0, grid)
    kappa = south_contact(r)
    assert abs(arc.x[0] - kappa) < 1e-7
    assert abs(arc.y[0]) < 1e-7
    assert abs(arc.x[-1] - (1.0 + r.beta)) < 1e-7


def test_triangoloid_arc_is_envelope_of_its_lines():
    r = AspectRatios(0.5, 0.3, 0.2)
    grid = default_zgrid(120, zmax=100.0)
    arc = triangoloid_arc(r, 0, grid)

    def fam(z):
        ln = tri_line_family(z, r)
        return ln.coefficients()

    env = envelope_of_coefficients(fam, grid)
    assert np.max(np.abs(env.x - arc.x)) < 1e-6
    assert np.max(np.abs(env.y - arc.y)) < 1e-6


def test_triangoloid_arc_convex_and_inside():
    r = AspectRatios(0.52, 0.33, 0.15)  # the (0.7,0.45,0.2)/1.35 geometry
    arc = triangoloid_arc(r, 0, default_zgrid(200))
    # inside the assembled domain
    assert np.all(arc.y >= -1e-9)
    assert np.all(arc.x <= 1.0 + r.beta + 1e-9)
    # convexity: cross products of consecutive segment vectors keep a sign
    dx, dy = np.diff(arc.x), np.diff(arc.y)
    cross = dx[:-1] * dy[1:] - dy[:-1] * dx[1:]
    assert np.all(cross >= -1e-12) or np.all(cross <= 1e-12)


def test_triangoloid_other_arcs_share_contacts():
    r = AspectRatios(0.5, 0.3, 0.2)
    grid = 1.0 + np.geomspace(1e-9, 1e9, 200)
    a0 = triangoloid_arc(r, 0, grid)
    a1 = triangoloid_arc(r, 1, grid)
    a2 = triangoloid_arc(r, 2, grid)
    # arc1 starts at arc0's east contact and ends on the north side
    assert abs(a1.x[0] - a0.x[-1]) < 1e-6 and abs(a1.y[0] - a0.y[-1]) < 1e-6
    assert abs(a1.y[-1] - (1.0 + r.alpha)) < 1e-6
    # arc2 ends at arc0's south contact and starts on the west side
    assert abs(a2.x[-1] - a0.x[0]) < 1e-6 and abs(a2.y[-1]) < 1e-6
    assert abs(a2.x[0]) < 1e-6


def test_triangoloid_internal_guess_gap():
    # gamma -> 0: the guess closes onto the known internal arcs exactly
    r0 = AspectRatios(0.5, 0.5, 0.0)
    arc, gap, predicted = triangoloid_internal_guess(r0)
    assert arc.experimental
    assert "EXPERIMENTAL" in arc.label
    assert gap < 1e-12 and predicted == 0.0
    # small gamma: gap matches gamma(1 - a b)/((a+g)(b+g)) within 5%
    g = 0.02
    a = b = (1.0 - g) / 2.0
    arc, gap, predicted = triangoloid_internal_guess(AspectRatios(a, b, g))
    assert predicted > 0
    assert abs(gap - predicted) / predicted < 0.05


def test_tri_zeta_gamma_zero_jump():
    # at gamma = 0 the last summand degenerates to a sign function with a
    # jump at z = 1/beta
    beta = 0.4
    r = AspectRatios(1.0 - beta, beta, 0.0)
    zc = 1.0 / beta
    below = tri_zeta(zc - 1e-9, r)
    above = tri_zeta(zc + 1e-9, r)
    assert abs((below - above) - beta) < 1e-6
