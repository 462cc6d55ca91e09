"""Command-line entry points: count, curve, sample, verify.

Exit codes: 0 success, 1 computation/verification failure, 2 usage error
(argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import counts as C
from .errors import SixVertexError
from .hexagon import AspectRatios, hexagon_envelope
from .model import LambdaNL, RefinedSquare, SquareDWBC, Triangoloid
from .params import ICE_POINT, ModelParams
from .render import (
    RenderSpec,
    arc_to_csv,
    atomic_write,
    lines_to_csv,
    render_configuration,
    render_stats_figure,
)
from .tangent import (
    ParametricArc,
    asm_evaluator,
    default_zgrid,
    envelope,
    finite_n_evaluator,
    free_fermion_evaluator,
    line_family,
    reflect_arc,
    slope_m,
)
from .triarc import triangoloid_arc, triangoloid_internal_guess


def _paper_frame(arc: ParametricArc) -> ParametricArc:
    """The alternative frame with x -> 1 - x."""
    out = ParametricArc(z=arc.z, x=1.0 - arc.x, y=arc.y.copy(), label=arc.label, frame="paper")
    out.experimental = arc.experimental
    return out


def _usage(msg: str) -> int:
    print(f"usage error: {msg}", file=sys.stderr)
    return 2


def cmd_count(args) -> int:
    if args.model == "asm":
        if args.n is None:
            return _usage("count --model asm requires --n")
        print(C.asm_count(args.n) if args.r is None else C.asm_refined(args.n, args.r))
    elif args.model == "hexagon":
        if None in (args.a, args.b, args.c):
            return _usage("count --model hexagon requires --a --b --c")
        print(C.macmahon(args.a, args.b, args.c))
    elif args.model == "triangoloid":
        if None in (args.a, args.b, args.c):
            return _usage("count --model triangoloid requires --a --b --c")
        if args.r is None:
            print(C.triangoloid_count(args.a, args.b, args.c))
        else:
            print(C.triangoloid_refined(args.a, args.b, args.c, args.r))
    elif args.model == "paths":
        if None in (args.x, args.y):
            return _usage("count --model paths requires --x --y")
        if args.corners is None:
            print(C.binomial(args.x + args.y, args.y))
        else:
            print(C.path_corner_count(args.x, args.y, args.corners))
    return 0


def _square_evaluator(args):
    delta, t = args.delta, args.t
    if abs(delta - 0.5) < 1e-12 and abs(t - 1.0) < 1e-12:
        return ICE_POINT, asm_evaluator()
    if abs(delta) < 1e-12:
        tq = Fraction(t).limit_denominator(10**6)
        params = ModelParams(tq.denominator, tq.numerator, _c_for_delta0(tq))
        return params, free_fermion_evaluator(t)
    if args.weights and args.sizes:
        wa, wb, wc = (Fraction(w) for w in args.weights.split(","))
        params = ModelParams(wa, wb, wc)
        from .enumeration import boundary_correlator

        polys = []
        for n in (int(s) for s in args.sizes.split(",")):
            ct = boundary_correlator(SquareDWBC(n), params)
            polys.append((n, ct.h_poly))
        return params, finite_n_evaluator(polys, label=f"finite-N {args.sizes}")
    raise SixVertexError(
        "generic delta needs --weights a,b,c and --sizes n1,n2,... for the "
        "finite-size extrapolation of r(z)"
    )


def _mirror_evaluator(r_eval, args):
    """r(z) of the t -> 1/t partner model (axis-mirror symmetry)."""
    if r_eval.label == "ice-point":
        return r_eval
    if r_eval.label.startswith("free-fermion"):
        return free_fermion_evaluator(1.0 / args.t)
    # finite-N: re-enumerate with the weight roles swapped
    from .enumeration import boundary_correlator

    wa, wb, wc = (Fraction(w) for w in args.weights.split(","))
    params = ModelParams(wb, wa, wc)
    polys = []
    for n in (int(s) for s in args.sizes.split(",")):
        polys.append((n, boundary_correlator(SquareDWBC(n), params).h_poly))
    return finite_n_evaluator(polys, label=f"finite-N mirrored {args.sizes}")


def _c_for_delta0(t: Fraction) -> Fraction:
    # delta = 0 needs wc^2 = wa^2 + wb^2; with wa=den, wb=num use the exact
    # hypotenuse when (den, num) is Pythagorean, else keep delta tiny
    wa, wb = t.denominator, t.numerator
    c2 = wa * wa + wb * wb
    r = int(np.sqrt(c2))
    if r * r == c2:
        return Fraction(r)
    return Fraction(r) + (c2 - r * r) / Fraction(2 * r)  # near-exact


def cmd_curve(args) -> int:
    grid = default_zgrid(args.points)
    arcs = []
    if args.geometry == "square":
        params, r_eval = _square_evaluator(args)
        # pad the grid with near-contact parameters so the written arc
        # reaches (1-kappa, 0) and (1, kappa) to high accuracy
        grid = np.concatenate([[1.0 + 1e-9], grid, [1e9]])
        arc = envelope(params, r_eval, grid)
        arcs.append(arc)
        if args.all_arcs:
            arcs.append(reflect_arc(arc, "main"))  # north-west, exact for all t
            # axis mirrors map t -> 1/t: build the partner arc, then mirror
            params_m = params.swapped_ab()
            r_m = _mirror_evaluator(r_eval, args)
            arc_m = envelope(params_m, r_m, grid)
            arcs.append(reflect_arc(arc_m, "mirror_x"))  # south-west
            arcs.append(reflect_arc(arc_m, "mirror_y"))  # north-east
        if args.lines_csv:
            lines = [line_family(z, params, r_eval) for z in grid]
            atomic_write(args.lines_csv, lines_to_csv(lines))
    elif args.geometry == "hexagon":
        ratios = AspectRatios(args.alpha, args.beta, args.gamma)
        arcs.append(hexagon_envelope(ratios))
    elif args.geometry == "triangoloid":
        ratios = AspectRatios(args.alpha, args.beta, args.gamma).normalized()
        for k in range(3):
            arcs.append(triangoloid_arc(ratios, k, grid))
        if args.internal_guess:
            guess, gap, predicted = triangoloid_internal_guess(ratios)
            arcs.append(guess)
            print(f"internal-guess endpoint gap {gap:.6f} (predicted {predicted:.6f})")
    base = args.out
    for arc in arcs:
        out_arc = _paper_frame(arc) if args.frame == "paper" and arc.frame == "unit" else arc
        path = f"{base}-{out_arc.label or 'arc'}.csv".replace(" ", "_")
        atomic_write(path, arc_to_csv(out_arc))
        print(f"wrote {path}")
    if args.svg:
        _write_curve_svg(arcs, args.svg)
        print(f"wrote {args.svg}")
    return 0


def _write_curve_svg(arcs, path):
    from .render import SvgCanvas

    spec = RenderSpec(scale=400, pad=20, dot_radius=1.0)
    allx = np.concatenate([a.x for a in arcs])
    ally = np.concatenate([a.y for a in arcs])
    w, h = float(allx.max() - min(0, allx.min())), float(ally.max())
    canvas = SvgCanvas(width_units=max(w, 1.0), height_units=max(h, 1.0), spec=spec)
    for a in arcs:
        canvas.polyline(list(zip(a.x, a.y)), "#333333", width=1.5)
    atomic_write(path, canvas.document())


def cmd_sample(args) -> int:
    from .sampler import cftp_sample, collect_stats, exact_sample_tiny

    overlays = []
    segments = []
    if args.geometry == "square":
        dom = SquareDWBC(args.n)
        rescale = float(args.n)
        if args.overlay:
            from .tangent import full_curve_arcs

            arc = envelope(ICE_POINT, asm_evaluator(), default_zgrid(200))
            overlays = full_curve_arcs(arc)
    elif args.geometry == "lambda":
        if args.refine is not None:
            dom = RefinedSquare(args.n, args.refine)
        else:
            dom = LambdaNL(args.n, args.l)
        rescale = float(args.n)
        if args.overlay:
            arc = envelope(ICE_POINT, asm_evaluator(), default_zgrid(200))
            overlays = [arc]
            if args.refine is not None:
                # tangent segment: from the south crossing (rho, 0) to the
                # tangency point at the saddle parameter z* with r(z*) = rho
                rho = args.refine / args.n
                z_star = rho * (2 - rho) / (1 - rho * rho)
                ev = asm_evaluator()
                m = slope_m(z_star, ICE_POINT)  # = z* - 1 at the ice point
                x_t = ev(z_star) + ev.derivative(z_star) * m
                y_t = ev.derivative(z_star) * m * m
                segments = [((rho, 0.0), (x_t, y_t))]
    elif args.geometry == "triangoloid":
        dom = Triangoloid(args.a, args.b, args.c)
        rescale = float(args.a + args.b + args.c)
        if args.overlay:
            ratios = AspectRatios(args.a, args.b, args.c).normalized()
            overlays = [triangoloid_arc(ratios, k) for k in range(3)]
    else:  # pragma: no cover
        raise SixVertexError(f"unknown geometry {args.geometry}")

    if args.samples > 1:
        st = collect_stats(dom, args.samples, seed=args.seed, threads=args.threads)
        svg = render_stats_figure(
            st.width, st.height, st.w5, st.w6, st.n_samples,
            overlays=overlays, segments=segments, rescale=rescale,
        )
    else:
        if isinstance(dom, Triangoloid):
            cfg = exact_sample_tiny(dom, args.seed)
        else:
            cfg = cftp_sample(dom, args.seed)
        if args.json:
            atomic_write(args.json, cfg.to_json())
            print(f"wrote {args.json}")
        svg = render_configuration(cfg, overlays=overlays, segments=segments, rescale=rescale)
    atomic_write(args.out, svg)
    print(f"wrote {args.out}")
    return 0


def cmd_correlator(args) -> int:
    """Exact Z and H^(r) of a small domain as JSON with decimal strings."""
    from .enumeration import boundary_correlator, correlator_record

    if args.geometry == "square":
        dom, label = SquareDWBC(args.n), f"SquareDWBC({args.n})"
    elif args.geometry == "lambda":
        dom, label = LambdaNL(args.n, args.l), f"LambdaNL({args.n},{args.l})"
    else:
        dom, label = (
            Triangoloid(args.a, args.b, args.c),
            f"Triangoloid({args.a},{args.b},{args.c})",
        )
    if args.weights:
        wa, wb, wc = (Fraction(w) for w in args.weights.split(","))
        params = ModelParams(wa, wb, wc)
    else:
        params = ICE_POINT
    table = boundary_correlator(dom, params, side=args.side)
    payload = json.dumps(correlator_record(label, params, table), indent=2)
    if args.out:
        atomic_write(args.out, payload)
        print(f"wrote {args.out}")
    else:
        print(payload)
    return 0


def cmd_verify(args) -> int:
    from .acceptance import run_suite

    ok = run_suite(args.suite, fast=args.fast)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sixvertex", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="exact enumeration counts")
    p.add_argument("--model", required=True, choices=["asm", "hexagon", "triangoloid", "paths"])
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)
    p.add_argument("--r", type=int, help="refinement position")
    p.add_argument("--corners", type=int)
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("curve", help="analytic arctic curves as CSV/SVG")
    p.add_argument("--geometry", required=True, choices=["square", "hexagon", "triangoloid"])
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--weights", help="rational weights a,b,c for finite-N r(z)")
    p.add_argument("--sizes", help="comma-separated N values for finite-N r(z)")
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", default="curve")
    p.add_argument("--svg")
    p.add_argument("--lines-csv")
    p.add_argument("--all-arcs", action="store_true")
    p.add_argument("--internal-guess", action="store_true")
    p.add_argument("--frame", choices=["unit", "paper"], default="unit")
    p.set_defaults(fn=cmd_curve)

    p = sub.add_parser("sample", help="exact samples rendered as SVG")
    p.add_argument("--geometry", required=True, choices=["square", "lambda", "triangoloid"])
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--refine", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--threads", type=int, default=2)
    p.add_argument("--overlay", action="store_true")
    p.add_argument("--out", default="sample.svg")
    p.add_argument("--json")
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("correlator", help="exact Z and H^(r) as JSON")
    p.add_argument("--geometry", required=True, choices=["square", "lambda", "triangoloid"])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--weights", help="rational weights a,b,c (default ice point)")
    p.add_argument("--side", default="south", choices=["south", "west"])
    p.add_argument("--out")
    p.set_defaults(fn=cmd_correlator)

    p = sub.add_parser("verify", help="run acceptance criteria")
    p.add_argument("--suite", default="all",
                   choices=["counts", "identities", "saddle", "envelope", "sampler", "gauge", "all"])
    p.add_argument("--fast", action="store_true", help="skip the long sampler criteria")
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SixVertexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
