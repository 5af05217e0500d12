"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 numeric non-convergence in a
non-skippable context.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .analytic import (
    TorusCoordinate,
    lambda_of_tau,
    monodromy_shift_0,
    monodromy_shift_1,
    periods,
    rho_tilde,
    tau_of_lambda,
)
from .duppoly import dup_apply, emit_terms, triple
from .errors import InvalidInput, LegHeightsError, NonConvergence
from .experiments import (
    persist_run,
    run_height_inequality,
    run_silverman_tate,
    run_specialization_ratio,
)
from .families import resolve_family
from .heights import neron_tate, weil_height
from .legendre import LegendreCurve, mul_n
from .projective import normalize_projective
from .torsion import TorusBox, count_roots_in_box, fiber_torsion_points


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"not a rational number: {text!r}") from exc


def _parse_samples(text: str) -> list[Fraction]:
    """Range 'a..b' (integer endpoints, inclusive) or comma list of rationals."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError as exc:
            raise InvalidInput(f"range endpoints must be integers: {text!r}") from exc
        if hi_i < lo_i:
            raise InvalidInput(f"empty range: {text!r}")
        return [Fraction(k) for k in range(lo_i, hi_i + 1)]
    return [_fraction(part) for part in text.split(",") if part.strip()]


def _cmd_weil(args) -> int:
    point = normalize_projective([_fraction(c) for c in args.coords])
    print(f"point {point}")
    print(f"weil_height {weil_height(point):.12f}")
    return 0


def _cmd_nt(args) -> int:
    lam = _fraction(args.lam)
    coords = [_fraction(c) for c in args.point.split(",")]
    if len(coords) == 2:
        coords.append(Fraction(1))
    if len(coords) != 3:
        raise InvalidInput("--point needs x,y or x,y,z")
    curve = LegendreCurve(lam)
    try:
        p = curve.point(*coords)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    est = neron_tate(p, args.tol)
    print(f"nt_height {est.value:.12f}")
    print(f"depth {est.depth}")
    print(f"error_bound {est.error_bound:.3e}")
    return 0


def _cmd_periods(args) -> int:
    lam = complex(float(_fraction(args.lam)))
    pp = periods(lam)
    print(f"omega1 {pp.omega1!r}")
    print(f"omega2 {pp.omega2!r}")
    print(f"tau {pp.tau!r}")
    return 0


def _cmd_lambda_check(args) -> int:
    n = args.grid
    worst = 0.0
    count = 0
    for i in range(n):
        for j in range(n):
            lam = complex(0.08 + 0.84 * i / max(1, n - 1), -0.42 + 0.84 * j / max(1, n - 1))
            if abs(lam) >= 0.999 or abs(1 - lam) >= 0.999:
                continue
            worst = max(worst, abs(lambda_of_tau(tau_of_lambda(lam)) - lam))
            count += 1
    print(f"points {count}")
    print(f"max |Lambda(T(lam)) - lam| {worst:.3e}")
    return 0


def _cmd_monodromy_check(args) -> int:
    rng = random.Random(args.seed)
    worst0 = worst1 = 0.0
    for _ in range(args.samples):
        tau = complex(rng.uniform(-0.9, 0.9), rng.uniform(0.7, 1.5))
        xi = TorusCoordinate([rng.random(), rng.random()])
        a = rho_tilde(xi, tau + 2).components[0]
        b = rho_tilde(monodromy_shift_0(xi), tau).components[0]
        worst0 = max(worst0, abs(a.x - b.x) + abs(a.y - b.y))
        c = rho_tilde(xi, tau / (-4 * tau + 1)).components[0]
        d = rho_tilde(monodromy_shift_1(xi), tau).components[0]
        worst1 = max(worst1, abs(c.x - d.x) + abs(c.y - d.y))
    print(f"samples {args.samples}")
    print(f"max residual around cusp 0: {worst0:.3e}")
    print(f"max residual around cusp 1: {worst1:.3e}")
    return 0


def _cmd_duppoly(args) -> int:
    if args.emit:
        sys.stdout.write(emit_terms(triple(args.level)))
        return 0
    # verify mode: compare against the group law on sample points
    rng = random.Random(1)
    checked = 0
    for _ in range(args.points):
        k = Fraction(rng.randrange(2, 40), rng.randrange(1, 7))
        if k in (1, -1):
            continue
        lam = 2 - 2 * k * k
        if lam in (0, 1):
            continue
        p = LegendreCurve(lam).point(2, 2 * k)
        if dup_apply(p, args.level) != mul_n(p, 2**args.level):
            print(f"MISMATCH at k={k}")
            return 1
        checked += 1
    print(f"verified [2^{args.level}] against the group law on {checked} points")
    return 0


def _cmd_torsion(args) -> int:
    lam = float(_fraction(args.lam))
    pts = fiber_torsion_points(lam, args.order)
    print(f"count {len(pts)}")
    for p in pts:
        if p.infinity:
            print("point infinity")
        else:
            print(f"point {p.x.real:+.12f}{p.x.imag:+.12f}j {p.y.real:+.12f}{p.y.imag:+.12f}j")
    return 0


def _cmd_count_roots(args) -> int:
    center = [_fraction(c) for c in args.center.split(",")]
    xi0 = TorusCoordinate([_fraction(c) for c in args.xi0.split(",")])
    box = TorusBox(center, _fraction(args.eps))
    roots = count_roots_in_box(box, xi0, args.n)
    print(f"count {len(roots)}")
    for r in roots:
        print("root " + ",".join(str(v) for v in r.entries))
    return 0


def _cmd_experiment(args) -> int:
    family = resolve_family(args.family)
    samples = _parse_samples(args.samples)
    params = {"samples": args.samples, "tolerance": args.tol, "family": args.family}
    if args.kind == "height-ineq":
        run = run_height_inequality(family, samples, args.tol)
        diag = {
            "empirical_c": run.empirical_c,
            "degenerate": run.degenerate,
            "skipped": run.skipped,
        }
        print(f"records {len(run.records)}")
        print(f"empirical_c {run.empirical_c:.6f}")
        if run.degenerate:
            print("degenerate section: all canonical heights below tolerance")
    elif args.kind == "silverman-tate":
        run = run_silverman_tate(family, samples, args.tol)
        diag = {
            "max_ratio": run.max_ratio,
            "first_quartile_max": run.first_quartile_max,
            "last_quartile_max": run.last_quartile_max,
            "skipped": run.skipped,
        }
        print(f"records {len(run.records)}")
        print(f"max_ratio {run.max_ratio:.6f}")
        print(f"first_quartile_max {run.first_quartile_max:.6f}")
        print(f"last_quartile_max {run.last_quartile_max:.6f}")
    else:
        run = run_specialization_ratio(family, samples, args.tol)
        diag = {
            "top_quartile_spread": run.top_quartile_spread,
            "limit_estimate": run.limit_estimate,
            "skipped": run.skipped,
        }
        print(f"records {len(run.records)}")
        print(f"top_quartile_spread {run.top_quartile_spread:.6f}")
        print(f"limit_estimate {run.limit_estimate:.6f}")
    if not run.records and samples:
        raise NonConvergence("every sample failed or was skipped")
    json_path, csv_path = persist_run(args.out, args.kind, family, params, run.records, diag)
    print(f"wrote {json_path}")
    print(f"wrote {csv_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="legheights",
        description="Legendre-family heights, periods, duplication polynomials, torsion",
    )
    ap.add_argument("--version", action="version", version=f"legheights {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weil", help="Weil height of a projective point")
    p.add_argument("coords", nargs="+", help="projective coordinates (rationals)")
    p.set_defaults(fn=_cmd_weil)

    p = sub.add_parser("nt", help="canonical height on a Legendre fiber")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--point", required=True, help="x,y or x,y,z (rationals)")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=_cmd_nt)

    p = sub.add_parser("periods", help="period pair and tau for lambda in Sigma")
    p.add_argument("--lambda", dest="lam", required=True)
    p.set_defaults(fn=_cmd_periods)

    p = sub.add_parser("lambda-check", help="max |Lambda(T(lam)) - lam| over a grid")
    p.add_argument("--grid", type=int, default=10)
    p.set_defaults(fn=_cmd_lambda_check)

    p = sub.add_parser("monodromy-check", help="cusp monodromy identities on random samples")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_monodromy_check)

    p = sub.add_parser("duppoly", help="emit or verify duplication polynomials")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--emit", action="store_true", help="print the term list")
    p.add_argument("--verify", action="store_true", help="check against the group law")
    p.add_argument("--points", type=int, default=25)
    p.set_defaults(fn=_cmd_duppoly)

    p = sub.add_parser("torsion", help="enumerate fiber torsion points analytically")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(fn=_cmd_torsion)

    p = sub.add_parser("count-roots", help="count N-th roots of xi0 in an open torus box")
    p.add_argument("--center", required=True, help="comma-separated box center")
    p.add_argument("--eps", required=True, help="half width (rational, <= 1/2)")
    p.add_argument("--xi0", required=True, help="comma-separated target")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_count_roots)

    p = sub.add_parser("experiment", help="run a height experiment sweep")
    p.add_argument("kind", choices=("height-ineq", "silverman-tate", "specialization"))
    p.add_argument("--family", required=True, help="builtin:x2 or a JSON family file")
    p.add_argument("--samples", required=True, help="a..b (integers) or comma list")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(fn=_cmd_experiment)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InvalidInput, ValueError, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonConvergence as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return 3
    except LegHeightsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
