"""Experiment driver.

    latshell count-shell --body ball --dim 2 --R 5 --delta 0
    latshell preset sharpness-d2 --out runs/sharpness

Each run writes a CSV table (``#`` metadata lines, header, rows) and a flat JSON
summary. Exit status: 0 pass, 1 tolerance failure, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__, analysis, counting, curvature, energy, geometry, phase
from ._exact import as_rational
from ._parallel import ENV_WORKERS, resolve_workers
from .errors import InvalidArgument, LatshellError

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MULLER = {3: Fraction(20, 43), 4: Fraction(6, 17)}


class UsageError(Exception):
    pass


def fmt(v):
    """Fixed formatting: integers in full, floats to 12 significant digits."""
    if isinstance(v, bool) or v is None:
        return "" if v is None else str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (str, int)):
        return v
    if isinstance(v, float):
        return float(format(v, ".12g")) if math.isfinite(v) else str(v)
    if isinstance(v, Fraction):
        return fmt(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _rationals(values, name):
    try:
        return [as_rational(v) for v in values]
    except InvalidArgument as exc:
        raise UsageError(f"--{name}: {exc}") from exc


def _grid_values(values, name):
    """Rationals, with 'start:stop:step' integer ranges expanded."""
    out = []
    for v in values:
        if ":" in str(v):
            out.extend(Fraction(x) for x in _int_grid([v], name))
        else:
            out.extend(_rationals([v], name))
    return out


def _parse_list(text, name):
    if isinstance(text, (list, tuple)):
        return list(text)
    return [t for t in str(text).replace(";", ",").split(",") if t.strip()]


def _int_grid(values, name):
    """Accept explicit integers or a single 'start:stop:step' range (stop inclusive)."""
    out = []
    for v in values:
        v = str(v)
        if ":" in v:
            parts = v.split(":")
            if len(parts) != 3:
                raise UsageError(f"--{name}: ranges are start:stop:step, got {v!r}")
            a, b, c = (int(p) for p in parts)
            if c <= 0:
                raise UsageError(f"--{name}: range step must be positive")
            out.extend(range(a, b + 1, c))
        else:
            try:
                out.append(int(v))
            except ValueError as exc:
                raise UsageError(f"--{name}: expected integers, got {v!r}") from exc
    return out


def _body(args):
    if isinstance(args.body, dict):
        return geometry.body_from_dict(args.body)
    if args.body == "ball":
        return geometry.ball(args.dim)
    if args.body == "pball":
        if args.p is None:
            raise UsageError("--p is required for --body pball")
        return geometry.pball(args.p, args.dim)
    if args.body == "ellipsoid":
        if args.matrix is None:
            raise UsageError("--matrix is required for --body ellipsoid")
        rows = [r for r in str(args.matrix).split(";") if r.strip()] \
            if not isinstance(args.matrix, list) else args.matrix
        matrix = [[int(v) for v in _parse_list(r, "matrix")] for r in rows]
        return geometry.ellipsoid(matrix)
    raise UsageError(f"--body: unknown kind {args.body!r}")


def _phase(args):
    if isinstance(args.phase, dict):
        return phase.phase_from_dict(args.phase)
    if args.phase == "parabolic":
        return phase.parabolic(args.dim)
    if args.phase == "diff_gauge":
        return phase.difference_gauge(_body(args))
    raise UsageError(f"--phase: unknown kind {args.phase!r}")


def _add_body(p):
    p.add_argument("--body", default="ball", help="ball | ellipsoid | pball (or an object in --config)")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--p", type=int, default=None, help="even exponent for pball")
    p.add_argument("--matrix", default=None, help="ellipsoid matrix rows, e.g. '1,0;0,4'")


# ---------------------------------------------------------------------------
# handlers return (experiment, params, header, rows, results, passed)

def cmd_count_shell(args):
    body = _body(args)
    Rs = _grid_values(args.R, "R")
    delta = _rationals([args.delta], "delta")[0]
    counter = counting.shell_count_fiber if args.method == "fiber" else counting.shell_count_brute
    header = ["R", "delta", "convention", "count", "method", "points_examined"]
    rows = []
    for R in Rs:
        res = counter(counting.ShellQuery(body, R, delta, args.convention), workers=args.workers)
        rows.append([R, delta, args.convention, res.count, res.method, res.points_examined,
                     res.wall_time])
    params = {"body": geometry.body_to_dict(body), "R": Rs, "delta": delta,
              "convention": args.convention, "method": args.method}
    return "count-shell", params, header, rows, {"n_rows": len(rows)}, True


def cmd_count_pairs(args):
    phi = _phase(args)
    qs = _grid_values(args.q, "q")
    deltas = _rationals(args.delta, "delta")
    C = _rationals([args.C], "C")[0]
    counter = (counting.pair_count_diff_weight if args.method == "diff_weight"
               else counting.pair_count_brute)
    d = phi.dim
    header = ["q", "delta", "C", "count", "normalized", "bound", "ratio", "exact_box", "method"]
    rows, results, passed = [], {}, True
    for delta in deltas:
        grid = []
        for q in qs:
            res = counter(counting.PairQuery(phi, q, delta, C, args.convention), workers=args.workers)
            norm = res.count / float(q) ** d
            bound = counting.theorem_bound(q, delta, d, phi.beta)
            rows.append([q, delta, C, res.count, norm, bound, norm / bound, res.exact_box,
                         res.method, res.wall_time])
            grid.append((float(q), norm, bound))
        scan = analysis.bound_ratio_scan(grid)
        entry = {"max_ratio": scan.max_ratio, "argmax_q": scan.argmax,
                 "first_half_max": scan.first_half_max, "second_half_max": scan.second_half_max}
        ok = scan.second_half_max <= args.half_growth * scan.first_half_max
        kept, dropped = analysis.drop_nonpositive([(q, n) for q, n, _ in grid])
        if len(kept) >= 3:
            fit = analysis.fit_exponent(kept)
            entry.update(slope=fit.slope, slope_stderr=fit.stderr, r_squared=fit.r_squared)
        entry["dropped_zero_rows"] = dropped
        if args.slope_delta is not None and as_rational(args.slope_delta) == delta:
            if "slope" not in entry:
                raise UsageError("slope check requested but fewer than 3 nonzero rows")
            entry["slope_target"] = args.slope_target
            entry["slope_ok"] = abs(entry["slope"] - args.slope_target) <= args.slope_tol
            ok &= entry["slope_ok"]
        entry["pass"] = ok
        passed &= ok
        results[fmt(delta)] = entry
    params = {"phase": phase.phase_to_dict(phi), "q": qs, "delta": deltas, "C": C,
              "convention": args.convention, "method": args.method, "half_growth": args.half_growth}
    return "count-pairs", params, header, rows, results, passed


def cmd_discrepancy_scan(args):
    body = _body(args)
    Rs = _grid_values(args.R, "R")
    d = body.dim
    if args.alpha is not None:
        alpha = _rationals([args.alpha], "alpha")[0]
    elif d in MULLER:
        alpha = MULLER[d]
    elif d >= 5:
        alpha = Fraction(d + 4, d * d + d + 2)
    else:
        raise UsageError("--alpha is required for d = 2")
    expo = d - 2 + float(alpha)
    vol = geometry.volume(body)
    header = ["R", "N", "volume_term", "D", "abs_ratio"]
    rows, grid = [], []
    for R in Rs:
        res = counting.ball_count(body, R, workers=args.workers)
        vterm = vol * float(R) ** d
        D = res.count - vterm
        ratio = abs(D) / float(R) ** expo
        rows.append([R, res.count, vterm, D, ratio, res.wall_time])
        grid.append((float(R), abs(D)))
    max_ratio = max(r[4] for r in rows)
    kept, dropped = analysis.drop_nonpositive(grid)
    fit = analysis.fit_exponent(kept)
    passed = max_ratio <= args.max_ratio and fit.slope <= args.max_slope
    results = {"exponent": expo, "max_ratio": max_ratio, "slope": fit.slope,
               "slope_stderr": fit.stderr, "dropped_zero_rows": dropped,
               "max_ratio_limit": args.max_ratio, "max_slope_limit": args.max_slope}
    params = {"body": geometry.body_to_dict(body), "R": Rs, "alpha": alpha}
    return "discrepancy-scan", params, header, rows, results, passed


def cmd_ma_check(args):
    phi = _phase(args)
    scheme = curvature.FDScheme(args.h, args.order)
    scan = curvature.LevelSetScan(phi, args.t, args.samples, args.seed, args.thickness,
                                  args.axis_samples)
    rep = curvature.certify_level_set(scan, scheme, args.floor)
    header = ["t", "min_abs_det", "min_grad_x_norm", "min_grad_y_norm", "n_accepted",
              "hypothesis_pass"]
    rows = [[args.t, rep.min_abs_det, rep.min_grad_x_norm, rep.min_grad_y_norm,
             rep.n_accepted, rep.hypothesis_pass, None]]
    results = rep.as_dict()
    results["expect"] = args.expect
    params = {"phase": phase.phase_to_dict(phi), "t": args.t, "samples": args.samples,
              "seed": args.seed, "thickness": args.thickness, "axis_samples": args.axis_samples,
              "scheme": scheme.as_dict(), "floor": args.floor}
    return "ma-check", params, header, rows, results, rep.hypothesis_pass == (args.expect == "pass")


def cmd_energy_scan(args):
    alpha = _rationals(_parse_list(args.alpha, "alpha"), "alpha") if args.alpha \
        else [Fraction(1)] * args.dim
    qs = _int_grid(args.q, "q")
    C = _rationals([args.C], "C")[0]
    header = ["q", "s", "E", "ratio_to_first"]
    rows, results, passed = [], {}, True
    for s in args.s:
        rep = energy.energy_scan(args.dim, alpha, C, s, qs, workers=args.workers)
        for (q, E, _), r in zip(rep.rows, rep.meta["ratio_to_first"]):
            rows.append([q, s, E, r, None])
        ok = abs(rep.fitted_slope) <= args.max_slope
        if args.max_ratio is not None:
            ok &= rep.meta["max_min_ratio"] <= args.max_ratio
        results[fmt(float(s))] = {"slope": rep.fitted_slope, "slope_stderr": rep.slope_stderr,
                                  "max_min_ratio": rep.meta["max_min_ratio"], "pass": ok}
        passed &= ok
    params = {"dim": args.dim, "alpha": alpha, "C": C, "s": args.s, "q": qs,
              "max_slope": args.max_slope, "max_ratio": args.max_ratio,
              "diagonal": "excluded"}
    return "energy-scan", params, header, rows, results, passed


def cmd_sharpness_demo(args):
    d = args.dim
    ts = _int_grid(args.t, "t")
    C = _rationals([args.C], "C")[0]
    beta = Fraction(2 * d, d + 1)
    header = ["t", "q", "count", "normalized", "bound", "ratio"]
    rows, grid = [], []
    for t in ts:
        res = counting.sharpness_count(d, t, C, workers=args.workers)
        q = t ** (d + 1)
        norm = res.count / q ** d
        bound = counting.theorem_bound(q, 0, d, beta)
        rows.append([t, q, res.count, norm, bound, norm / bound, res.wall_time])
        grid.append((q, res.count))
    kept, dropped = analysis.drop_nonpositive(grid)
    fit = analysis.fit_exponent(kept)
    target = 2 * d * d / (d + 1)
    ratios = analysis.bound_ratio_scan([(r[1], r[3], r[4]) for r in rows])
    results = {"slope": fit.slope, "slope_stderr": fit.stderr, "r_squared": fit.r_squared,
               "normalized_slope": fit.slope - d, "target_slope": target,
               "target_normalized_slope": target - d, "tol": args.tol,
               "first_half_max_ratio": ratios.first_half_max,
               "second_half_max_ratio": ratios.second_half_max, "dropped_zero_rows": dropped}
    params = {"dim": d, "t": ts, "C": C}
    return "sharpness-demo", params, header, rows, results, abs(fit.slope - target) <= args.tol


def cmd_fit(args):
    try:
        with open(args.input, newline="") as fh:
            lines = [ln for ln in fh if not ln.startswith("#")]
    except OSError as exc:
        raise UsageError(f"--input: {exc}") from exc
    reader = csv.DictReader(lines)
    if reader.fieldnames is None or args.x not in reader.fieldnames or args.y not in reader.fieldnames:
        raise UsageError(f"--input must have columns {args.x!r} and {args.y!r}")
    pts = [(float(r[args.x]), float(r[args.y])) for r in reader]
    kept, dropped = analysis.drop_nonpositive(pts)
    try:
        fit = analysis.fit_exponent(kept)
    except InvalidArgument as exc:
        raise UsageError(str(exc)) from exc
    results = {"slope": fit.slope, "intercept": fit.intercept, "slope_stderr": fit.stderr,
               "r_squared": fit.r_squared, "n": fit.n, "dropped_nonpositive_rows": dropped}
    passed = True
    if args.expect_slope is not None:
        passed = abs(fit.slope - args.expect_slope) <= args.tol
        results.update(expect_slope=args.expect_slope, tol=args.tol)
    header = ["x", "y"]
    rows = [[x, y, None] for x, y in kept]
    params = {"input": os.path.basename(args.input), "x": args.x, "y": args.y}
    return "fit", params, header, rows, results, passed


def cmd_dyadic(args):
    qs = _int_grid(args.q, "q")
    header = ["q", "s", "i", "value", "bound", "ratio", "envelope_constant"]
    rows, kappa = [], 0.0
    for s, i in args.pairs:
        for q in qs:
            r = energy.dyadic_inner_sum(q, args.alpha, s, i)
            k = r.ratio / (math.log2(q) + 1)
            kappa = max(kappa, k)
            rows.append([q, s, i, r.value, r.bound, r.ratio, k, None])
    results = {"kappa": kappa, "kappa_limit": args.kappa}
    params = {"q": qs, "alpha": args.alpha, "pairs": args.pairs}
    return "dyadic-bound", params, header, rows, results, kappa <= args.kappa


PRESETS = {
    "sharpness-d2": ["sharpness-demo", "--dim", "2", "--t", "2:8:1", "--C", "1", "--tol", "0.10"],
    "envelope-d2": ["count-pairs", "--phase", "diff_gauge", "--body", "ball", "--dim", "2",
                    "--q", "16,32,64,128,256", "--delta", "0,1/8,1", "--C", "1",
                    "--slope-delta", "1", "--slope-target", "1", "--slope-tol", "0.15"],
    "discrepancy-d3": ["discrepancy-scan", "--body", "ball", "--dim", "3", "--R", "2:100:2",
                       "--max-ratio", "10", "--max-slope", "1.5"],
    "energy-d2": ["energy-scan", "--dim", "2", "--alpha", "1,1", "--C", "1", "--s", "1.5", "1.9",
                  "--q", "8,16,32,64,128", "--max-slope", "0.10", "--max-ratio", "2"],
    "energy-aniso-d2": ["energy-scan", "--dim", "2", "--alpha", "2/3,4/3", "--C", "1",
                        "--s", "1.5", "--q", "8,27,64,125", "--max-slope", "0.15"],
    "ma-parabolic-d2": ["ma-check", "--phase", "parabolic", "--dim", "2", "--t", "1",
                        "--samples", "1000", "--seed", "1"],
    "ma-ball-d3": ["ma-check", "--phase", "diff_gauge", "--body", "ball", "--dim", "3", "--t", "1",
                   "--samples", "1000", "--seed", "1"],
    "ma-pball4-d2": ["ma-check", "--phase", "diff_gauge", "--body", "pball", "--p", "4",
                     "--dim", "2", "--t", "1", "--samples", "1000", "--seed", "1",
                     "--axis-samples", "8", "--expect", "fail"],
    "dyadic-bound": ["_dyadic"],
}


def _float_list(text):
    return [float(v) for v in _parse_list(text, "list")]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write OUT.csv and OUT.json")
    common.add_argument("--workers", type=int, default=None,
                        help=f"worker threads (default: ${ENV_WORKERS} or CPU count)")
    common.add_argument("--config", default=None, help="JSON file of option defaults")
    common.add_argument("--timing", action="store_true", help="add a wall_time column")

    parser = argparse.ArgumentParser(prog="latshell", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"latshell {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = sub.add_parser("count-shell", parents=[common], help="count R <= ||k|| <= R+delta")
    _add_body(p)
    p.add_argument("--R", nargs="+", default=["1"])
    p.add_argument("--delta", default="0")
    p.add_argument("--convention", choices=["closed", "half_open"], default="closed")
    p.add_argument("--method", choices=["fiber", "brute"], default="fiber")
    p.set_defaults(handler=cmd_count_shell)
    subs["count-shell"] = p

    p = sub.add_parser("count-pairs", parents=[common], help="count pairs near phi = q^beta")
    _add_body(p)
    p.add_argument("--phase", default="parabolic", help="parabolic | diff_gauge")
    p.add_argument("--q", type=lambda s: _parse_list(s, "q"), default=["1"])
    p.add_argument("--delta", type=lambda s: _parse_list(s, "delta"), default=["0"])
    p.add_argument("--C", default="1")
    p.add_argument("--convention", choices=["closed", "half_open"], default="closed")
    p.add_argument("--method", choices=["diff_weight", "brute"], default="diff_weight")
    p.add_argument("--half-growth", type=float, default=2.0,
                   help="pass requires second-half max ratio <= this x first-half max")
    p.add_argument("--slope-delta", default=None, help="delta whose normalized count is fitted")
    p.add_argument("--slope-target", type=float, default=1.0)
    p.add_argument("--slope-tol", type=float, default=0.15)
    p.set_defaults(handler=cmd_count_pairs)
    subs["count-pairs"] = p

    p = sub.add_parser("discrepancy-scan", parents=[common], help="N_B(R) - |B| R^d over a grid")
    _add_body(p)
    p.add_argument("--R", nargs="+", default=["2:100:2"], help="values or start:stop:step")
    p.add_argument("--alpha", default=None, help="discrepancy exponent alpha_d")
    p.add_argument("--max-ratio", type=float, default=10.0)
    p.add_argument("--max-slope", type=float, default=1.5)
    p.set_defaults(handler=cmd_discrepancy_scan)
    subs["discrepancy-scan"] = p

    p = sub.add_parser("ma-check", parents=[common], help="certify the Monge-Ampere hypothesis")
    _add_body(p)
    p.add_argument("--phase", default="parabolic")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--thickness", type=float, default=1e-2)
    p.add_argument("--axis-samples", type=int, default=0)
    p.add_argument("--h", type=float, default=1e-4)
    p.add_argument("--order", type=int, choices=[2, 4], default=2)
    p.add_argument("--floor", type=float, default=1e-3)
    p.add_argument("--expect", choices=["pass", "fail"], default="pass")
    p.set_defaults(handler=cmd_ma_check)
    subs["ma-check"] = p

    p = sub.add_parser("energy-scan", parents=[common], help="discrete s-energy over a q grid")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--alpha", default=None, help="comma-separated rationals summing to dim")
    p.add_argument("--C", default="1")
    p.add_argument("--s", type=float, nargs="+", default=[1.5])
    p.add_argument("--q", type=lambda s: _parse_list(s, "q"), default=["8", "16", "32", "64"])
    p.add_argument("--max-slope", type=float, default=0.10)
    p.add_argument("--max-ratio", type=float, default=None)
    p.set_defaults(handler=cmd_energy_scan)
    subs["energy-scan"] = p

    p = sub.add_parser("sharpness-demo", parents=[common], help="parabolic sharpness construction")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--t", type=lambda s: _parse_list(s, "t"), default=["2:8:1"])
    p.add_argument("--C", default="1")
    p.add_argument("--tol", type=float, default=0.10)
    p.set_defaults(handler=cmd_sharpness_demo)
    subs["sharpness-demo"] = p

    p = sub.add_parser("fit", parents=[common], help="log-log slope of two CSV columns")
    p.add_argument("--input", required=True)
    p.add_argument("--x", default="q")
    p.add_argument("--y", default="count")
    p.add_argument("--expect-slope", type=float, default=None)
    p.add_argument("--tol", type=float, default=0.10)
    p.set_defaults(handler=cmd_fit)
    subs["fit"] = p

    p = sub.add_parser("preset", parents=[common], help="run a named acceptance experiment")
    p.add_argument("name", choices=sorted(PRESETS))
    subs["preset"] = p

    p = sub.add_parser("_dyadic", parents=[common])
    p.add_argument("--q", type=lambda s: _parse_list(s, "q"), default="8,16,32,64,128,256")
    p.add_argument("--alpha", default="1")
    p.add_argument("--pairs", type=lambda s: [(float(a), int(b)) for a, b in
                                              (x.split(":") for x in _parse_list(s, "pairs"))],
                   default=[(2.0, 1), (1.5, 2), (2.0, 2)])
    p.add_argument("--kappa", type=float, default=8.0)
    p.set_defaults(handler=cmd_dyadic)
    subs["_dyadic"] = p
    return parser, subs


def _apply_config(args, argv, parser, subs):
    with open(args.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise UsageError("--config must hold a JSON object")
    sp = subs[args.command]
    known = {a.dest for a in sp._actions}
    for key in cfg:
        dest = key.replace("-", "_")
        if dest not in known or dest in ("config", "help"):
            raise UsageError(f"config field {key!r} is not an option of {args.command}")
    sp.set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()})
    return parser.parse_args(argv)


def _csv_text(experiment, params, header, rows, timing):
    digest = hashlib.sha256(json.dumps(_jsonable(params), sort_keys=True).encode()).hexdigest()
    buf = io.StringIO()
    buf.write(f"# latshell {__version__}\n# experiment: {experiment}\n# config-sha256: {digest}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header + (["wall_time"] if timing else []))
    for row in rows:
        vals = row[:len(header)] + ([row[-1]] if timing else [])
        w.writerow([fmt(v) for v in vals])
    return buf.getvalue()


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        if args.command == "preset":
            extra = argv[argv.index(args.name) + 1:]
            argv = PRESETS[args.name] + extra
            args = parser.parse_args(argv)
        if args.config:
            args = _apply_config(args, argv, parser, subs)
        args.workers = resolve_workers(args.workers, default=os.cpu_count() or 1)
        experiment, params, header, rows, results, passed = args.handler(args)
    except (UsageError, LatshellError, ValueError, OSError) as exc:
        print(f"latshell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS

    csv_text = _csv_text(experiment, params, header, rows, args.timing)
    summary = {"experiment": experiment, "params": _jsonable(params),
               "results": _jsonable(results), "pass": bool(passed)}
    json_text = json.dumps(summary, sort_keys=True, indent=2) + "\n"
    if args.out:
        os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
        with open(args.out + ".csv", "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
        with open(args.out + ".json", "w", encoding="utf-8") as fh:
            fh.write(json_text)
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(json_text)
    return EXIT_PASS if passed else EXIT_FAIL


run = main

if __name__ == "__main__":
    sys.exit(main())
