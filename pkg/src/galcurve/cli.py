"""Command-line front end.

Subcommands ``frenet``, ``involute`` and ``evolute`` print one row per
sample as CSV or JSON; ``verify`` prints a check report as JSON.  Exit codes:
0 success, 1 a verification ran and failed, 2 usage or parse error,
3 numeric failure (singularity, non-admissible curve, no convergence).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from typing import Any, Sequence

from . import __version__
from .checks import check_frenet_ode, check_isometry, check_thm31, check_thm32, check_thm33, check_thm34
from .curves import AdmissibleCurve, CurveSpec, PlanarCurve, admissible_from_spec, frenet
from .errors import FrameUndefined, NumericError, UsageError
from .expr import eval_jet, free_params, parse
from .involute import EvoluteProblem, evolute_problems_for, involute_frame, make_evolute, make_involute
from .jets import jet_var

log = logging.getLogger("galcurve")

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

COLUMNS = {
    "frenet": ["s", "T_x", "T_y", "T_z", "N_x", "N_y", "N_z", "B_x", "B_y", "B_z", "kappa", "tau"],
    "involute": [
        "s", "base_x", "base_y", "base_z", "involute_x", "involute_y", "involute_z",
        "distance", "kappa_star", "dsstar_ds",
    ],
    "evolute": ["s", "y", "z", "dy", "dz"],
}

THEOREMS = ("3.1", "3.2", "3.3", "3.4", "frenet-ode", "isometry")


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument parsing ---------------------------------------------------------

def parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must be lo:hi:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"range must be lo:hi:n, got {text!r}") from None
    if n < 2:
        raise UsageError(f"range needs n >= 2, got {n}")
    if not lo < hi:
        raise UsageError(f"range needs lo < hi, got {lo!r}:{hi!r}")
    return lo, hi, n


def parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(":")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except (ValueError, IndexError):
        raise UsageError(f"interval must be lo:hi, got {text!r}") from None
    if len(parts) != 2 or not lo < hi:
        raise UsageError(f"interval must be lo:hi with lo < hi, got {text!r}")
    return lo, hi


def parse_params(items: Sequence[str]) -> dict[str, float]:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"parameter must be key=value, got {item!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise UsageError(f"parameter {key!r} has non-numeric value {value!r}") from None
    return params


def _split(text: str, count: int, what: str) -> list[str]:
    parts = text.split(";")
    if len(parts) != count:
        raise UsageError(f"{what} needs {count} ';'-separated expressions, got {len(parts)}")
    return parts


def _pick_variable(texts: Sequence[str]) -> str:
    """``s`` when the expressions use ``s`` and never ``t``; otherwise ``t``."""
    names = frozenset().union(*(free_params(parse(t, var="t")) for t in texts))
    return "s" if "s" in names else "t"


def build_curve(args) -> AdmissibleCurve:
    texts = _split(args.curve, 3, "--curve")
    var = _pick_variable(texts)
    x, y, z = (parse(t, var=var) for t in texts)
    lo, hi, _ = args.range
    spec = CurveSpec(x, y, z, (lo, hi), parse_params(args.param), admissible=args.admissible)
    return admissible_from_spec(spec)


def _argtype(fn):
    """Adapt a parser helper for argparse so its message reaches the user."""

    def conv(text):
        try:
            return fn(text)
        except UsageError as err:
            raise argparse.ArgumentTypeError(str(err)) from None

    conv.__name__ = fn.__name__
    return conv


def _positive(kind):
    def conv(text):
        try:
            value = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid value {text!r}") from None
        if not value > 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
        return value

    return conv


def _add_curve_args(p: argparse.ArgumentParser, need_c: bool) -> None:
    p.add_argument("--curve", required=True, help="'x;y;z' expressions in t (raw) or s (admissible)")
    p.add_argument("--param", action="append", default=[], metavar="K=V", help="named constant (repeatable)")
    p.add_argument("--range", type=_argtype(parse_range), required=True, metavar="LO:HI:N")
    p.add_argument("--admissible", action="store_true", help="x expression is the parameter itself")
    if need_c:
        p.add_argument("--c", type=float, required=True, help="involute constant")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="galcurve", description="Frenet apparatus and involute/evolute curves in G3.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def outputs(p, formats=True):
        if formats:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("-o", "--output", help="output file (default: standard output)")
        p.add_argument("--plot", metavar="PNG", help="also render a figure to this file")

    p = sub.add_parser("frenet", help="tangent, normal, binormal, curvature and torsion")
    _add_curve_args(p, need_c=False)
    outputs(p)

    p = sub.add_parser("involute", help="involute points and involute curvature")
    _add_curve_args(p, need_c=True)
    outputs(p)

    p = sub.add_parser("evolute", help="integrate an evolute of a planar target")
    p.add_argument("--target", required=True, help="'y;z' expressions in t for the target in plane x = C")
    p.add_argument("--plane-x", type=float, required=True, dest="plane_x")
    p.add_argument("--target-range", type=_argtype(parse_interval), default=(-math.inf, math.inf), metavar="LO:HI")
    p.add_argument("--u", default="s", help="correspondence u(s), an expression in s")
    p.add_argument("--param", action="append", default=[], metavar="K=V")
    p.add_argument("--y0", type=float, required=True)
    p.add_argument("--z0", type=float, required=True)
    p.add_argument("--range", type=_argtype(parse_range), required=True, metavar="LO:HI:N")
    p.add_argument("--step", type=_positive(float), default=1e-3)
    outputs(p)

    p = sub.add_parser("verify", help="run a theorem check and print its report as JSON")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    _add_curve_args(p, need_c=False)
    p.add_argument("--c", type=float, help="involute constant (theorems 3.x)")
    p.add_argument("--tol", type=_positive(float), help="override the default tolerance")
    p.add_argument("--n", type=int, help="sample count (default: N of --range)")
    p.add_argument("--step", type=_positive(float), default=1e-3, help="RK4 step for the evolutes built by --theorem 3.4")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for the isometry check")
    outputs(p, formats=False)
    return parser


# -- output -------------------------------------------------------------------

def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_clean(v) for v in value]
    return value


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def render_csv(columns: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def render_json(meta: dict, key: str, payload: Any) -> str:
    return json.dumps(_clean({"meta": meta, key: payload}), indent=2, allow_nan=False) + "\n"


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------

def _vec(prefix: str, v) -> dict:
    return {f"{prefix}_x": v.x, f"{prefix}_y": v.y, f"{prefix}_z": v.z}


def _grid(lo: float, hi: float, n: int) -> list[float]:
    from .numerics import sample_grid

    return sample_grid(lo, hi, n)


def frenet_rows(curve: AdmissibleCurve, n: int) -> list[dict]:
    rows = []
    for s in _grid(*curve.domain, n):
        try:
            fr = frenet(curve, s)
        except FrameUndefined as err:
            log.warning("frame undefined at s=%r (curvature %r)", s, err.kappa)
            row = {"s": s, **_vec("T", err.tangent), "kappa": err.kappa}
        else:
            row = {"s": s, **_vec("T", fr.T), **_vec("N", fr.N), **_vec("B", fr.B), "kappa": fr.kappa, "tau": fr.tau}
        rows.append({c: row.get(c) for c in COLUMNS["frenet"]})
    return rows


def involute_rows(curve: AdmissibleCurve, c: float, n: int) -> tuple[list[dict], tuple[float, float]]:
    pair = make_involute(curve, c)
    rows = []
    for s in _grid(*pair.check_domain, n):
        base, inv = pair.base_point(s), pair.involute_point(s)
        frame = involute_frame(pair, s)
        rows.append({
            "s": s, **_vec("base", base), **_vec("involute", inv),
            "distance": abs(inv.x - base.x),
            "kappa_star": frame.kappa_star,
            "dsstar_ds": frame.dsstar_ds,
        })
    return rows, pair.check_domain


def evolute_rows(args) -> list[dict]:
    params = parse_params(args.param)
    ytext, ztext = _split(args.target, 2, "--target")
    yexpr, zexpr = parse(ytext, var="t"), parse(ztext, var="t")
    u = parse(args.u, var="s")
    target = PlanarCurve(
        args.plane_x,
        lambda tj: eval_jet(yexpr, tj, params),
        lambda tj: eval_jet(zexpr, tj, params),
        args.target_range,
    )
    lo, hi, n = args.range
    problem = EvoluteProblem(target, u, args.y0, args.z0, lo, hi, args.step, params)
    curve = make_evolute(problem)
    rows = []
    for s in _grid(lo, hi, n):
        yj, zj = curve.jets(s)
        rows.append({"s": s, "y": yj.v, "z": zj.v, "dy": yj.d1, "dz": zj.d1})
    return rows


def run_verify(args):
    curve = build_curve(args)
    n = args.n if args.n is not None else args.range[2]
    theorem = args.theorem
    tol = {} if args.tol is None else {"tol": args.tol}
    if theorem == "frenet-ode":
        return check_frenet_ode(curve, n, **tol)
    if theorem == "isometry":
        return check_isometry(curve, n=n, seed=args.seed, **tol)
    if args.c is None:
        raise UsageError(f"theorem {theorem} needs --c")
    pair = make_involute(curve, args.c)
    if theorem == "3.1":
        return check_thm31(pair, n, **tol)
    if theorem == "3.2":
        return check_thm32(pair, n, **tol)
    if theorem == "3.3":
        return check_thm33(pair, n, **tol)
    beta, gamma = (make_evolute(p) for p in evolute_problems_for(pair, step=args.step))
    return check_thm34(beta, gamma, pair.involute, n, **tol)


def _meta(args) -> dict:
    skip = {"output", "plot", "format"}
    meta = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        meta[key] = list(value) if isinstance(value, tuple) else value
    return meta


def dispatch(args) -> int:
    if args.command == "verify":
        report = run_verify(args)
        payload = report.to_dict()
        _emit(render_json(_meta(args), "report", payload), args.output)
        if args.plot:
            from .plotting import plot_report

            plot_report(payload, args.plot)
        if not report.passed:
            log.error("check %s failed: max deviation %r > tolerance %r",
                      report.theorem_id, report.max_abs_deviation, report.tolerance)
            return EXIT_FAILED
        return EXIT_OK

    meta = _meta(args)
    if args.command == "frenet":
        curve = build_curve(args)
        rows = frenet_rows(curve, args.range[2])
        meta["domain"] = list(curve.domain)
    elif args.command == "involute":
        rows, check_domain = involute_rows(build_curve(args), args.c, args.range[2])
        meta["check_domain"] = list(check_domain)
    else:
        rows = evolute_rows(args)

    columns = COLUMNS[args.command]
    if args.format == "csv":
        text = render_csv(columns, rows)
    else:
        text = render_json(meta, "rows", rows)
    _emit(text, args.output)
    if args.plot:
        from .plotting import plot_rows

        plot_rows(args.command, rows, args.plot)
    return EXIT_OK


def run(argv: Sequence[str] | None = None) -> int:
    """Run the CLI on ``argv`` and return the process exit code."""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("galcurve: %(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.propagate = False
    log.setLevel(logging.INFO)
    try:
        args = build_parser().parse_args(argv)
        return dispatch(args)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except UsageError as err:
        log.error("%s", err)
        return EXIT_USAGE
    except NumericError as err:
        log.error("%s", err)
        return EXIT_NUMERIC
    except OSError as err:
        log.error("%s", err)
        return EXIT_USAGE
    finally:
        log.removeHandler(handler)


def main() -> None:
    sys.exit(run())
