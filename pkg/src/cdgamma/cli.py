"""``cdgamma`` command line: eval, compare, verify and sweep.

Every command produces a report: a header (command, PRNG, seed, config and
its hash), flat per-case records and a summary.  Reports are written as
JSON, CSV or plain text; ``--out`` writes to a file and, for commands that
produce tables, a PNG figure next to it.

Exit status is 0 on success, 1 when an asserted check fails and 2 for
usage, parse and domain errors.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import gammafn as G
from .algebra import CDNumber, random_unit_axis
from .beta import beta_result
from .campbell_hausdorff import CHConfig, ch_oracle, ch_w
from .elementary import cd_exp, cd_ln
from .errors import CDError, ParseError
from .notation import format_cd, parse_cd
from .quadrature import QuadratureConfig
from .report import normalized_residual
from .suites import SUITES, max_finite, record, run_suite

PRNG = "numpy PCG64"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FUNCTIONS = ("gamma", "rgamma", "lngamma", "beta", "exp", "ln", "ch")
COMPARE_NS = (100, 1000, 10000)
# safety factor on summed error estimates when two methods are compared
COMPARE_FACTOR = 10.0


class UsageError(Exception):
    pass


# report assembly

def config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def build_report(command: str, config: dict, records: list[dict], extra: dict | None = None) -> dict:
    h = config_hash({"command": command, **config})
    for r in records:
        r["config_hash"] = h
    asserted = [r for r in records if r.get("asserted")]
    report = {
        "header": {"command": command, "prng": PRNG, "seed": config.get("seed"),
                   "config": config, "config_hash": h},
        "records": records,
        "summary": {
            "records": len(records),
            "asserted": len(asserted),
            "failures": sum(1 for r in asserted if not r["passed"]),
            "max_residual": max_finite(r.get("residual") for r in records),
        },
    }
    if extra:
        report.update(extra)
    return report


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


CSV_COLUMNS = ("suite", "case", "method", "input", "value", "residual", "error_estimate",
               "tolerance", "asserted", "passed", "config_hash")


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    records = report["records"]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow([_cell(r.get(c)) for c in CSV_COLUMNS])
        return buf.getvalue()
    lines = [f"# {report['header']['command']}  seed={report['header']['seed']}  "
             f"config_hash={report['header']['config_hash']}"]
    for r in records:
        inp = ", ".join(f"{k}={v}" for k, v in r["input"].items())
        val = "" if r["value"] is None else format_cd(CDNumber(r["value"]))
        status = "" if r["passed"] is None else ("PASS" if r["passed"] else "FAIL")
        lines.append(f"{r['suite']:<11} {r['case']:>4}  {r['method']:<24} {inp}")
        if val:
            lines.append(f"    value = {val}")
        if r.get("error"):
            lines.append(f"    error: {r['error']}")
        bits = [f"{k}={_cell(r[k])}" for k in ("residual", "error_estimate", "tolerance")
                if r.get(k) is not None]
        if bits or status:
            lines.append("    " + "  ".join(bits + [status]).strip())
    for key in ("matrix",):
        if key in report:
            m = report[key]
            lines.append("pairwise residuals:")
            width = max(len(n) for n in m["methods"]) + 2
            lines.append(" " * width + "".join(f"{n[:10]:>12}" for n in m["methods"]))
            for n, row in zip(m["methods"], m["residuals"]):
                cells = "".join(f"{'-' if c is None else format(c, '.3e'):>12}" for c in row)
                lines.append(f"{n:<{width}}{cells}")
    s = report["summary"]
    lines.append(f"records={s['records']} asserted={s['asserted']} failures={s['failures']} "
                 f"max_residual={s['max_residual']:.3e}")
    return "\n".join(lines) + "\n"


def emit(report: dict, args, figure=None) -> None:
    text = render(report, args.format)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        if figure is not None and not args.no_plot and report["records"]:
            figure(Path(args.plot) if args.plot else out.with_suffix(".png"))
    else:
        sys.stdout.write(text)
        if figure is not None and args.plot and report["records"]:
            figure(Path(args.plot))


def status_of(report: dict) -> int:
    return EXIT_FAIL if report["summary"]["failures"] else EXIT_OK


# argument helpers

def quad_config(args) -> QuadratureConfig:
    overrides = {}
    if args.abs_tol is not None:
        overrides["abs_tol"] = args.abs_tol
    if args.rel_tol is not None:
        overrides["rel_tol"] = args.rel_tol
    try:
        return QuadratureConfig.from_env(**overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_args_numbers(texts: list[str], level: int | None) -> list[CDNumber]:
    """Parse CD-grammar strings, lifting them to a common level."""
    nums = [parse_cd(t, level) for t in texts]
    top = max(max(z.level for z in nums), 1 if level is None else level)
    return [z.embed(top) if z.level < top else z for z in nums]


def _config(args, cfg: QuadratureConfig, **fields) -> dict:
    base = {"abs_tol": cfg.abs_tol, "rel_tol": cfg.rel_tol,
            "max_refinements": cfg.max_refinements, "seed": args.seed, "timing": args.timing}
    base.update(fields)
    return base


def timed(fn, *a, **kw):
    t0 = time.perf_counter()
    out = fn(*a, **kw)
    return out, time.perf_counter() - t0


# commands

def cmd_eval(args) -> int:
    cfg = quad_config(args)
    fn = args.fn
    method = args.method
    if fn in ("beta", "ch"):
        if args.p is None or args.q is None:
            raise UsageError(f"--fn {fn} needs --p and --q")
        p, q = parse_args_numbers([args.p, args.q], args.level)
        inputs = {"p": p, "q": q}
    else:
        if args.z is None:
            raise UsageError(f"--fn {fn} needs --z")
        (z,) = parse_args_numbers([args.z], args.level)
        inputs = {"z": z}

    extra = {}
    if fn == "gamma":
        method = method or "slice_lanczos"
        try:
            mv, dt = timed(G.gamma_by, method, z, cfg, n=args.n or 100_000)
        except ValueError as exc:
            if isinstance(exc, CDError):
                raise
            raise UsageError(f"unknown gamma method {method!r}") from None
        value, err = mv.value, mv.error_estimate
    elif fn == "rgamma":
        method = method or "slice_lanczos"
        if method == "slice_lanczos":
            (value, dt) = timed(G.rgamma, z)
            err = G.LANCZOS_REL_ERROR * max(1.0, value.norm())
        elif method == "hankel":
            res, dt = timed(G.hankel_reciprocal_gamma_result, z, cfg)
            value, err = res.value, res.error_estimate
        else:
            raise UsageError("rgamma methods: slice_lanczos, hankel")
    elif fn == "lngamma":
        method = method or "slice_lanczos"
        if method == "slice_lanczos":
            (value, dt) = timed(lambda w: cd_ln(G.gamma(w)), z)
            err = G.LANCZOS_REL_ERROR * (1.0 + value.norm())
        elif method == "stirling":
            series, dt = timed(G.stirling_series, z, args.terms)
            value, err = series.value, series.error_bound
            extra["truncated_early"] = series.truncated_early
        else:
            raise UsageError("lngamma methods: slice_lanczos, stirling")
    elif fn == "beta":
        method = method or "integral"
        if method != "integral":
            raise UsageError("beta method: integral")
        res, dt = timed(beta_result, p, q, cfg)
        value, err = res.value, res.error_estimate
    elif fn == "exp":
        method = method or "slice"
        value, dt = timed(cd_exp, z)
        err = 0.0
    elif fn == "ln":
        method = method or "slice"
        value, dt = timed(cd_ln, z)
        err = 0.0
    else:
        method = method or "series"
        ch_cfg = CHConfig(truncation_order=args.order)
        if method == "series":
            value, dt = timed(ch_w, p, q, ch_cfg)
            # distance to the direct group logarithm stands in for the truncation error
            err = (value - ch_oracle(p, q)).norm()
        elif method == "oracle":
            value, dt = timed(ch_oracle, p, q)
            err = 0.0
        else:
            raise UsageError("ch methods: series, oracle")

    rec = record(fn, 0, inputs, method, value, None, None, err, **extra)
    if args.timing:
        rec["seconds"] = dt
    config = _config(args, cfg, fn=fn, method=method,
                     input={k: format_cd(v) for k, v in inputs.items()})
    emit(build_report("eval", config, [rec]), args)
    return EXIT_OK


def _compare_point(z: CDNumber, cfg: QuadratureConfig, n: int, timing: bool):
    """Gamma at ``z`` by every route; failures are recorded, not raised."""
    results = {}
    for m in G.GammaMethod:
        try:
            mv, dt = timed(G.gamma_by, m, z, cfg, n=n)
            results[m.value] = (mv, dt, None)
        except CDError as exc:
            results[m.value] = (None, 0.0, f"{type(exc).__name__}: {exc}")
    return results


def cmd_compare(args) -> int:
    cfg = quad_config(args)
    if args.grid:
        return compare_grid(args, cfg)
    if args.z is None:
        raise UsageError("compare needs --z (or --grid)")
    (z,) = parse_args_numbers([args.z], args.level)
    n = args.n or 100_000
    results = _compare_point(z, cfg, n, args.timing)
    ref = results["slice_lanczos"][0]
    names = list(results)
    records = []
    for i, name in enumerate(names):
        mv, dt, error = results[name]
        if mv is None:
            rec = record("compare", i, {"z": z}, name, None, None, None, None, error=error)
        else:
            res = normalized_residual(mv.value, ref.value)
            tol = max(COMPARE_FACTOR * (mv.error_estimate + ref.error_estimate)
                      / (1.0 + ref.value.norm()), 1e-13)
            rec = record("compare", i, {"z": z}, name, mv.value, res, tol, mv.error_estimate)
            if args.timing:
                rec["seconds"] = dt
        records.append(rec)
    matrix = []
    for a in names:
        row = []
        for b in names:
            va, vb = results[a][0], results[b][0]
            row.append(None if va is None or vb is None else normalized_residual(va.value, vb.value))
        matrix.append(row)
    # convergence columns: unasserted relative error against the slice value
    ns = args.ns or list(COMPARE_NS)
    conv = {"limit_form": [], "euler_product": []}
    for k in ns:
        for name, fn in (("limit_form", G.gamma_limit), ("euler_product", G.gamma_euler_product)):
            try:
                v = fn(z, k)
            except CDError as exc:
                records.append(record("convergence", len(records), {"z": z, "n": k}, name, None,
                                      None, None, error=str(exc)))
                continue
            rel = (v - ref.value).norm() / ref.value.norm()
            conv[name].append(rel)
            lead = G.gamma_by(name, z, cfg, n=k).error_estimate
            records.append(record("convergence", len(records), {"z": z, "n": k}, name, v, rel,
                                  None, lead))
    orders = {}
    for name, errs in conv.items():
        if len(errs) == len(ns) and len(ns) >= 2 and all(e > 0 for e in errs):
            orders[name] = -float(np.polyfit(np.log(ns), np.log(errs), 1)[0])
    config = _config(args, cfg, input={"z": format_cd(z)}, n=n, ns=list(ns))
    report = build_report("compare", config, records,
                          {"matrix": {"methods": names, "residuals": matrix},
                           "convergence_order": orders})

    def figure(path):
        from .plotting import plot_convergence
        plot_convergence(list(ns), {k: v for k, v in conv.items() if len(v) == len(ns)}, path)

    emit(report, args, figure)
    return status_of(report)


def compare_grid(args, cfg: QuadratureConfig) -> int:
    """Hankel reciprocal Gamma against the slice value on a grid in one random slice."""
    level = args.level or 2
    rng = np.random.default_rng(args.seed)
    axis = random_unit_axis(rng, level)
    xs = np.linspace(-2.0, 4.0, args.grid_x, endpoint=False) + 3.0 / args.grid_x
    ys = np.linspace(-3.0, 3.0, args.grid_y, endpoint=False) + 3.0 / args.grid_y
    records = []
    for x in xs:
        for y in ys:
            z = axis * float(y) + float(x)
            ref = G.rgamma(z)
            res, dt = timed(G.hankel_reciprocal_gamma_result, z, cfg)
            rec = record("hankel_grid", len(records), {"z": z}, "hankel", res.value,
                         normalized_residual(res.value, ref), 1e-6, res.error_estimate,
                         x=float(x), y=float(y))
            if args.timing:
                rec["seconds"] = dt
            records.append(rec)
    config = _config(args, cfg, level=level, grid=[args.grid_x, args.grid_y],
                     axis=format_cd(axis))
    report = build_report("compare", config, records)

    def figure(path):
        from .plotting import plot_residuals
        plot_residuals(records, path)

    emit(report, args, figure)
    return status_of(report)


def cmd_verify(args) -> int:
    cfg = quad_config(args)
    levels = args.level_list or [2]
    n = args.n or 20
    records = []
    for level in levels:
        for r in run_suite(args.suite, level, n, args.seed, nmax=args.nmax, cfg=cfg):
            r["level"] = level
            records.append(r)
    for i, r in enumerate(records):
        r["index"] = i
    config = _config(args, cfg, suite=args.suite, levels=list(levels), n=n, nmax=args.nmax)
    report = build_report("verify", config, records)

    def figure(path):
        from .plotting import plot_residuals
        plot_residuals(records, path)

    emit(report, args, figure)
    return status_of(report)


def inclusive_range(start: float, stop: float, step: float) -> list[float]:
    if not step > 0:
        raise UsageError("--step must be positive")
    if stop < start:
        return []
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def cmd_sweep(args) -> int:
    cfg = quad_config(args)
    params = inclusive_range(args.start, args.stop, args.step)
    level = args.level or 2
    records = []
    rng = np.random.default_rng(args.seed)
    if args.kind == "stirling":
        (z,) = parse_args_numbers([args.z or "50"], args.level)
        ref = cd_ln(G.gamma(z))
        for t in params:
            k = int(round(t))
            if k < 1:
                raise UsageError("stirling sweep needs term counts >= 1")
            s = G.stirling_series(z, k)
            res = G.lngamma_difference(s.value, ref, z) / (1.0 + ref.norm())
            records.append(record("stirling", len(records), {"z": z, "terms": k}, "stirling",
                                  s.value, res, None, s.error_bound, parameter=k,
                                  truncated_early=s.truncated_early))
    elif args.kind == "magnitude":
        axis = random_unit_axis(rng, level)
        for y in params:
            val = G.gamma(axis * y + args.x)
            asym = G.gamma_magnitude_asymptotic(args.x, y)
            ratio = val.norm() / asym
            records.append(record("magnitude", len(records), {"x": args.x, "y": y, "axis": axis},
                                  "slice_lanczos", val, abs(ratio - 1.0), None, None,
                                  parameter=y, ratio=ratio))
    else:
        (z,) = parse_args_numbers([args.z or "0.5"], args.level)
        ref = G.gamma(z)
        for t in params:
            k = int(round(t))
            if k < 1:
                raise UsageError("limit sweep needs n >= 1")
            mv = G.gamma_by("limit_form", z, cfg, n=k)
            rel = (mv.value - ref).norm() / ref.norm()
            records.append(record("limit", len(records), {"z": z, "n": k}, "limit_form", mv.value,
                                  rel, None, mv.error_estimate, parameter=k))
    config = _config(args, cfg, kind=args.kind, start=args.start, stop=args.stop, step=args.step,
                     z=args.z, x=args.x, level=level)
    report = build_report("sweep", config, records)

    def figure(path):
        from .plotting import plot_sweep
        plot_sweep(records, args.kind, path)

    emit(report, args, figure)
    return status_of(report)


# parser

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", help="write the report here (a PNG goes next to it)")
    p.add_argument("--plot", help="explicit path for the figure")
    p.add_argument("--no-plot", action="store_true", help="do not write a figure with --out")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--abs-tol", type=float, default=None,
                   help="quadrature absolute tolerance (default: $CDGAMMA_ABS_TOL or 1e-12)")
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--timing", action="store_true",
                   help="add wall-clock seconds to records (reports are then not reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdgamma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one function at one argument")
    _common(p)
    p.add_argument("--fn", choices=FUNCTIONS, default="gamma")
    p.add_argument("--z")
    p.add_argument("--p")
    p.add_argument("--q")
    p.add_argument("--level", type=int)
    p.add_argument("--method")
    p.add_argument("--n", type=int, help="n for the limit and product forms")
    p.add_argument("--terms", type=int, default=5, help="Stirling terms")
    p.add_argument("--order", type=int, default=8, help="Campbell-Hausdorff truncation order")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="Gamma by all routes at one argument")
    _common(p)
    p.add_argument("--z")
    p.add_argument("--level", type=int)
    p.add_argument("--n", type=int, help="n for the limit and product rows (default 1e5)")
    p.add_argument("--ns", type=int, nargs="+", help="n values for the convergence columns")
    p.add_argument("--grid", action="store_true", help="Hankel vs slice over a grid instead")
    p.add_argument("--grid-x", type=int, default=5)
    p.add_argument("--grid-y", type=int, default=4)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="run a seeded identity suite")
    _common(p)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--level", dest="level_list", type=int, nargs="+")
    p.add_argument("--n", type=int, help="samples per suite and level (default 20)")
    p.add_argument("--nmax", type=int, default=10, help="largest pole order for residues")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate an error or ratio over a parameter range")
    _common(p)
    p.add_argument("--kind", choices=("stirling", "magnitude", "limit"), required=True)
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--z", help="argument for stirling (default 50) and limit (default 0.5)")
    p.add_argument("--x", type=float, default=0.5, help="real part for the magnitude sweep")
    p.add_argument("--level", type=int)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"cdgamma: parse error: {exc}\n  {exc.text}\n  {' ' * exc.position}^\n")
    except UsageError as exc:
        sys.stderr.write(f"cdgamma: {exc}\n")
    except CDError as exc:
        sys.stderr.write(f"cdgamma: {type(exc).__name__}: {exc}\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
