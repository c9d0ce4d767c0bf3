"""Command line front end: ``spsubgraphs <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile

import mpmath

from . import __version__
from .asymptotics import (
    FAMILIES,
    LEVELS,
    SUBGRAPHS,
    FamilyError,
    NewtonError,
    QuadratureError,
    SingularExpansionError,
    family_constants,
    moments,
)
from .config import FORMATS, ConfigError, RunConfig, parse_tolerances
from .oracle import K3, GraphError, census, parse_pattern
from .series import BigFloat, ExactRational, RingError, SeriesError
from .series.series import DivergenceError
from .systems import (
    ConvergenceError,
    SystemSpecError,
    build_c4_network_system,
    build_girth_network_system,
    build_triangle_network_system,
    solve_class,
)
from .verify import REFERENCE_VALUES, Context, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

USAGE_ERRORS = (ConfigError, FamilyError, GraphError, SystemSpecError, RingError)
NUMERIC_ERRORS = (
    NewtonError, QuadratureError, SingularExpansionError, ConvergenceError, DivergenceError, SeriesError,
    ArithmeticError,
)

FAMILY_TARGETS = {
    "triangle_free": {
        "b": "b_tf", "R_inv": "R_inv_tf", "c": "c_tf", "g": "g_tf", "rho_inv": "rho_inv_tf",
        "connected_probability": "connected_prob_tf",
    },
    "quadrangle_free": {"b": "b_qf", "R_inv": "R_inv_qf", "c": "c_qf", "g": "g_qf", "rho_inv": "rho_inv_qf"},
    "sp": {"rho_inv": "growth_sp"},
}

# the general level shares the connected-level limit law
MOMENT_TARGETS = {
    ("two_connected", "triangle"): ("mu_tri_2", "sigma2_tri_2"),
    ("connected", "triangle"): ("mu_tri", "sigma2_tri"),
    ("general", "triangle"): ("mu_tri", "sigma2_tri"),
    ("two_connected", "c4"): ("mu_c4_2", "sigma2_c4_2"),
}


class UsageError(Exception):
    pass


# -- output -----------------------------------------------------------------------------------


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def to_csv(rows: list) -> str:
    cols = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: r.get(k, "") for k in cols})
    return buf.getvalue()


def emit(cfg: RunConfig, doc: dict, rows: list) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n" if cfg.output_format == "json" else to_csv(rows)
    if cfg.output_path:
        write_atomic(cfg.output_path, text)
    else:
        sys.stdout.write(text)


def _n(v, digits: int) -> str:
    return mpmath.nstr(v, digits)


def target_row(name: str, got, cfg: RunConfig, label: str) -> dict:
    ref = REFERENCE_VALUES[name]
    tol = cfg.tolerance(name, ref.tol)
    diff = abs(mpmath.mpf(got) - mpmath.mpf(ref.value))
    return {
        "quantity": label,
        "check": name,
        "computed": _n(got, 15),
        "target": ref.value,
        "abs_diff": _n(diff, 5),
        "tol": f"{tol:g}",
        "status": "PASS" if diff <= tol else "FAIL",
    }


# -- commands ---------------------------------------------------------------------------------


def _system(args):
    if args.cls == "triangle":
        return build_triangle_network_system()
    if args.cls == "c4":
        return build_c4_network_system()
    if args.k is None:
        raise UsageError("--class girth needs --k")
    return build_girth_network_system(args.k)


def _scalar(text):
    return None if text is None else mpmath.mpf(text) if "." in text or "e" in text.lower() else int(text)


def cmd_solve(args, cfg: RunConfig):
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    spec = _system(args)
    ring = ExactRational() if args.ring == "rational" else BigFloat(cfg.precision_digits)
    y, u = _scalar(args.y), _scalar(args.u)
    if args.cls == "girth":
        if y is not None:
            raise UsageError("girth classes assemble B by edge unrooting and need y formal")
        u = 1
    with mpmath.workdps(cfg.precision_digits):
        nets, full = solve_class(spec, args.order, ring, y=y, u=u)
        series = {
            "D": nets.D.truncate(args.order),
            "B": full.B.truncate(args.order),
            "C_pointed": full.C_pointed,
            "C": full.C,
            "G": full.G,
        }
        networks = {n: nets[n].truncate(args.order) for n in spec.unknowns}
        doc = {
            "class": spec.class_tag,
            "order": args.order,
            "ring": ring.tag,
            "y": "formal" if y is None else str(y),
            "u": "formal" if u is None else str(u),
            "series": {k: s.to_json() for k, s in series.items()},
            "networks": {k: s.to_json() for k, s in networks.items()},
        }
    rows = []
    for group, table in (("series", doc["series"]), ("network", doc["networks"])):
        for name, sj in table.items():
            for i, j, k, c in sj["terms"]:
                rows.append({"group": group, "name": name, "i": i, "j": j, "k": k, "coeff": c})
    return doc, rows, EXIT_OK


def cmd_constants(args, cfg: RunConfig):
    fam = args.family
    with mpmath.workdps(cfg.precision_digits):
        fc = family_constants(fam, cfg.precision_digits)
        values = {"R_inv": 1 / fc.char.R_value}
        if fc.b is not None:
            values["b"] = fc.b.value
        if fc.connected is not None:
            values.update(
                c=fc.connected.c.value, g=fc.connected.g.value, rho_inv=1 / fc.connected.rho,
                connected_probability=fc.connected.connected_probability,
            )
        rows = []
        for label, name in sorted(FAMILY_TARGETS.get(fam, {}).items()):
            rows.append(target_row(name, values[label], cfg, label))
        for label in sorted(set(values) - set(FAMILY_TARGETS.get(fam, {}))):
            rows.append({"quantity": label, "computed": _n(values[label], 15), "status": "NO_TARGET"})
        doc = {"family": fam, "checks": rows, "constants": fc.to_json()}
    return doc, rows, _strict(args, rows)


def cmd_moments(args, cfg: RunConfig):
    with mpmath.workdps(cfg.precision_digits):
        reps = moments(args.level, args.subgraph, cfg.precision_digits)
        targets = MOMENT_TARGETS.get((args.level, args.subgraph))
        rows = []
        for rep in reps:
            for label, value, idx in (("mu", rep.mu, 0), ("sigma2", rep.sigma2, 1)):
                if targets:
                    row = target_row(targets[idx], value, cfg, label)
                else:
                    row = {"quantity": label, "computed": _n(value, 15), "status": "NO_TARGET"}
                row["route"] = rep.method
                rows.append(row)
        doc = {
            "level": args.level,
            "subgraph": args.subgraph,
            "reports": [r.to_json() for r in reps],
            "checks": rows,
        }
    return doc, rows, _strict(args, rows)


def _strict(args, rows) -> int:
    if getattr(args, "strict", False) and any(r["status"] == "FAIL" for r in rows):
        return EXIT_VERIFY
    return EXIT_OK


def print_table(checks, stream) -> None:
    head = ("status", "criterion", "name", "expected", "got", "tol")
    table = [head] + [
        (c.status, c.criterion, c.name, c.row()["expected"], c.row()["got"], c.row()["tol"]) for c in checks
    ]
    widths = [max(len(str(r[i])) for r in table) for i in range(len(head))]
    for r in table:
        stream.write("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def cmd_verify(args, cfg: RunConfig):
    suite = "full" if args.full else "fast"
    ctx = Context(cfg)

    def progress(c):
        if args.progress:
            sys.stderr.write(c.line() + "\n")

    checks = run_suite(suite, ctx, progress)
    failed = [c for c in checks if not c.passed]
    rows = [c.row() for c in checks]
    doc = {"suite": suite, "passed": len(checks) - len(failed), "failed": len(failed), "checks": rows}
    if cfg.output_path:
        print_table(checks, sys.stdout)
    else:
        print_table(checks, sys.stderr)
    return doc, rows, EXIT_VERIFY if failed else EXIT_OK


def cmd_census(args, cfg: RunConfig):
    if args.n > cfg.oracle_n_cap:
        raise UsageError(f"n={args.n} above the configured oracle cap {cfg.oracle_n_cap} (use --oracle-cap)")
    h = parse_pattern(args.pattern) if args.pattern else K3
    cen = census(args.n, args.connectivity, args.family, h, cap=cfg.oracle_n_cap, workers=args.workers)
    doc = cen.to_json()
    doc["mean"] = str(cen.mean())
    doc["variance"] = str(cen.variance())
    rows = [{"copies": k, "count": v} for k, v in sorted(cen.counts.items())]
    return doc, rows, EXIT_OK


def cmd_system(args, cfg: RunConfig):
    spec = _system(args)
    doc = spec.to_json()
    rows = [{"unknown": n, "gain": n in spec.gain_one_order} for n in spec.unknowns]
    return doc, rows, EXIT_OK


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="working precision in decimal digits (>= 30)")
    common.add_argument("--order", type=int, default=None, help="series order")
    common.add_argument("--oracle-cap", type=int, default=None, help="largest n for brute-force enumeration")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a check tolerance")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--output", "-o", default=None, help="write the report here (atomically)")

    p = argparse.ArgumentParser(prog="spsubgraphs", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="solve a network system and assemble B, C., C, G")
    s.add_argument("--class", dest="cls", choices=("triangle", "c4", "girth"), required=True)
    s.add_argument("--k", type=int, default=None, help="girth bound for --class girth")
    s.add_argument("--ring", choices=("rational", "bigfloat"), default="rational")
    s.add_argument("--y", default=None, help="numeric y (default formal)")
    s.add_argument("--u", default=None, help="numeric u (default formal)")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("constants", parents=[common], help="enumeration constants of a family")
    c.add_argument("--family", required=True, help=f"one of {', '.join(FAMILIES)}")
    c.add_argument("--strict", action="store_true", help="exit 1 when a published target is missed")
    c.set_defaults(func=cmd_constants)

    m = sub.add_parser("moments", parents=[common], help="mean and variance constants of subgraph counts")
    m.add_argument("--level", choices=LEVELS, required=True)
    m.add_argument("--subgraph", choices=SUBGRAPHS, required=True)
    m.add_argument("--strict", action="store_true", help="exit 1 when a published target is missed")
    m.set_defaults(func=cmd_moments)

    v = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    g = v.add_mutually_exclusive_group()
    g.add_argument("--fast", action="store_true", help="exact-series, oracle and property checks (default)")
    g.add_argument("--full", action="store_true", help="add every numeric constant")
    v.add_argument("--progress", action="store_true", help="print each check as it completes")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("census", parents=[common], help="brute-force census of subgraph copies")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--connectivity", choices=("all", "connected", "two_connected"), default="connected")
    e.add_argument("--family", default="sp", help="sp, sp_triangle_free, sp_quadrangle_free or sp_girth(k)")
    e.add_argument("--pattern", default=None, help="pattern graph 'n; a-b,c-d,...' (default triangle)")
    e.add_argument("--workers", type=int, default=1)
    e.set_defaults(func=cmd_census)

    y = sub.add_parser("system", help="inspect equation systems")
    ysub = y.add_subparsers(dest="action", required=True)
    d = ysub.add_parser("dump", parents=[common], help="print a system as JSON")
    d.add_argument("--class", dest="cls", choices=("triangle", "c4", "girth"), required=True)
    d.add_argument("--k", type=int, default=None)
    d.set_defaults(func=cmd_system)
    return p


def make_config(args) -> RunConfig:
    kw = {
        "tolerances": parse_tolerances(args.tol),
        "output_format": args.format,
        "output_path": args.output,
    }
    if args.precision is not None:
        kw["precision_digits"] = args.precision
    if args.oracle_cap is not None:
        kw["oracle_n_cap"] = args.oracle_cap
    if args.order is not None and args.command != "solve":
        kw["series_order"] = args.order
    return RunConfig(**kw)


def _fail(code: int, exc: BaseException) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        if args.command == "solve" and args.order is None:
            args.order = cfg.series_order
        doc, rows, code = args.func(args, cfg)
        emit(cfg, doc, rows)
        return code
    except (UsageError, *USAGE_ERRORS) as exc:
        return _fail(EXIT_USAGE, exc)
    except NUMERIC_ERRORS as exc:
        return _fail(EXIT_NUMERIC, exc)


if __name__ == "__main__":
    sys.exit(main())
