"""Command line: ``lipinterp verify|tables|plotdata``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import asdict, dataclass

from . import construction as cons
from . import verify as V
from .operators import make_operator

SCHEMA = 1
OPERATORS = ("t1", "t2", "t3", "t4", "t5", "t6")
EPSILONS = (0.2, 0.1, 0.05)
OUTPUT_ENV = "LIPINTERP_OUTPUT_DIR"


@dataclass
class RunConfig:
    command: str
    p: float = 2.0
    theta: float = 0.5
    q: float = 2.0
    n_max: int = 64
    N_max: int = 40
    sample_size: int = 256
    tol: float = 1e-9
    seed: int = 42
    output_path: str | None = None
    format: str = "json"


def _real(s: str) -> float:
    if s.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    return float(s)


_LAMBDA = re.compile(r"^(?:lambda|λ)_?([0-9₀-₉]+)$")


def _t_value(s: str, tab) -> float:
    """``--t`` accepts a number or ``lambda<n>`` / ``λ<n>``."""
    m = _LAMBDA.match(s.strip())
    if m:
        digits = m.group(1).translate(str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789"))
        return float(tab.lam[int(digits)])
    return float(s)


# -- verify --------------------------------------------------------------------


def _ops_checks(name: str, cfg: RunConfig) -> list[V.CheckResult]:
    T = make_operator(name, p=cfg.p, n_max=cfg.n_max, N_max=cfg.N_max)
    out = [V.lipschitz_sweep(T, ("L1", "Linf"), cfg.sample_size, cfg.seed)]
    if name in ("t5", "t6"):
        out.append(V.norm_collapse_witness(T, cfg.p))
    else:
        out.append(V.noncompact_witness(T, cfg.p, cfg.q).to_check())
    nets = {
        "t1": [("L1", 1.0)],
        "t2": [("Linf", 3.0)],
        "t3": [("L1", 1.0), ("Linf", 3.0)],
        "t4": [("lp", 1.0)],
        "t5": [("Linf", 3.0)],
        "t6": [("Linf", 3.0)],
    }[name]
    for space, bound in nets:
        for eps in EPSILONS:
            ev = V.epsilon_net_evidence(T, space, bound, eps, cfg.sample_size, cfg.seed)
            out.append(ev.to_check())
    n_interp = max(8, cfg.sample_size // 4)
    out.append(V.interpolation_bound_check(T, cfg.theta, cfg.q, n_interp, cfg.seed))
    return out


def cmd_verify(operator: str, cfg: RunConfig) -> tuple[int, dict]:
    names = OPERATORS if operator == "all" else (operator,)
    checks = []
    for name in names:
        checks += _ops_checks(name, cfg)
    rows = [c.to_dict() for c in checks]
    ok = all(c.passed for c in checks if c.hard)
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "operator": operator,
        "config": V._clean(asdict(cfg)),
        "checks": rows,
        "all_hard_checks_passed": ok,
    }
    return (0 if ok else 1), report


def _verify_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "operator", "verdict", "margin", "params"])
    for r in report["checks"]:
        op = r["params"].get("operator", r["params"].get("operator_name", ""))
        w.writerow([r["check"], op, r["verdict"], r["margin"], json.dumps(r["params"], sort_keys=True)])
    return buf.getvalue()


# -- tables / plotdata -------------------------------------------------------------


def cmd_tables(p: float, N: int, n_table_max: int) -> dict:
    tab = cons.build_tables(p, N, n_table_max)
    return {"schema": SCHEMA, "command": "tables", "tables": V._clean(tab.to_dict())}


def cmd_plotdata(target: str, args) -> str:
    tab = cons.build_tables(args.p, args.N, args.n_table_max)
    if target == "E":
        if args.t is not None:
            t = _t_value(args.t, tab)
        else:
            t = float(tab.lam[args.n])
        return cons.polygon_csv(cons.e_polygon(tab, t))
    if target == "G":
        t = _t_value(args.t, tab) if args.t is not None else float(tab.lam[args.n])
        return cons.polygon_csv(cons.g_polygon(tab, t))
    if target == "g":
        t = _t_value(args.t, tab) if args.t is not None else float(tab.lam[args.n])
        return cons.profile_csv(cons.g_profile(tab, t), "g")
    if target == "gamma":
        return cons.profile_csv(tab.gamma_pl, "gamma")
    if target == "sN":
        c = args.c if args.c is not None else 2.0**args.N - 1.0
        return cons.profile_csv(cons.s_n(tab, c), "S_N")
    raise ValueError(f"unknown plot target {target!r}")


# -- argument handling ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lipinterp", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite for one operator or all")
    v.add_argument("operator", choices=OPERATORS + ("all",))
    v.add_argument("--p", type=float, default=2.0)
    v.add_argument("--theta", type=_real, default=0.5)
    v.add_argument("--q", type=_real, default=2.0)
    v.add_argument("--n-max", type=int, default=64)
    v.add_argument("--N-max", dest="N_max", type=int, default=40)
    v.add_argument("--sample-size", type=int, default=256)
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--output", default=None)
    v.add_argument("--format", choices=("json", "csv"), default="json")

    t = sub.add_parser("tables", help="dump the construction tables for (p, N)")
    t.add_argument("--p", type=float, default=2.0)
    t.add_argument("--N", type=int, default=1)
    t.add_argument("--n-table-max", type=int, default=cons.DEFAULT_TABLE_DEPTH)
    t.add_argument("--output", default=None)

    g = sub.add_parser("plotdata", help="CSV vertex and profile dumps")
    g.add_argument("target", choices=("E", "G", "g", "gamma", "sN"))
    g.add_argument("--p", type=float, default=2.0)
    g.add_argument("--N", type=int, default=1)
    g.add_argument("--n", type=int, default=1, help="use t = lambda_n")
    g.add_argument("--t", default=None, help="number or lambda<n>")
    g.add_argument("--c", type=float, default=None, help="coefficient for sN (default 2^N - 1)")
    g.add_argument("--n-table-max", type=int, default=cons.DEFAULT_TABLE_DEPTH)
    g.add_argument("--output", default=None)
    return ap


def _default_path(args) -> str | None:
    if args.output:
        return args.output
    d = os.environ.get(OUTPUT_ENV)
    if not d:
        return None
    if args.command == "verify":
        name = f"verify-{args.operator}.{args.format}"
    elif args.command == "tables":
        name = f"tables-p{args.p}-N{args.N}.json"
    else:
        name = f"plotdata-{args.target}-p{args.p}-N{args.N}.csv"
    return os.path.join(d, name)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    path = _default_path(args)
    try:
        if args.command == "verify":
            cfg = RunConfig(
                "verify", args.p, args.theta, args.q, args.n_max, args.N_max,
                args.sample_size, args.tol, args.seed, args.output, args.format,
            )
            V.SEPARATION_TOL = cfg.tol
            code, report = cmd_verify(args.operator, cfg)
            text = json.dumps(report, sort_keys=True, indent=2) + "\n" if args.format == "json" else _verify_csv(report)
        elif args.command == "tables":
            code, text = 0, json.dumps(cmd_tables(args.p, args.N, args.n_table_max), sort_keys=True, indent=2) + "\n"
        else:
            code, text = 0, cmd_plotdata(args.target, args)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        _emit(text, path)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 3
    return code


if __name__ == "__main__":
    sys.exit(main())
