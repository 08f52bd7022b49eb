"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage errors (bad flags, malformed polynomial JSON, out-of-range n/N).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import bounds, circle_norms, proof_checks, schwarz, search
from .errors import CircleNormError, NoConvergenceError, OutOfRangeError, TheoremViolationError
from .poly_core import Polynomial

SEED_ENV = "CIRCLE_NORM_SEED"
COMMANDS = ("norms", "verify", "bounds", "ineq6", "schwarz", "sharpness", "search", "table")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    poly: str | None = None
    poly_file: str | None = None
    N: int | None = None
    n: int | None = None
    l: int | None = None
    C: float = bounds.RAKHMANOV_C
    seed: int = 0
    samples: int | None = None
    restarts: int = 64
    format: str = "json"
    strict: bool = False
    n_range: tuple = ()
    N_range: tuple = ()
    extra: dict = field(default_factory=dict)


def _fmt(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return None
        return float(f"{x:.15g}")
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return _fmt(x.item())
    return x


def _csv_cell(x):
    if isinstance(x, float):
        return f"{x:.15g}"
    return "" if x is None else x


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in record.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = json.dumps(_fmt(v))
        else:
            out[key] = v
    return out


def _emit(out, fmt: str, record=None, rows=None) -> None:
    if fmt == "json":
        out.write(json.dumps(_fmt(record if rows is None else rows)) + "\n")
        return
    rows = rows if rows is not None else [record]
    flat = [_flatten(r) for r in rows]
    w = csv.DictWriter(out, fieldnames=list(flat[0]), lineterminator="\n")
    w.writeheader()
    for r in flat:
        w.writerow({k: _csv_cell(_fmt(v)) for k, v in r.items()})


def _parse_range(text: str) -> tuple:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return (lo, hi)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlenorm",
        description="Discrete vs uniform norms of polynomials on the unit circle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *, poly=False, N=False, n=False, l=False, C=False, samples=False,
            seed=False, restarts=False, strict=False, ranges=False):
        p = sub.add_parser(name, help=help_)
        if poly:
            p.add_argument("--poly", help='inline JSON: {"coeffs": [[re, im], ...]}')
            p.add_argument("--poly-file", help="path to a polynomial JSON file")
        if N:
            p.add_argument("--N", type=int, required=name != "norms", help="grid size (N-th roots of unity)")
        if n:
            p.add_argument("--n", type=int, required=True, help="degree")
        if l:
            p.add_argument("--l", type=int, required=True, help="grid multiple, N = n * l")
        if C:
            p.add_argument("--C", type=float, default=bounds.RAKHMANOV_C)
        if samples:
            p.add_argument("--samples", type=int)
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if restarts:
            p.add_argument("--restarts", type=int, default=64)
        if strict:
            p.add_argument("--strict", action="store_true", help="require N >= 2n")
        if ranges:
            p.add_argument("--n-range", type=_parse_range, required=True, metavar="LO:HI")
            p.add_argument("--N-range", type=_parse_range, required=True, metavar="LO:HI")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    add("norms", "M(P), m(P) and optionally the discrete norm", poly=True, N=True)
    add("verify", "check the discrete-norm lower bound for P", poly=True, N=True, strict=True)
    add("bounds", "compare the three bound constants", N=True, n=True, C=True, strict=True)
    add("ineq6", "check the inequality on the derivative of |P|^2", poly=True, samples=True)
    add("schwarz", "slit-map Schwarz-lemma checks", poly=True, samples=True)
    add("sharpness", "equality case for N = n l", n=True, l=True)
    add("search", "extremal polynomial search", N=True, n=True, seed=True, restarts=True)
    add("table", "search sweep over (n, N) ranges", seed=True, restarts=True, ranges=True)
    return parser


def config_from_args(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    seed = getattr(args, "seed", 0)
    if SEED_ENV in environ and hasattr(args, "seed"):
        try:
            seed = int(environ[SEED_ENV])
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer") from None
    return RunConfig(
        command=args.command,
        poly=getattr(args, "poly", None),
        poly_file=getattr(args, "poly_file", None),
        N=getattr(args, "N", None),
        n=getattr(args, "n", None),
        l=getattr(args, "l", None),
        C=getattr(args, "C", bounds.RAKHMANOV_C),
        seed=seed,
        samples=getattr(args, "samples", None),
        restarts=getattr(args, "restarts", 64),
        format=args.format,
        strict=getattr(args, "strict", False),
        n_range=getattr(args, "n_range", ()),
        N_range=getattr(args, "N_range", ()),
    )


def load_polynomial(cfg: RunConfig) -> Polynomial:
    if cfg.poly is not None and cfg.poly_file is not None:
        raise UsageError("give either --poly or --poly-file, not both")
    if cfg.poly is not None:
        return Polynomial.from_json(cfg.poly)
    if cfg.poly_file is not None:
        try:
            text = Path(cfg.poly_file).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.poly_file}: {exc}") from None
        return Polynomial.from_json(text)
    raise UsageError("a polynomial is required (--poly or --poly-file)")


# --------------------------------------------------------------------------
# commands: each returns (ok, record) or (ok, rows)


def _cmd_norms(cfg):
    p = load_polynomial(cfg)
    try:
        rep = circle_norms.uniform_extrema(p)
    except NoConvergenceError:
        rep = circle_norms.grid_oracle_extrema(p)
    record = rep.to_json()
    if cfg.N is not None:
        record["grid"] = circle_norms.discrete_norm(p, cfg.N).to_json()
    return True, record


def _cmd_verify(cfg):
    p = load_polynomial(cfg)
    chk = bounds.verify_theorem(p, cfg.N, strict=cfg.strict)
    return chk.holds, chk.to_json()


def _cmd_bounds(cfg):
    cmp_ = bounds.compare_bounds(cfg.n, cfg.N, C=cfg.C, strict=cfg.strict)
    record = cmp_.to_json()
    if cfg.format == "csv":
        record = dict(zip(bounds.BoundsComparison.CSV_FIELDS, cmp_.csv_row()))
    return True, record


def _cmd_ineq6(cfg):
    p = load_polynomial(cfg)
    rep = proof_checks.check_ineq6(p, cfg.samples or 4096)
    return rep.passed, rep.to_json()


def _cmd_schwarz(cfg):
    p = load_polynomial(cfg)
    ctx = schwarz.build_context(p)
    eq4 = schwarz.check_eq4(ctx, cfg.samples or 1024)
    eq5 = schwarz.check_eq5(ctx, cfg.samples or 1000)
    lead = schwarz.leading_coeff_check(ctx)
    record = {
        "n": ctx.n,
        "m2": ctx.m2,
        "M2": ctx.M2,
        "eq4": eq4.to_json(),
        "eq5": eq5.to_json(),
        "leading": lead.to_json(),
    }
    ok = eq4.passed and record["eq5"]["pass"] and lead.passed
    record["pass"] = ok
    return ok, record


def _cmd_sharpness(cfg):
    rep = search.verify_sharpness(cfg.n, cfg.l)
    return rep.passed, rep.to_json()


def _cmd_search(cfg):
    res = search.search_extremal(search.SearchConfig(n=cfg.n, N=cfg.N, restarts=cfg.restarts, seed=cfg.seed))
    ok = res.gap is None or res.gap >= -search.SAFETY_TOL
    return ok, res.to_json()


def _cmd_table(cfg):
    base = search.SearchConfig(n=1, N=2, restarts=cfg.restarts, seed=cfg.seed)
    n_lo, n_hi = cfg.n_range
    N_lo, N_hi = cfg.N_range
    rows = search.sweep_table(range(n_lo, n_hi + 1), range(N_lo, N_hi + 1), base)
    ok = all(
        r["best_ratio"] <= r["cosine_inv"] + search.SAFETY_TOL for r in rows if r["cosine_mode"] == "strict"
    )
    return ok, rows


DISPATCH = {
    "norms": _cmd_norms,
    "verify": _cmd_verify,
    "bounds": _cmd_bounds,
    "ineq6": _cmd_ineq6,
    "schwarz": _cmd_schwarz,
    "sharpness": _cmd_sharpness,
    "search": _cmd_search,
    "table": _cmd_table,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ok, result = DISPATCH[cfg.command](cfg)
    except (UsageError, OutOfRangeError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except TheoremViolationError as exc:
        err.write(f"check failed: {exc}\n")
        return 1
    except CircleNormError as exc:
        # precondition failures on the supplied polynomial (degree 0, P(0) = 0, ...)
        err.write(f"error: {exc}\n")
        return 2
    if isinstance(result, list):
        _emit(out, cfg.format, rows=result)
    else:
        _emit(out, cfg.format, record=result)
    if not ok:
        err.write("check failed\n")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
