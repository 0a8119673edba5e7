"""Command-line interface.

    betajacobi eval --n 10 --alpha 1/3 --beta 1000 --x 1 --method b --kmax 5 --compare-oracle
    betajacobi zeros --n 5 --alpha 1/3 --beta 100 --method delta --terms 3 --compare-oracle
    betajacobi laguerre-zeros --n 5 --alpha 1/3
    betajacobi oracle --n 5 --alpha 1/3 --beta 100
    betajacobi reproduce --table T1

Exit status is 0 when every requested comparison passes, 1 when a reproduced
cell fails, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .algebra import parse_rational
from .expansion_b import eval_expansion_b, eval_finite_b
from .expansion_beta import eval_expansion_beta
from .laguerre import LaguerreParams, laguerre_zeros, to_mpf
from .oracle import JacobiParams, oracle_eval, oracle_zeros, relative_error
from .reproduce import TABLE_IDS, run_reproduce
from .zeros import DELTA, EPSILON, all_zeros, attach_oracle

EVAL_METHODS = ("beta", "b", "finite", "oracle")
ZERO_METHODS = (EPSILON, DELTA, "oracle")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    n: int | None
    alpha: Fraction
    beta: Fraction | None
    x: Fraction | None
    z: Fraction | None
    method: str | None
    kmax: int
    terms: int
    digits: int
    fmt: str
    compare_oracle: bool
    scaling: str | None
    table: str | None
    jobs: int

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        def rational(name):
            text = getattr(ns, name, None)
            if text is None:
                return None
            try:
                return parse_rational(text)
            except ValueError as exc:
                raise UsageError(f"--{name}: {exc}") from None

        cfg = cls(
            subcommand=ns.command,
            n=getattr(ns, "n", None),
            alpha=rational("alpha") if getattr(ns, "alpha", None) is not None else Fraction(0),
            beta=rational("beta"),
            x=rational("x"),
            z=rational("z"),
            method=getattr(ns, "method", None),
            kmax=getattr(ns, "kmax", 0),
            terms=getattr(ns, "terms", 1),
            digits=ns.digits,
            fmt=ns.format,
            compare_oracle=getattr(ns, "compare_oracle", False),
            scaling=getattr(ns, "argument_scaling", None),
            table=getattr(ns, "table", None),
            jobs=getattr(ns, "jobs", 1),
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.digits < 16:
            raise UsageError("--digits must be at least 16")
        if self.kmax < 0:
            raise UsageError("--kmax must be non-negative")
        if self.terms < 1:
            raise UsageError("--terms must be at least 1")
        if self.n is not None and self.n < 0:
            raise UsageError("--n must be non-negative")
        if self.alpha <= -1 or (self.beta is not None and self.beta <= -1):
            raise UsageError("alpha and beta must exceed -1")
        if self.x is not None and self.z is not None:
            raise UsageError("give either --x or --z, not both")

    def jacobi(self) -> JacobiParams:
        if self.n is None or self.beta is None:
            raise UsageError("--n and --beta are required")
        return JacobiParams(self.n, self.alpha, self.beta)


def decimal(value, digits: int) -> str | None:
    """Decimal string with ``digits`` significant figures."""
    if value is None:
        return None
    with mpmath.workdps(digits + 10):
        v = to_mpf(value) if isinstance(value, (int, Fraction)) else mpmath.mpf(value)
        return mpmath.nstr(v, digits)


def _scale(params: JacobiParams, scaling: str) -> Fraction:
    return params.beta if scaling == "beta" else params.b


def _natural_scaling(method: str) -> str:
    return "beta" if method in ("beta", EPSILON, "oracle") else "b"


# -- subcommands ---------------------------------------------------------------


def run_eval(cfg: RunConfig) -> tuple[dict, int]:
    params = cfg.jacobi()
    method = cfg.method
    scaling = cfg.scaling or _natural_scaling(method)
    if cfg.z is not None:
        z = cfg.z
    elif cfg.x is not None:
        z = 1 - 2 * cfg.x / _scale(params, scaling)
    else:
        raise UsageError("eval needs --x or --z")
    kmax = cfg.kmax if method in ("beta", "b") else None
    if method == "beta":
        value = eval_expansion_beta(params, (1 - z) * params.beta / 2, cfg.kmax)
    elif method == "b":
        value = eval_expansion_b(params, (1 - z) * params.b / 2, cfg.kmax)
    elif method == "finite":
        value = eval_finite_b(params, (1 - z) * params.b / 2)
    else:
        value = oracle_eval(params, z)
    exact = err = None
    if cfg.compare_oracle:
        exact = oracle_eval(params, z)
        err = relative_error(value, exact, cfg.digits) if exact != 0 else None
    report = {
        "params": {"n": params.n, "alpha": str(params.alpha), "beta": str(params.beta)},
        "method": method,
        "kmax": kmax,
        "value": decimal(value, cfg.digits),
        "oracle": decimal(exact, cfg.digits),
        "rel_error": decimal(err, cfg.digits),
    }
    return report, 0


def run_zeros(cfg: RunConfig) -> tuple[list, int]:
    params = cfg.jacobi()
    if params.n < 1:
        raise UsageError("zeros needs --n >= 1")
    scaling = cfg.scaling or _natural_scaling(cfg.method)
    scale = to_mpf(_scale(params, scaling))
    need_oracle = cfg.compare_oracle or cfg.method == "oracle"
    oracle = oracle_zeros(params, cfg.digits) if need_oracle else None
    rows = []
    with mpmath.workdps(cfg.digits + 10):
        if cfg.method == "oracle":
            for o in oracle:
                rows.append((o.k, o.midpoint, (1 - o.midpoint) * scale / 2, o.midpoint, None))
        else:
            for a in all_zeros(params, cfg.method, cfg.terms, cfg.digits):
                z, x, oz, err = a.z, a.x, None, None
                if oracle is not None:
                    a = attach_oracle(a, oracle[a.k - 1], cfg.digits)
                    oz, err = a.oracle.midpoint, a.rel_error
                if cfg.scaling is not None:
                    x = (1 - z) * scale / 2
                rows.append((a.k, z, x, oz, err))
    d = cfg.digits
    out = [
        {"k": k, "z": decimal(z, d), "x": decimal(x, d), "oracle_z": decimal(oz, d), "rel_error": decimal(e, d)}
        for k, z, x, oz, e in rows
    ]
    return out, 0


def run_laguerre_zeros(cfg: RunConfig) -> tuple[list, int]:
    if cfg.n is None or cfg.n < 1:
        raise UsageError("laguerre-zeros needs --n >= 1")
    zs = laguerre_zeros(LaguerreParams(cfg.n, cfg.alpha), cfg.digits)
    out = []
    for k, (x, (lo, hi)) in enumerate(zip(zs.zeros, zs.brackets), start=1):
        out.append({"k": k, "x": decimal(x, cfg.digits), "lo": str(lo), "hi": str(hi)})
    return out, 0


def run_oracle(cfg: RunConfig) -> tuple[object, int]:
    params = cfg.jacobi()
    if cfg.z is not None or cfg.x is not None:
        z = cfg.z if cfg.z is not None else 1 - 2 * cfg.x / _scale(params, cfg.scaling or "beta")
        value = oracle_eval(params, z)
        return {
            "params": {"n": params.n, "alpha": str(params.alpha), "beta": str(params.beta)},
            "z": str(z),
            "value": decimal(value, cfg.digits),
            "exact": str(value),
        }, 0
    if params.n < 1:
        raise UsageError("listing zeros needs --n >= 1")
    out = []
    for o in oracle_zeros(params, cfg.digits):
        out.append({"k": o.k, "z": decimal(o.midpoint, cfg.digits), "lo": str(o.lo), "hi": str(o.hi)})
    return out, 0


def run_reproduce_cmd(cfg: RunConfig) -> tuple[list, int]:
    tables = [cfg.table] if cfg.table else list(TABLE_IDS)
    rows, status = [], 0
    for t in tables:
        report = run_reproduce(t, cfg.digits, cfg.jobs)
        if not report.passed:
            status = 1
        for c in report.cells:
            rows.append(
                {
                    "table": c.table,
                    "coords": ",".join(f"{k}={v}" for k, v in c.coords.items()),
                    "published": decimal(c.published, 2),
                    "computed": decimal(c.computed, 3),
                    "pass": c.passed,
                    "source": c.source,
                }
            )
    return rows, status


COMMANDS = {
    "eval": run_eval,
    "zeros": run_zeros,
    "laguerre-zeros": run_laguerre_zeros,
    "oracle": run_oracle,
    "reproduce": run_reproduce_cmd,
}


# -- output ------------------------------------------------------------------


def _flatten(row: dict) -> dict:
    flat = {}
    for key, val in row.items():
        if isinstance(val, dict):
            for sub, v in val.items():
                flat[f"{key}.{sub}"] = v
        else:
            flat[key] = val
    return flat


def render(result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2)
    rows = [_flatten(r) for r in (result if isinstance(result, list) else [result])]
    if not rows:
        return ""
    header = list(rows[0])
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    cells = [[("" if r[h] is None else str(r[h])) for h in header] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(line.rstrip() for line in lines)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betajacobi",
        description="Large-beta Laguerre expansions of Jacobi polynomials and their zeros.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, jacobi=True):
        p.add_argument("--n", type=int, help="degree")
        p.add_argument("--alpha", default="0", help="rational p/q, > -1")
        if jacobi:
            p.add_argument("--beta", help="rational p/q, > -1")
        p.add_argument("--digits", type=int, default=32, help="working/output digits (>= 16)")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    def point(p):
        p.add_argument("--x", help="Laguerre variable, mapped to z by the argument scaling")
        p.add_argument("--z", help="Jacobi argument")
        p.add_argument("--argument-scaling", choices=("beta", "b"), default=None)

    p = sub.add_parser("eval", help="evaluate an expansion at one point")
    common(p)
    point(p)
    p.add_argument("--method", choices=EVAL_METHODS, default="b")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--compare-oracle", action="store_true")

    p = sub.add_parser("zeros", help="approximate all zeros")
    common(p)
    p.add_argument("--method", choices=ZERO_METHODS, default=DELTA)
    p.add_argument("--terms", type=int, default=3)
    p.add_argument("--compare-oracle", action="store_true")
    p.add_argument("--argument-scaling", choices=("beta", "b"), default=None)

    p = sub.add_parser("laguerre-zeros", help="certified zeros of L_n^(alpha)")
    common(p, jacobi=False)

    p = sub.add_parser("oracle", help="exact values or certified zeros")
    common(p)
    point(p)

    p = sub.add_parser("reproduce", help="recompute published error tables")
    p.add_argument("--table", choices=TABLE_IDS, default=None, help="all tables when omitted")
    p.add_argument("--digits", type=int, default=32)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        result, status = COMMANDS[cfg.subcommand](cfg)
    except (UsageError, ValueError, ArithmeticError) as exc:
        print(f"betajacobi {ns.command}: error: {exc}", file=sys.stderr)
        return 2
    print(render(result, cfg.fmt))
    return status


if __name__ == "__main__":
    sys.exit(main())
