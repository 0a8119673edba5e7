"""Recompute the published error tables and compare cell by cell.

Published values live in ``data/published.json``. A cell passes when the
computed relative error is within a factor of 10 of the published one, or when
both sit below the rounding floor 10^(2 - digits).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import mpmath

from .algebra import parse_rational
from .expansion_b import eval_expansion_b
from .expansion_beta import eval_expansion_beta
from .laguerre import to_mpf
from .oracle import JacobiParams, oracle_eval, oracle_zeros, relative_error
from .zeros import all_zeros, attach_oracle, jacobi_zero_approx

TABLE_IDS = ("T1", "T2", "T3", "T4", "R2", "R3", "S31")
FACTOR = 10


@dataclass(frozen=True)
class CellResult:
    table: str
    coords: dict
    published: Fraction
    computed: mpmath.mpf
    passed: bool
    source: str


@dataclass
class TableReport:
    table: str
    digits: int
    cells: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.cells) and all(c.passed for c in self.cells)

    @property
    def failures(self) -> list:
        return [c for c in self.cells if not c.passed]


@lru_cache(maxsize=1)
def load_published() -> dict:
    text = resources.files("betajacobi").joinpath("data/published.json").read_text()
    return json.loads(text)


def published_cells(table: str) -> list[dict]:
    if table not in TABLE_IDS:
        raise ValueError(f"unknown table {table!r}; choose from {', '.join(TABLE_IDS)}")
    return [c for c in load_published()["cells"] if c["table"] == table]


def setup(table: str) -> dict:
    return load_published()["setups"][table]


def cell_passes(computed, published, digits: int) -> bool:
    """Factor-10 agreement, or both values under the floor 10^(2-digits)."""
    with mpmath.workdps(max(digits, 20)):
        c, p = to_mpf(computed), to_mpf(published)
        floor = mpmath.mpf(10) ** (2 - digits)
        if c < floor and p < floor:
            return True
        if c == 0 or p == 0:
            return False
        return p / FACTOR <= c <= p * FACTOR


# -- per-table computations -------------------------------------------------


def _expansion_error(table: str, coords: dict, digits: int):
    s = setup(table)
    beta = Fraction(coords.get("beta", 0)) or parse_rational(s["beta"])
    params = JacobiParams(s["n"], parse_rational(s["alpha"]), beta)
    x = parse_rational(s["x"])
    if s["method"] == "beta":
        approx = eval_expansion_beta(params, x, coords["kmax"])
        exact = oracle_eval(params, 1 - 2 * x / params.beta)
    else:
        approx = eval_expansion_b(params, x, coords["kmax"])
        exact = oracle_eval(params, 1 - 2 * x / params.b)
    return relative_error(approx, exact, digits)


@lru_cache(maxsize=32)
def _zero_errors(n: int, alpha: Fraction, beta: Fraction, method: str, terms: int, digits: int) -> tuple:
    params = JacobiParams(n, alpha, beta)
    oracle = oracle_zeros(params, digits)
    approx = all_zeros(params, method, terms, digits)
    return tuple(attach_oracle(a, o, digits).rel_error for a, o in zip(approx, oracle))


def _zero_error(table: str, coords: dict, digits: int):
    s = setup(table)
    alpha, beta = parse_rational(s["alpha"]), parse_rational(s["beta"])
    if table in ("T2", "T4"):
        errs = _zero_errors(s["n"], alpha, beta, s["method"], coords["terms"], digits)
        return errs[coords["k"] - 1]
    # large-n spot values: only the requested zero is expanded
    params = JacobiParams(coords["n"], alpha, beta)
    oracle = _oracle_cached(params, digits)[coords["k"] - 1]
    approx = jacobi_zero_approx(params, coords["k"], s["method"], s["terms"], digits)
    return attach_oracle(approx, oracle, digits).rel_error


@lru_cache(maxsize=8)
def _oracle_cached(params: JacobiParams, digits: int):
    return oracle_zeros(params, digits)


def compute_cell(table: str, coords: dict, digits: int = 32):
    """Relative error of the expansion for one published cell."""
    if table in ("T1", "T3", "R2"):
        return _expansion_error(table, coords, digits)
    return _zero_error(table, coords, digits)


def _evaluate(args):
    record, digits = args
    with mpmath.workdps(digits):
        err = compute_cell(record["table"], record["coords"], digits)
        computed = +to_mpf(err) if isinstance(err, Fraction) else +err
    published = parse_decimal(record["value"])
    return CellResult(
        record["table"],
        dict(record["coords"]),
        published,
        computed,
        cell_passes(computed, published, digits),
        record["source"],
    )


def parse_decimal(text: str) -> Fraction:
    return Fraction(text)


def run_reproduce(table: str, digits: int = 32, jobs: int = 1) -> TableReport:
    """Recompute every published cell of ``table``; cells are independent."""
    if digits < 16:
        raise ValueError("digits must be at least 16")
    work = [(rec, digits) for rec in published_cells(table)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate, work))
    else:
        results = [_evaluate(w) for w in work]
    return TableReport(table, digits, results)
