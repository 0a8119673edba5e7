"""Expansion of P_n^(alpha,beta)(1 - 2x/beta) in inverse powers of beta.

The coefficients c_k(n, x; s) come from

    (1 - x/beta)^n (1 - x s/(beta - x))^(n + beta) = exp(-x s) sum_k c_k / beta^k,

each power s^j turning into L_(n-j)^(alpha+j)(x). Rewriting those shifted
Laguerre polynomials in the {L_n, L_(n-1)} basis gives the U/V form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath

from .algebra import (
    INV_BETA,
    N,
    S,
    X,
    MultiPoly,
    TruncatedSeries,
    as_poly,
    as_rational,
    check_order,
    series_exp,
    series_log,
)
from .laguerre import LaguerreParams, cleared_basis, laguerre_eval, laguerre_shifted, to_mpf
from .oracle import JacobiParams


@dataclass(frozen=True)
class CKTable:
    """c_{jk} for 0 <= k <= order, 0 <= j <= 2k, as polynomials in {n, x}."""

    order: int
    entries: tuple

    def poly(self, k: int) -> MultiPoly:
        """c_k(n, x; s) with the s-dependence restored."""
        out = MultiPoly()
        for j, c in enumerate(self.entries[k]):
            out = out + c * S**j
        return out


@dataclass(frozen=True)
class UVTable:
    """u_k, v_k for numeric (n, alpha) as polynomials in x."""

    order: int
    n: int
    alpha: Fraction
    u: tuple
    v: tuple


def binomial_log_series(param: str, K: int, with_prefactor: bool) -> TruncatedSeries:
    """log of (1 - x t)^n (1 - x s t/(1 - x t))^(n + 1/t) exp(x s) to order K.

    With ``with_prefactor=False`` this is log of (1 - x s t/(1 - x t))^(1/t) exp(x s),
    the n-free variant used with t = 1/b.
    """
    # w = x s t / (1 - x t) = sum_{m>=1} s x^m t^m
    w = TruncatedSeries(param, [0] + [S * X**m for m in range(1, K + 2)], K + 1)
    log_w = series_log(1 - w)
    total = log_w.shift_down() + S * X
    if with_prefactor:
        log_pre = series_log(TruncatedSeries(param, [1, -X], K + 1))
        total = total + (log_pre + log_w).truncate(K) * N
    return total.truncate(K)


@lru_cache(maxsize=None)
def _ck_series(K: int) -> TruncatedSeries:
    return series_exp(binomial_log_series(INV_BETA, K, with_prefactor=True))


def split_in_s(series: TruncatedSeries, K: int) -> tuple:
    rows = []
    for k in range(K + 1):
        row = as_poly(series.coeffs[k]).coeffs_in("s") or [MultiPoly()]
        rows.append(tuple(row) + (MultiPoly(),) * (2 * k + 1 - len(row)))
    return tuple(rows)


def generate_ck(K: int) -> CKTable:
    """Exact c_{jk} up to order K."""
    check_order(K)
    return CKTable(K, split_in_s(_ck_series(K), K))


def _x_value(x, mode: str):
    return as_rational(x) if mode == "exact" else to_mpf(x)


def _mode_for(x) -> str:
    return "exact" if isinstance(x, (Rational, str)) else "float"


def laguerre_combination(rows, n: int, alpha, x, mode: str):
    """sum_j rows[j](x) L_(n-j)^(alpha+j)(x), rows free of s and n."""
    total = 0
    for j, c in enumerate(rows[: n + 1]):
        if c:
            total = total + c.evaluate(x=x) * laguerre_shifted(n, alpha, j, x, mode)
    return total


def compute_phi(k: int, n: int, alpha, x, table: CKTable | None = None):
    """Phi_k(n, alpha, x) = sum_{j <= min(n, 2k)} c_{jk} L_(n-j)^(alpha+j)(x)."""
    table = table or generate_ck(k)
    mode = _mode_for(x)
    x = _x_value(x, mode)
    rows = [c.substitute("n", n) for c in table.entries[k]]
    return laguerre_combination(rows, n, as_rational(alpha), x, mode)


def assemble_basis_coeffs(rows_by_k, n: int | None, alpha: Fraction | None):
    """Turn coefficient rows (in s-powers) into basis coefficients (u_k, v_k).

    Row k holds coefficients of s^j for j <= 2k, each divisible by x^k. With
    the cleared p_j = x^j P_j, the numerator sum_j c_{jk} p_j x^(2k-j) is
    divided exactly by x^(2k).

    With ``n=None`` the result stays symbolic in {x, n, a}; the sum then runs
    over all j <= 2k, which is the generic case n >= 2k.
    """
    us, vs = [], []
    for k, row in enumerate(rows_by_k):
        top = 2 * k if n is None else min(n, 2 * k)
        num_u, num_v = MultiPoly(), MultiPoly()
        for j in range(top + 1):
            c = row[j]
            if not c:
                continue
            p, q = cleared_basis(j)
            if n is not None:
                p, q = p.subs(n=n, a=alpha), q.subs(n=n, a=alpha)
            shift = X ** (2 * k - j)
            num_u = num_u + c * p * shift
            num_v = num_v + c * q * shift
        try:
            us.append(num_u.div_monomial("x", 2 * k))
            vs.append(num_v.div_monomial("x", 2 * k))
        except ValueError as exc:
            raise ArithmeticError(f"x-power cancellation failed at order {k}") from exc
    return tuple(us), tuple(vs)


def generic_uv(K: int) -> tuple:
    """(u_k, v_k), k <= K, as polynomials in {x, n, a}, valid for n >= 2k."""
    check_order(K)
    u, v = assemble_basis_coeffs(generate_ck(K).entries, None, None)
    return u, v


@lru_cache(maxsize=256)
def _uv(K: int, n: int, alpha: Fraction) -> UVTable:
    table = generate_ck(K)
    rows = [[c.substitute("n", n) for c in table.entries[k]] for k in range(K + 1)]
    u, v = assemble_basis_coeffs(rows, n, alpha)
    return UVTable(K, n, alpha, u, v)


def compute_uv(K: int, n: int, alpha) -> UVTable:
    """u_k(n, alpha, x), v_k(n, alpha, x) for k <= K as exact x-polynomials."""
    if n < 1:
        raise ValueError("compute_uv needs n >= 1")
    check_order(K)
    return _uv(K, n, as_rational(alpha))


def _check_argument(params: JacobiParams, x, large: Fraction, kmax: int, analytic: bool):
    if analytic:
        if kmax != params.n:
            raise ValueError("non-asymptotic evaluation is exact only with kmax = n")
        return
    if isinstance(x, Rational) and not 0 <= x < large:
        raise ValueError(
            f"x = {x} outside [0, {large}); pass analytic=True with kmax = n for the exact identity"
        )


def _basis_sum(u, v, n: int, alpha: Fraction, x, t, kmax: int, mode: str):
    U = V = 0
    for k in range(kmax, -1, -1):
        U = U * t + u[k].horner("x", x)
        V = V * t + v[k].horner("x", x)
    Ln = laguerre_eval(LaguerreParams(n, alpha), x, mode)
    Lm = laguerre_eval(LaguerreParams(n - 1, alpha), x, mode) if n else 0
    return Ln * U + Lm * V


def eval_expansion_beta(params: JacobiParams, x, kmax: int, *, analytic: bool = False):
    """L_n(x) sum_{k<=kmax} u_k/beta^k + L_(n-1)(x) sum_{k<=kmax} v_k/beta^k,
    approximating P_n^(alpha,beta)(1 - 2x/beta).

    Exact for rational x; mpmath otherwise. ``analytic=True`` lifts the
    0 <= x < beta restriction for the full (kmax = n) identity.
    """
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    check_order(kmax)
    mode = _mode_for(x)
    x = _x_value(x, mode)
    _check_argument(params, x, params.beta, kmax, analytic)
    if params.n == 0:
        return Fraction(1) if mode == "exact" else mpmath.mpf(1)
    table = compute_uv(kmax, params.n, params.alpha)
    t = 1 / params.beta if mode == "exact" else 1 / to_mpf(params.beta)
    return _basis_sum(table.u, table.v, params.n, params.alpha, x, t, kmax, mode)


def phi_sum(params: JacobiParams, x, kmax: int):
    """sum_{k<=kmax} Phi_k / beta^k, the un-rearranged form of the expansion."""
    check_order(kmax)
    mode = _mode_for(x)
    x = _x_value(x, mode)
    table = generate_ck(kmax)
    t = 1 / params.beta if mode == "exact" else 1 / to_mpf(params.beta)
    total = 0
    for k in range(kmax, -1, -1):
        total = total * t + compute_phi(k, params.n, params.alpha, x, table)
    return total
