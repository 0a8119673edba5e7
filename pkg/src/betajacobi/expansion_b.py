"""Alternative expansion in b = beta + n.

Two routes are provided: the finite identity

    P_n(1 - 2x/b) = (1 - x/b)^n sum_{k<=n} xi^k a_k(b, x) L_(n-k)^(alpha+k)(x),
    xi = x/(b - x),

and the asymptotic series (1 - x/b)^n [L_n Y + L_(n-1) Z] with Y, Z in 1/b
built from d_k(x; s).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .algebra import (
    B,
    INV_B,
    X,
    MultiPoly,
    TruncatedSeries,
    as_poly,
    as_rational,
    check_order,
    series_exp,
    series_log,
)
from .expansion_beta import (
    _basis_sum,
    _check_argument,
    _mode_for,
    _x_value,
    assemble_basis_coeffs,
    binomial_log_series,
    laguerre_combination,
    split_in_s,
)
from .laguerre import laguerre_shifted, to_mpf
from .oracle import JacobiParams

XI_S = "xi_s"


@dataclass(frozen=True)
class AKTable:
    order: int
    entries: tuple


@dataclass(frozen=True)
class DKTable:
    """d_{jk} for 0 <= k <= order, 0 <= j <= 2k, as polynomials in x."""

    order: int
    entries: tuple

    def poly(self, k: int) -> MultiPoly:
        from .algebra import S

        out = MultiPoly()
        for j, c in enumerate(self.entries[k]):
            out = out + c * S**j
        return out


@dataclass(frozen=True)
class YZTable:
    order: int
    n: int
    alpha: Fraction
    y: tuple
    z: tuple


@lru_cache(maxsize=None)
def _ak(K: int) -> tuple:
    # (1 - u)^b exp((b - x) u) with u = xi s, since x s = (b - x) u
    log_part = series_log(TruncatedSeries(XI_S, [1, -1], K)) * B
    exponent = log_part + TruncatedSeries(XI_S, [0, B - X], K)
    return tuple(as_poly(c) for c in series_exp(exponent).coeffs)


def generate_ak(K: int) -> AKTable:
    """a_k(b, x), k <= K, as polynomials in {b, x}."""
    check_order(K)
    return AKTable(K, _ak(K))


@lru_cache(maxsize=None)
def _dk(K: int) -> tuple:
    return split_in_s(series_exp(binomial_log_series(INV_B, K, with_prefactor=False)), K)


def generate_dk(K: int) -> DKTable:
    check_order(K)
    return DKTable(K, _dk(K))


def eval_finite_b(params: JacobiParams, x):
    """Exact P_n^(alpha,beta)(1 - 2x/b) through the finite a_k sum."""
    mode = _mode_for(x)
    x = _x_value(x, mode)
    b = params.b if mode == "exact" else to_mpf(params.b)
    if x == b:
        raise ValueError("x = b leaves xi undefined")
    n = params.n
    if n == 0:
        return Fraction(1) if mode == "exact" else mpmath.mpf(1)
    ak = generate_ak(n)
    xi = x / (b - x)
    total = 0
    for k in range(n, -1, -1):
        term = ak.entries[k].evaluate(b=b, x=x) * laguerre_shifted(n, params.alpha, k, x, mode)
        total = total * xi + term
    return (1 - x / b) ** n * total


def compute_psi(k: int, n: int, alpha, x, table: DKTable | None = None):
    """Psi_k(n, alpha, x) = sum_{j <= min(n, 2k)} d_{jk} L_(n-j)^(alpha+j)(x)."""
    table = table or generate_dk(k)
    mode = _mode_for(x)
    return laguerre_combination(table.entries[k], n, as_rational(alpha), _x_value(x, mode), mode)


@lru_cache(maxsize=256)
def _yz(K: int, n: int, alpha: Fraction) -> YZTable:
    y, z = assemble_basis_coeffs(generate_dk(K).entries, n, alpha)
    return YZTable(K, n, alpha, y, z)


def generic_yz(K: int) -> tuple:
    """(y_k, z_k), k <= K, as polynomials in {x, n, a}, valid for n >= 2k."""
    check_order(K)
    return assemble_basis_coeffs(generate_dk(K).entries, None, None)


def compute_yz(K: int, n: int, alpha) -> YZTable:
    """y_k(n, alpha, x), z_k(n, alpha, x) for k <= K as exact x-polynomials."""
    if n < 1:
        raise ValueError("compute_yz needs n >= 1")
    check_order(K)
    return _yz(K, n, as_rational(alpha))


def eval_expansion_b(params: JacobiParams, x, kmax: int, *, analytic: bool = False):
    """(1 - x/b)^n [L_n sum y_k/b^k + L_(n-1) sum z_k/b^k], k <= kmax,
    approximating P_n^(alpha,beta)(1 - 2x/b)."""
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    check_order(kmax)
    mode = _mode_for(x)
    x = _x_value(x, mode)
    _check_argument(params, x, params.b, kmax, analytic)
    if params.n == 0:
        return Fraction(1) if mode == "exact" else mpmath.mpf(1)
    b = params.b if mode == "exact" else to_mpf(params.b)
    table = compute_yz(kmax, params.n, params.alpha)
    w = _basis_sum(table.y, table.z, params.n, params.alpha, x, 1 / b, kmax, mode)
    return (1 - x / b) ** params.n * w


def psi_sum(params: JacobiParams, x, kmax: int):
    """(1 - x/b)^n sum_{k<=kmax} Psi_k / b^k."""
    check_order(kmax)
    mode = _mode_for(x)
    x = _x_value(x, mode)
    b = params.b if mode == "exact" else to_mpf(params.b)
    table = generate_dk(kmax)
    total = 0
    for k in range(kmax, -1, -1):
        total = total * (1 / b) + compute_psi(k, params.n, params.alpha, x, table)
    return (1 - x / b) ** params.n * total


def ak_in_inverse_b(K: int) -> TruncatedSeries:
    """sum_k a_k(b, x) xi^k s^k re-expanded in t = 1/b, times exp(x s) removed.

    Used to cross-check against sum_k d_k t^k: since b-degree(a_k) <= k/2
    and xi = x t/(1 - x t), only k <= 2K contribute through order K.
    """
    from .algebra import S

    check_order(2 * K)
    ak = generate_ak(2 * K).entries
    # xi = sum_{m>=1} x^m t^m
    xi = TruncatedSeries(INV_B, [0] + [X**m for m in range(1, 2 * K + 2)], 2 * K + 1)
    total = [MultiPoly()] * (K + 1)
    xi_pow = TruncatedSeries(INV_B, [1], 2 * K + 1)
    for k in range(2 * K + 1):
        for i, cb in enumerate(ak[k].coeffs_in("b")):
            # cb * b^i * xi^k s^k: shift the t-series of xi^k down by i
            for m in range(i, 2 * K + 2):
                if m - i > K or not xi_pow.coeffs[m]:
                    continue
                total[m - i] = total[m - i] + cb * xi_pow.coeffs[m] * S**k
        xi_pow = xi_pow * xi
    return TruncatedSeries(INV_B, total, K)
