"""Exact Jacobi polynomial values and certified zeros.

Everything here is rational arithmetic; the mpmath pieces only produce
candidate points which are then certified by exact sign changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .algebra import MultiPoly, as_rational
from .laguerre import certify_brackets, mpf_to_fraction, newton_polish, to_mpf


@dataclass(frozen=True)
class JacobiParams:
    n: int
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.n < 0:
            raise ValueError(f"degree must be non-negative, got {self.n}")
        if self.alpha <= -1 or self.beta <= -1:
            raise ValueError("alpha and beta must exceed -1")

    @property
    def b(self) -> Fraction:
        """The shifted large parameter beta + n."""
        return self.beta + self.n


@dataclass(frozen=True)
class CertifiedZero:
    k: int
    lo: Fraction
    hi: Fraction
    midpoint: mpmath.mpf

    @property
    def exact_midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def _jacobi_recurrence(n, alpha, beta, z):
    if n == 0:
        return 1
    prev = 1
    cur = (alpha + 1) + (alpha + beta + 2) * (z - 1) / 2
    for m in range(2, n + 1):
        s = 2 * m + alpha + beta
        c1 = 2 * m * (m + alpha + beta) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * z + alpha * alpha - beta * beta)
        c3 = 2 * (m + alpha - 1) * (m + beta - 1) * s
        prev, cur = cur, (c2 * cur - c3 * prev) / c1
    return cur


def oracle_eval(params: JacobiParams, z) -> Fraction:
    """Exact P_n^(alpha,beta)(z) for rational z."""
    return Fraction(_jacobi_recurrence(params.n, params.alpha, params.beta, as_rational(z)))


def jacobi_eval_mp(params: JacobiParams, z):
    return mpmath.mpf(_jacobi_recurrence(params.n, to_mpf(params.alpha), to_mpf(params.beta), to_mpf(z)))


@lru_cache(maxsize=64)
def jacobi_poly(params: JacobiParams) -> MultiPoly:
    """P_n^(alpha,beta) expanded in powers of (z - 1), stored in symbol x."""
    # binom(n+a, n) 2F1(-n, n+a+b+1; a+1; (1-z)/2)
    n, a, b = params.n, params.alpha, params.beta
    lead = Fraction(1)
    for i in range(1, n + 1):
        lead = lead * (a + i) / i
    coeffs = []
    term = lead
    for m in range(n + 1):
        # coefficient of (z-1)^m: term * (-1/2)^m
        coeffs.append(term * Fraction(-1, 2) ** m)
        term = term * (-n + m) * (n + a + b + 1 + m) / ((a + 1 + m) * (m + 1))
    return MultiPoly.from_coeffs("x", coeffs)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def jacobi_matrix_estimates(params: JacobiParams) -> np.ndarray:
    """Double-precision zeros from the symmetric Jacobi matrix."""
    n, a, b = params.n, float(params.alpha), float(params.beta)
    i = np.arange(n, dtype=float)
    s = 2 * i + a + b
    diag = np.empty(n)
    diag[0] = (b - a) / (a + b + 2)
    if n > 1:
        diag[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2))
    k = np.arange(1, n, dtype=float)
    sk = 2 * k + a + b
    with np.errstate(invalid="ignore", divide="ignore"):
        off2 = 4 * k * (k + a) * (k + b) * (k + a + b) / (sk**2 * (sk + 1) * (sk - 1))
    if n > 1:
        off2[0] = 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
    return eigvalsh_tridiagonal(diag, np.sqrt(off2))


def _grid_brackets(sign_at, n: int, digits: int):
    # Fallback: refine a uniform rational grid until n sign changes appear,
    # then bisect each exactly.
    m = 4 * n + 4
    while True:
        grid = [Fraction(-1) + Fraction(2 * i, m) for i in range(1, m)]
        signs = [sign_at(z) for z in grid]
        cells = [(grid[i], grid[i + 1]) for i in range(len(grid) - 1) if signs[i] * signs[i + 1] < 0]
        zero_hits = [z for z, s in zip(grid, signs) if s == 0]
        if len(cells) + len(zero_hits) == n and not zero_hits:
            break
        if m > 10**7:
            raise ArithmeticError("grid scan failed to isolate the Jacobi zeros")
        m *= 4
    width = Fraction(1, 10 ** (digits - 1))
    out = []
    for lo, hi in cells:
        slo = sign_at(lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            sm = sign_at(mid)
            if sm == 0:
                lo, hi = mid - width / 4, mid + width / 4
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
        out.append((lo, hi))
    return out


def oracle_zeros(params: JacobiParams, digits: int = 16) -> list[CertifiedZero]:
    """All zeros z_1 < ... < z_n of P_n^(alpha,beta), each enclosed in a
    rational bracket of width <= 10^(1-digits) with an exact sign change."""
    if params.n < 1:
        raise ValueError("oracle_zeros needs n >= 1")
    if digits < 16:
        raise ValueError("digits must be at least 16")
    n = params.n
    poly = jacobi_poly(params)

    def sign_at(z: Fraction) -> int:
        return _sign(poly.horner("x", z - 1))

    half = Fraction(1, 2 * 10 ** (digits - 1))
    with mpmath.workdps(digits + 20):
        a, b = to_mpf(params.alpha), to_mpf(params.beta)

        def f_and_df(z):
            val = _jacobi_recurrence(n, a, b, z)
            der = (n + a + b + 1) / 2 * _jacobi_recurrence(n - 1, a + 1, b + 1, z)
            return val, der

        try:
            seeds = jacobi_matrix_estimates(params)
            centers = sorted(newton_polish(f_and_df, s, digits + 10) for s in seeds)
            brackets = certify_brackets(sign_at, centers, [half] * n)
            if not all(-1 < lo and hi < 1 for lo, hi in brackets):
                raise ArithmeticError("zero bracket outside (-1, 1)")
        except (ArithmeticError, ZeroDivisionError):
            brackets = _grid_brackets(sign_at, n, digits)
        zeros = []
        for k, (lo, hi) in enumerate(brackets, start=1):
            zeros.append(CertifiedZero(k, lo, hi, to_mpf((lo + hi) / 2)))
    return zeros


def symmetry_map(params: JacobiParams, z):
    """P_n^(alpha,beta)(z) = sign * P_n^(beta,alpha)(-z); returns the swapped
    parameters, the reflected argument and the sign (-1)^n."""
    swapped = JacobiParams(params.n, params.beta, params.alpha)
    return swapped, -z, -1 if params.n % 2 else 1


def relative_error(approx, exact, digits: int = 32):
    """|approx - exact| / |exact| in mpmath at ``digits`` precision.

    Exact when both arguments are rationals, in which case a Fraction is
    returned.
    """
    exact = as_rational(exact)
    if exact == 0:
        raise ZeroDivisionError("relative error against an exact zero is undefined")
    if isinstance(approx, (int, Fraction)):
        return abs(Fraction(approx) - exact) / abs(exact)
    with mpmath.workdps(digits):
        e = to_mpf(exact)
        return abs(mpmath.mpf(approx) - e) / abs(e)

