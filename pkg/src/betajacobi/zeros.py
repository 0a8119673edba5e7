"""Large-beta expansions of the zeros of P_n^(alpha,beta).

With l a zero of L_n^(alpha), the zero x_k of P_n(1 - 2x/beta) near
l_(n-k+1) is written x_k = l + sum_j eps_j / beta^j ("epsilon" method), or
x_k = l + sum_j delta_j / b^j with b = beta + n ("delta" method). The
coefficients follow from solving W(l + eps) = 0 order by order in the small
parameter, where W is the U/V (resp. Y/Z) combination of L_n and L_(n-1).

Two independent routes are implemented: a numeric reversion per base point in
mpmath, and a symbolic one giving eps_j, delta_j as polynomials in
{x, n, a} (x standing for the base point).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath

from .algebra import A, N, X, MultiPoly, as_rational, check_order
from .expansion_b import compute_yz, generate_dk
from .expansion_beta import compute_uv, generate_ck
from .laguerre import LaguerreParams, cleared_basis, laguerre_shifted, laguerre_zeros, to_mpf
from .oracle import CertifiedZero, JacobiParams, relative_error

EPSILON = "epsilon"
DELTA = "delta"
METHODS = (EPSILON, DELTA)


class DegenerateBasePoint(ArithmeticError):
    """L_n'(l) vanished to working precision; l is not a simple zero."""


@dataclass(frozen=True)
class ZeroExpansionCoeffs:
    method: str
    base: mpmath.mpf
    terms: tuple
    order: int


@dataclass(frozen=True)
class ZeroApprox:
    k: int
    x: mpmath.mpf
    z: mpmath.mpf
    method: str
    order: int
    base: mpmath.mpf
    terms: tuple
    oracle: CertifiedZero | None = None
    rel_error: mpmath.mpf | None = None


def _check_method(method: str) -> None:
    if method not in METHODS:
        raise ValueError(f"unknown zero-expansion method {method!r}")


# -- printed closed forms ----------------------------------------------------


def _printed_polys():
    x, n, a = X, N, A
    eps = [
        -x / 2 * (a + 2 * n + x + 1),
        x / 24 * (5 + 7 * a**2 + 12 * a + 24 * n * (1 + a + n) + 13 * (1 + a + 2 * n) * x + 4 * x**2),
        -x / 48 * (
            9 * a**3 + 42 * n * a**2 + 23 * x * a**2 + 21 * a**2 + 42 * x * a + 72 * n**2 * a
            + 84 * x * n * a + 15 * a + 14 * x**2 * a + 72 * n * a + 19 * x + 72 * n**2
            + 30 * n + 48 * n**3 + 84 * n**2 * x + 3 + 84 * n * x + 14 * x**2
            + 28 * n * x**2 + 2 * x**3
        ),
    ]
    delta = [
        -x / 2 * (a + x + 1),
        x / 24 * (5 + 7 * a**2 + 12 * a + (13 + 13 * a + 2 * n) * x + 4 * x**2),
        -x / 48 * (
            9 * a**3 + 23 * x * a**2 + 21 * a**2 + 42 * x * a + 15 * a + 6 * x * n * a
            + 14 * x**2 * a + 2 * x**3 + 6 * n * x + 19 * x + 4 * n * x**2 + 14 * x**2 + 3
        ),
    ]
    return {EPSILON: eps, DELTA: delta}


PRINTED = _printed_polys()


def printed_poly(method: str, j: int) -> MultiPoly:
    _check_method(method)
    if j not in (1, 2, 3):
        raise ValueError("closed forms exist for orders 1..3 only; use generate_zero_coeffs")
    return PRINTED[method][j - 1]


def printed_epsilon(j: int, n: int, alpha, x):
    """Closed-form eps_j(n, alpha, x), j in 1..3; exact for rational x."""
    return printed_poly(EPSILON, j).evaluate(x=x, n=n, a=as_rational(alpha))


def printed_delta(j: int, n: int, alpha, x):
    """Closed-form delta_j(n, alpha, x), j in 1..3; exact for rational x."""
    return printed_poly(DELTA, j).evaluate(x=x, n=n, a=as_rational(alpha))


# -- numeric reversion -------------------------------------------------------


def _basis_tables(method: str, T: int, n: int, alpha: Fraction):
    if method == EPSILON:
        t = compute_uv(T, n, alpha)
        return t.u, t.v
    t = compute_yz(T, n, alpha)
    return t.y, t.z


def _taylor(poly: MultiPoly, at, order: int) -> list:
    out = []
    d = poly
    for m in range(order + 1):
        out.append(d.horner("x", at) / factorial(m) if d else mpmath.mpf(0))
        d = d.diff("x")
    return out


def _truncated_mul(f: list, g: list, order: int) -> list:
    out = [0] * (order + 1)
    for i, fi in enumerate(f[: order + 1]):
        if fi == 0:
            continue
        for j in range(order + 1 - i):
            out[i + j] += fi * g[j]
    return out


def revert(w: list[list], pivot_tol) -> list:
    """Solve sum_k t^k sum_m w[k][m] eps^m = 0 for eps = sum_{j>=1} eps_j t^j.

    ``w[k][m]`` are Taylor coefficients of the order-k part of W around the
    base point; w[0][0] must vanish. Returns [eps_1, ..., eps_T].
    """
    T = len(w) - 1
    pivot = w[0][1]
    if abs(pivot) <= pivot_tol:
        raise DegenerateBasePoint("vanishing derivative at the base point")
    eps = [0] * (T + 1)
    for j in range(1, T + 1):
        # powers of eps as t-series truncated at order j
        powers = [[1] + [0] * j]
        for _ in range(j):
            powers.append(_truncated_mul(powers[-1], eps, j))
        resid = 0
        for k in range(j + 1):
            for m, c in enumerate(w[k]):
                if c == 0 or m > j:
                    continue
                resid += c * powers[m][j - k]
        eps[j] = -resid / pivot
    return eps[1:]


def generate_zero_coeffs(method: str, n: int, alpha, ell, T: int, digits: int = 32) -> ZeroExpansionCoeffs:
    """Coefficients eps_1..eps_T (or delta_1..delta_T) at the Laguerre zero ``ell``.

    L_n and L_(n-1) are Taylor-expanded at ell through their derivative
    identities, the u_k/v_k (y_k/z_k) polynomials are shifted exactly, and the
    resulting double series is reverted order by order.
    """
    _check_method(method)
    if T < 1:
        raise ValueError("order T must be at least 1")
    check_order(T)
    alpha = as_rational(alpha)
    first, second = _basis_tables(method, T, n, alpha)
    with mpmath.workdps(digits + 10):
        ell = mpmath.mpf(ell)
        fa = [mpmath.mpf(0)]
        fb = []
        for m in range(T + 1):
            sign = -1 if m % 2 else 1
            if m:
                fa.append(sign * laguerre_shifted(n, alpha, m, ell, "float") / factorial(m))
            fb.append(sign * laguerre_shifted(n - 1, alpha, m, ell, "float") / factorial(m))
        w = []
        for k in range(T + 1):
            row = _truncated_mul(fa, _taylor(first[k], ell, T), T)
            row2 = _truncated_mul(fb, _taylor(second[k], ell, T), T)
            w.append([p + q for p, q in zip(row, row2)])
        scale = max(abs(c) for c in fa + fb[:1])
        tol = scale * mpmath.mpf(10) ** (8 - digits)
        terms = revert(w, tol)
    return ZeroExpansionCoeffs(method, ell, tuple(terms), T)


# -- symbolic reversion --------------------------------------------------------


@lru_cache(maxsize=None)
def symbolic_zero_coeffs(method: str, T: int) -> tuple:
    """eps_1..eps_T (or delta_1..delta_T) as polynomials in {x, n, a}.

    At a zero l of L_n every derivative L_n^(i)(l) equals (-1)^i Q_i(l) L_(n-1)(l)
    with Q_i = q_i / x^i, so W(l + eps)/L_(n-1)(l) becomes a double series
    with coefficients in {x, n, a} once multiplied by x^(2T).
    """
    _check_method(method)
    check_order(T)
    rows = generate_ck(T).entries if method == EPSILON else generate_dk(T).entries
    top = 2 * T
    q = [cleared_basis(i)[1] for i in range(top + 1)]
    w = []
    for k in range(T + 1):
        row = []
        for M in range(T + 1 - k):
            acc = MultiPoly()
            for j, c in enumerate(rows[k]):
                if not c:
                    continue
                for r in range(M + 1):
                    m = M - r
                    dc = c.diff("x", r) / factorial(r) if r else c
                    if not dc:
                        continue
                    term = dc * q[j + m] * X ** (top - j - m) / factorial(m)
                    acc = acc - term if m % 2 else acc + term
            row.append(acc)
        row += [MultiPoly()] * (T + 1 - len(row))
        w.append(row)
    # pivot is -(n + a) x^(top-1)
    eps = [MultiPoly()] * (T + 1)
    for j in range(1, T + 1):
        powers = [[MultiPoly.const(1)] + [MultiPoly()] * j]
        for _ in range(j):
            powers.append(_truncated_mul(powers[-1], eps, j))
        resid = MultiPoly()
        for k in range(j + 1):
            for m in range(j + 1):
                if w[k][m] and powers[m][j - k]:
                    resid = resid + w[k][m] * powers[m][j - k]
        eps[j] = resid.div_linear("a", -N).div_monomial("x", top - 1)
    return tuple(eps[1:])


# -- assembling zero approximations -----------------------------------------


def _small_parameter(params: JacobiParams, method: str):
    return params.beta if method == EPSILON else params.b


def jacobi_zero_approx(
    params: JacobiParams,
    k: int,
    method: str = DELTA,
    T: int = 3,
    digits: int = 32,
    ell_set=None,
) -> ZeroApprox:
    """Approximate z_k (z_1 < ... < z_n) from the Laguerre zero l_(n-k+1)."""
    _check_method(method)
    n = params.n
    if not 1 <= k <= n:
        raise ValueError(f"zero index {k} outside 1..{n}")
    if ell_set is None:
        ell_set = laguerre_zeros(LaguerreParams(n, params.alpha), digits + 10)
    ell = ell_set[n - k + 1]
    coeffs = generate_zero_coeffs(method, n, params.alpha, ell, T, digits)
    with mpmath.workdps(digits + 10):
        inv = 1 / to_mpf(_small_parameter(params, method))
        x = ell
        for j, e in enumerate(coeffs.terms, start=1):
            x += e * inv**j
        z = 1 - 2 * x * inv
    return ZeroApprox(k, x, z, method, T, ell, coeffs.terms)


def all_zeros(params: JacobiParams, method: str = DELTA, T: int = 3, digits: int = 32) -> list[ZeroApprox]:
    """Approximations of all n zeros, ordered by z ascending."""
    if params.n < 1:
        raise ValueError("all_zeros needs n >= 1")
    ell_set = laguerre_zeros(LaguerreParams(params.n, params.alpha), digits + 10)
    return [jacobi_zero_approx(params, k, method, T, digits, ell_set) for k in range(1, params.n + 1)]


def attach_oracle(approx: ZeroApprox, oracle: CertifiedZero, digits: int = 32) -> ZeroApprox:
    err = relative_error(approx.z, oracle.exact_midpoint, digits)
    return ZeroApprox(
        approx.k, approx.x, approx.z, approx.method, approx.order, approx.base, approx.terms, oracle, err
    )
