"""Generalized Laguerre polynomials L_n^(alpha): evaluation, derivatives,
reduction of shifted polynomials to the {L_n, L_(n-1)} basis, and zeros."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath
import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .algebra import A, N, X, MultiPoly, as_rational, check_order


@dataclass(frozen=True)
class LaguerreParams:
    n: int
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        if self.n < 0:
            raise ValueError(f"degree must be non-negative, got {self.n}")
        if self.alpha <= -1:
            raise ValueError(f"alpha must exceed -1, got {self.alpha}")


def to_mpf(value):
    if isinstance(value, Rational):
        value = Fraction(value)
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


def _recurrence(n: int, alpha, x):
    # (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}
    prev, cur = 0, 1
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_eval(params: LaguerreParams, x, mode: str = "exact"):
    """L_n^(alpha)(x) by the upward three-term recurrence.

    ``mode="exact"`` needs a rational x and returns a Fraction; ``"float"``
    works in the current mpmath precision.
    """
    if mode == "exact":
        return Fraction(_recurrence(params.n, params.alpha, as_rational(x)))
    if mode == "float":
        return mpmath.mpf(_recurrence(params.n, to_mpf(params.alpha), to_mpf(x)))
    raise ValueError(f"unknown mode {mode!r}")


def laguerre_shifted(n: int, alpha, j: int, x, mode: str = "exact"):
    """L_(n-j)^(alpha+j)(x); zero when j > n."""
    if j > n:
        return Fraction(0) if mode == "exact" else mpmath.mpf(0)
    return laguerre_eval(LaguerreParams(n - j, as_rational(alpha) + j), x, mode)


def laguerre_derivative(params: LaguerreParams, x, j: int, mode: str = "exact"):
    """d^j/dx^j L_n^(alpha)(x) = (-1)^j L_(n-j)^(alpha+j)(x)."""
    if j < 0:
        raise ValueError("derivative order must be non-negative")
    value = laguerre_shifted(params.n, params.alpha, j, x, mode)
    return -value if j % 2 else value


@lru_cache(maxsize=None)
def laguerre_poly(n: int, alpha: Fraction) -> MultiPoly:
    """L_n^(alpha) as an exact polynomial in x."""
    # coefficient of x^i: (-1)^i binom(n+alpha, n-i) / i!
    coeffs = []
    for i in range(n + 1):
        binom = Fraction(1)
        for m in range(1, n - i + 1):
            binom = binom * (alpha + i + m) / m
        c = binom
        for m in range(1, i + 1):
            c = c / m
        coeffs.append(-c if i % 2 else c)
    return MultiPoly.from_coeffs("x", coeffs)


# -- reduction to the {L_n, L_(n-1)} basis ---------------------------------


@lru_cache(maxsize=None)
def _cleared_basis(J: int) -> tuple[tuple[MultiPoly, MultiPoly], ...]:
    # p_{j+1} = (a+j-x) p_j + (j-n-1) x p_{j-1}, same for q
    p = [MultiPoly.const(1), -N]
    q = [MultiPoly(), N + A]
    for j in range(1, J):
        factor = A + j - X
        tail = (N * -1 + (j - 1)) * X
        p.append(factor * p[j] + tail * p[j - 1])
        q.append(factor * q[j] + tail * q[j - 1])
    return tuple(zip(p[: J + 1], q[: J + 1]))


def cleared_basis(j: int) -> tuple[MultiPoly, MultiPoly]:
    """Symbolic (p_j, q_j) in {x, n, a} with p_j = x^j P_j, q_j = x^j Q_j.

    The recurrence is kept for j > n as well; there p_j L_n + q_j L_(n-1)
    vanishes identically, matching L_(n-j)^(alpha+j) = 0.
    """
    if j < 0:
        raise ValueError("basis index must be non-negative")
    return _cleared_basis(max(j, 1))[j]


def reduce_to_basis(params: LaguerreParams, j: int) -> tuple[MultiPoly, MultiPoly]:
    """Cleared (p_j, q_j) in x for numeric n, alpha, such that
    x^j L_(n-j)^(alpha+j)(x) = p_j L_n^(alpha)(x) + q_j L_(n-1)^(alpha)(x)."""
    if not 0 <= j <= params.n:
        raise ValueError(f"basis index {j} outside 0..{params.n}")
    p, q = cleared_basis(j)
    return p.subs(n=params.n, a=params.alpha), q.subs(n=params.n, a=params.alpha)


# -- zeros ------------------------------------------------------------------


@dataclass(frozen=True)
class LaguerreZeroSet:
    """Zeros l_1 < ... < l_n with certifying rational brackets."""

    params: LaguerreParams
    zeros: tuple
    brackets: tuple
    precision: int

    def __getitem__(self, k: int):
        """1-based access, matching l_k."""
        if not 1 <= k <= len(self.zeros):
            raise IndexError(k)
        return self.zeros[k - 1]

    def __len__(self):
        return len(self.zeros)


def tridiagonal_estimates(params: LaguerreParams) -> np.ndarray:
    """Eigenvalues of the Jacobi matrix of L_n^(alpha), double precision."""
    n, alpha = params.n, float(params.alpha)
    i = np.arange(n)
    diag = 2 * i + alpha + 1
    off = np.sqrt(np.arange(1, n) * (np.arange(1, n) + alpha))
    return eigvalsh_tridiagonal(diag, off)


def newton_polish(f_and_df, x0, digits: int, max_iter: int = 100):
    """Newton iteration in the current mp precision until the step is below
    10^-(digits) relative."""
    x = mpmath.mpf(x0)
    tol = mpmath.mpf(10) ** (-digits)
    for _ in range(max_iter):
        f, df = f_and_df(x)
        if f == 0:
            return x
        step = f / df
        x -= step
        if abs(step) <= tol * max(1, abs(x)):
            f, df = f_and_df(x)
            return x - f / df
    raise ArithmeticError("Newton iteration did not converge")


def mpf_to_fraction(value) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(value)._mpf_
    if not man and exp:
        raise ValueError(f"cannot convert {value} to a rational")
    out = Fraction(man) * Fraction(2) ** exp
    return -out if sign else out


def certify_brackets(sign_at, centers, widths):
    """Rational brackets [c-w, c+w] with a strict sign change at each center.

    Raises ArithmeticError if a bracket fails or two brackets overlap; with
    n disjoint brackets for a degree-n polynomial every root is isolated.
    """
    brackets = []
    for c, w in zip(centers, widths):
        c = mpf_to_fraction(c)
        lo, hi = c - w, c + w
        if sign_at(lo) * sign_at(hi) >= 0:
            raise ArithmeticError(f"no sign change on [{float(lo)}, {float(hi)}]")
        if brackets and brackets[-1][1] >= lo:
            raise ArithmeticError("overlapping zero brackets")
        brackets.append((lo, hi))
    return tuple(brackets)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def laguerre_zeros(params: LaguerreParams, precision: int = 32) -> LaguerreZeroSet:
    """All zeros of L_n^(alpha) to ``precision`` digits, each certified by an
    exact sign change of L_n^(alpha) on a rational bracket."""
    if params.n < 1:
        raise ValueError("laguerre_zeros needs n >= 1")
    if precision < 16:
        raise ValueError("precision must be at least 16 digits")
    n, alpha = params.n, params.alpha
    poly = laguerre_poly(n, alpha)

    def sign_at(x: Fraction) -> int:
        return _sign(poly.horner("x", x))

    with mpmath.workdps(precision + 15):
        a = to_mpf(alpha)

        def f_and_df(x):
            val = _recurrence(n, a, x)
            der = -_recurrence(n - 1, a + 1, x) if n > 0 else 0
            return val, der

        seeds = tridiagonal_estimates(params)
        zeros = sorted(newton_polish(f_and_df, s, precision + 5) for s in seeds)
        widths = [Fraction(1, 10**precision) * max(1, int(abs(z)) + 1) for z in zeros]
        brackets = certify_brackets(sign_at, zeros, widths)
        zeros = tuple(+z for z in zeros)
    return LaguerreZeroSet(params, zeros, brackets, precision)
