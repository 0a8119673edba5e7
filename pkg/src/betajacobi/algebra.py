"""Exact arithmetic engine: rationals, sparse multivariate polynomials and
truncated power series.

Rationals are :class:`fractions.Fraction`. Polynomials live over a fixed,
ordered symbol set ``(s, x, n, a, b)`` where ``a`` stands for the Laguerre /
Jacobi parameter alpha and ``b`` for ``beta + n``.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping

SYMBOLS = ("s", "x", "n", "a", "b")
_INDEX = {name: i for i, name in enumerate(SYMBOLS)}

# Exponent vectors are packed into one int, _BITS bits per symbol.
_BITS = 10
_MASK = (1 << _BITS) - 1
_SHIFT = {name: _BITS * i for i, name in enumerate(SYMBOLS)}

DEFAULT_MAX_ORDER = 12

_RATIONAL_RE = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")


def max_order() -> int:
    """Largest truncation order the symbolic generators accept."""
    raw = os.environ.get("BETAJACOBI_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    value = int(raw)
    if value < 1:
        raise ValueError(f"BETAJACOBI_MAX_ORDER must be positive, got {raw!r}")
    return value


def check_order(K: int) -> None:
    cap = max_order()
    if not 0 <= K <= cap:
        raise ValueError(f"order {K} outside supported range 0..{cap}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (base-10 digits, optional sign) exactly.

    Decimal points and exponents are rejected on purpose.
    """
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den else 1)
    return -value if sign == "-" else value


def as_rational(value) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _pack(exps: Mapping[str, int]) -> int:
    key = 0
    for name, e in exps.items():
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent {e} of {name} out of range")
        if e:
            key |= e << _SHIFT[name]
    return key


def _exponent(key: int, name: str) -> int:
    return (key >> _SHIFT[name]) & _MASK


def _unpack(key: int) -> tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(len(SYMBOLS)))


class MultiPoly:
    """Sparse polynomial in ``SYMBOLS`` with Fraction coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        self._terms = {k: Fraction(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def _raw(cls, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p._terms = terms
        return p

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = as_rational(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        return cls._raw({_pack({name: power}): Fraction(1)})

    @classmethod
    def monomial(cls, coeff, **exps: int) -> "MultiPoly":
        c = as_rational(coeff)
        return cls._raw({_pack(exps): c} if c else {})

    @classmethod
    def from_coeffs(cls, name: str, coeffs: Iterable) -> "MultiPoly":
        """Univariate polynomial sum_i coeffs[i] * name**i."""
        out = {}
        for i, c in enumerate(coeffs):
            c = as_rational(c)
            if c:
                out[i << _SHIFT[name]] = c
        return cls._raw(out)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Mapping exponent-vector (ordered as SYMBOLS) -> coefficient."""
        return {_unpack(k): v for k, v in self._terms.items()}

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._terms)

    def constant(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def degree(self, name: str) -> int:
        if not self._terms:
            return -1
        return max(_exponent(k, name) for k in self._terms)

    def min_degree(self, name: str) -> int:
        if not self._terms:
            return -1
        return min(_exponent(k, name) for k in self._terms)

    def symbols(self) -> tuple[str, ...]:
        used = 0
        for k in self._terms:
            used |= k
        return tuple(nm for nm in SYMBOLS if (used >> _SHIFT[nm]) & _MASK)

    def coeffs_in(self, name: str) -> list["MultiPoly"]:
        """Coefficients of name**0, name**1, ... as polynomials free of name."""
        shift = _SHIFT[name]
        buckets: dict[int, dict] = {}
        for k, v in self._terms.items():
            e = (k >> shift) & _MASK
            buckets.setdefault(e, {})[k & ~(_MASK << shift)] = v
        if not buckets:
            return []
        return [MultiPoly._raw(buckets.get(e, {})) for e in range(max(buckets) + 1)]

    def univariate(self, name: str) -> list[Fraction]:
        """Coefficient list of a polynomial that only involves ``name``."""
        out = []
        for c in self.coeffs_in(name):
            if not c.is_constant():
                raise ValueError(f"polynomial is not univariate in {name}")
            out.append(c.constant())
        return out

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, Rational):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                return MultiPoly()
            c = Fraction(other)
            return MultiPoly._raw({k: v * c for k, v in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Fraction] = {}
        get = out.get
        for kb, vb in b.items():
            for ka, va in a.items():
                k = ka + kb
                out[k] = get(k, 0) + va * vb
        return MultiPoly._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("division of MultiPoly by zero")
            c = 1 / Fraction(other)
            return MultiPoly._raw({k: v * c for k, v in self._terms.items()})
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = MultiPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    # -- calculus and substitution ----------------------------------------

    def diff(self, name: str, times: int = 1) -> "MultiPoly":
        shift = _SHIFT[name]
        p = self
        for _ in range(times):
            out = {}
            for k, v in p._terms.items():
                e = (k >> shift) & _MASK
                if e:
                    out[k - (1 << shift)] = v * e
            p = MultiPoly._raw(out)
        return p

    def substitute(self, name: str, value) -> "MultiPoly":
        """Replace ``name`` by a rational or another MultiPoly."""
        value = self._coerce(value)
        if value is None:
            raise TypeError("substitute expects a rational or MultiPoly")
        coeffs = self.coeffs_in(name)
        result = MultiPoly()
        for c in reversed(coeffs):
            result = result * value + c
        return result

    def subs(self, **values) -> "MultiPoly":
        p = self
        for name, v in values.items():
            p = p.substitute(name, v)
        return p

    def evaluate(self, **values):
        """Evaluate at the given values; symbols not given must be absent.

        Exact when all values are rationals, otherwise the coefficient type
        follows ordinary Python promotion (e.g. mpmath.mpf).
        """
        for name in self.symbols():
            if name not in values:
                raise ValueError(f"no value supplied for symbol {name}")
        total = 0
        for k, coeff in self._terms.items():
            term = coeff
            for name, v in values.items():
                e = _exponent(k, name)
                if e:
                    term = term * v**e
            total = total + term
        return total

    def horner(self, name: str, value):
        """Evaluate a univariate polynomial in ``name`` by Horner's rule."""
        acc = 0
        for c in reversed(self.univariate(name)):
            acc = acc * value + c
        return acc

    def div_monomial(self, name: str, power: int) -> "MultiPoly":
        """Exact division by name**power; raises if a remainder would remain."""
        if power == 0:
            return self
        step = power << _SHIFT[name]
        out = {}
        for k, v in self._terms.items():
            if _exponent(k, name) < power:
                raise ValueError(f"not divisible by {name}^{power}")
            out[k - step] = v
        return MultiPoly._raw(out)

    def div_linear(self, name: str, root) -> "MultiPoly":
        """Exact division by (name - root), ``root`` free of ``name``.

        Synthetic division in ``name``; raises ValueError on a nonzero remainder.
        """
        root = self._coerce(root)
        if name in root.symbols():
            raise ValueError("root must not involve the division variable")
        coeffs = self.coeffs_in(name)
        if not coeffs:
            return MultiPoly()
        quotient = [MultiPoly()] * (len(coeffs) - 1)
        carry = MultiPoly()
        for i in range(len(coeffs) - 1, 0, -1):
            carry = coeffs[i] + carry * root
            quotient[i - 1] = carry
        remainder = coeffs[0] + carry * root
        if remainder:
            raise ValueError(f"not divisible by ({name} - {root})")
        var = MultiPoly.var(name)
        result = MultiPoly()
        for c in reversed(quotient):
            result = result * var + c
        return result

    # -- display ----------------------------------------------------------

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, key=_unpack, reverse=True):
            v = self._terms[k]
            mono = "*".join(
                nm if e == 1 else f"{nm}^{e}"
                for nm, e in zip(SYMBOLS, _unpack(k))
                if e
            )
            coef = str(v)
            if not mono:
                parts.append(coef)
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({coef})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def as_poly(value) -> MultiPoly:
    poly = MultiPoly._coerce(value)
    if poly is None:
        raise TypeError(f"cannot treat {type(value).__name__} as a polynomial")
    return poly


def poly_arith(op: str, *operands, symbol: str | None = None):
    """Functional front-end: ``add``, ``mul``, ``scale`` or ``substitute``."""
    if op == "add":
        result = MultiPoly()
        for p in operands:
            result = result + p
        return result
    if op == "mul":
        result = MultiPoly.const(1)
        for p in operands:
            result = result * p
        return result
    if op == "scale":
        poly, factor = operands
        return poly * as_rational(factor)
    if op == "substitute":
        poly, value = operands
        if symbol is None:
            raise ValueError("substitute needs the symbol to replace")
        return poly.substitute(symbol, value)
    raise ValueError(f"unknown polynomial operation {op!r}")


X = MultiPoly.var("x")
S = MultiPoly.var("s")
N = MultiPoly.var("n")
A = MultiPoly.var("a")
B = MultiPoly.var("b")


# -- truncated power series ---------------------------------------------

INV_BETA = "inv_beta"
INV_B = "inv_b"
SHIFT = "shift"


class SeriesMismatch(ValueError):
    """Two series in different expansion parameters were combined."""


@dataclass(frozen=True)
class TruncatedSeries:
    """sum_{k<=order} coeffs[k] * t**k in a tagged small parameter t.

    Coefficients may be MultiPoly, Fraction or any float-like ring element.
    Everything above ``order`` is unknown, not zero.
    """

    param: str
    coeffs: tuple
    order: int

    def __post_init__(self):
        c = tuple(self.coeffs[: self.order + 1])
        if len(c) < self.order + 1:
            c = c + (0,) * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def of(cls, param: str, coeffs: Iterable, order: int | None = None):
        coeffs = tuple(coeffs)
        return cls(param, coeffs, len(coeffs) - 1 if order is None else order)

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other: "TruncatedSeries") -> int:
        if self.param != other.param:
            raise SeriesMismatch(f"cannot combine {self.param} with {other.param}")
        return min(self.order, other.order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.param, (self.coeffs[0] + other,) + self.coeffs[1:], self.order)
        K = self._check(other)
        return TruncatedSeries(self.param, [self.coeffs[k] + other.coeffs[k] for k in range(K + 1)], K)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.param, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return TruncatedSeries(self.param, [c * other for c in self.coeffs], self.order)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.param, self.coeffs, min(order, self.order))

    def shift_down(self) -> "TruncatedSeries":
        """Divide by t; the constant term must vanish."""
        if self.coeffs[0] != 0:
            raise ValueError("shift_down needs a zero constant term")
        return TruncatedSeries(self.param, self.coeffs[1:], self.order - 1)

    def map(self, fn: Callable) -> "TruncatedSeries":
        return TruncatedSeries(self.param, [fn(c) for c in self.coeffs], self.order)

    def evaluate(self, t, upto: int | None = None):
        """Horner sum of the coefficients at parameter value t."""
        top = self.order if upto is None else min(upto, self.order)
        acc = 0
        for c in reversed(self.coeffs[: top + 1]):
            acc = acc * t + c
        return acc


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    K = f._check(g)
    out = []
    for k in range(K + 1):
        acc = 0
        for j in range(k + 1):
            fj, gk = f.coeffs[j], g.coeffs[k - j]
            if fj != 0 and gk != 0:
                acc = acc + fj * gk
        out.append(acc)
    return TruncatedSeries(f.param, out, K)


def series_exp(f: TruncatedSeries) -> TruncatedSeries:
    """exp(f) via k g_k = sum_j j f_j g_{k-j}; requires f_0 = 0."""
    if f.coeffs[0] != 0:
        raise ValueError("series_exp needs a zero constant term")
    g = [1]
    for k in range(1, f.order + 1):
        acc = 0
        for j in range(1, k + 1):
            if f.coeffs[j] != 0:
                acc = acc + (f.coeffs[j] * j) * g[k - j]
        g.append(acc * Fraction(1, k))
    return TruncatedSeries(f.param, g, f.order)


def series_log(f: TruncatedSeries) -> TruncatedSeries:
    """log(f) for f_0 = 1, from k g_k = k f_k - sum_{j<k} j g_j f_{k-j}."""
    if f.coeffs[0] != 1:
        raise ValueError("series_log needs a constant term equal to 1")
    g = [0]
    for k in range(1, f.order + 1):
        acc = f.coeffs[k] * k
        for j in range(1, k):
            if g[j] != 0 and f.coeffs[k - j] != 0:
                acc = acc - (g[j] * j) * f.coeffs[k - j]
        g.append(acc * Fraction(1, k))
    return TruncatedSeries(f.param, g, f.order)
