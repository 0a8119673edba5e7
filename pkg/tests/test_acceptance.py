"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line (collected in RESULTS and echoed in
the pytest terminal summary). Run directly for the lines alone:

    python3 tests/test_acceptance.py
"""

import random
import sys
import time
from fractions import Fraction

import mpmath
import pytest

from betajacobi.algebra import SHIFT, A, B, N, S, X, MultiPoly, TruncatedSeries, series_exp, series_log
from betajacobi.expansion_b import eval_expansion_b, eval_finite_b, generate_ak, generate_dk, generic_yz
from betajacobi.expansion_beta import eval_expansion_beta, generate_ck, generic_uv, phi_sum
from betajacobi.laguerre import LaguerreParams, laguerre_eval, laguerre_shifted, laguerre_zeros, reduce_to_basis
from betajacobi.oracle import JacobiParams, oracle_eval, oracle_zeros, relative_error, symmetry_map
from betajacobi.reproduce import run_reproduce
from betajacobi.zeros import DELTA, EPSILON, all_zeros, attach_oracle, symbolic_zero_coeffs

DIGITS = 32
RESULTS = {}

HALF = Fraction(1, 2)


def record(number, title, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} [{status}] {title}"
    if detail:
        line += f": {detail}"
    if failures:
        line += " | failing: " + "; ".join(failures)
    RESULTS[number] = line
    print(line)
    assert not failures, line


def table_failures(*tables):
    fails, total, elapsed = [], 0, time.perf_counter()
    for t in tables:
        report = run_reproduce(t, DIGITS)
        total += len(report.cells)
        for c in report.failures:
            coords = ",".join(f"{k}={v}" for k, v in c.coords.items())
            fails.append(f"{t}({coords}) computed {mpmath.nstr(c.computed, 3)} vs published {float(c.published):.2g}")
    return fails, total, time.perf_counter() - elapsed


# -- 1 -----------------------------------------------------------------------------


def test_criterion_1_exact_identities():
    rng = random.Random(2024)
    start = time.perf_counter()
    failures, checks = [], 0
    for _ in range(50):
        alpha = Fraction(rng.randint(-23, 72), 24)
        beta = Fraction(rng.randint(2, 800), 4)
        for n in range(0, 9):
            p = JacobiParams(n, alpha, beta)
            x = Fraction(rng.randint(1, 999), 1000) * min(p.beta, p.b)
            if phi_sum(p, x, n) != oracle_eval(p, 1 - 2 * x / p.beta):
                failures.append(f"phi-sum n={n} alpha={alpha} beta={beta} x={x}")
            if eval_finite_b(p, x) != oracle_eval(p, 1 - 2 * x / p.b):
                failures.append(f"finite-b n={n} alpha={alpha} beta={beta} x={x}")
            checks += 2
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s >= 60s")
    record(1, "exact identity suite", failures, f"{checks} exact comparisons, tolerance 0, {elapsed:.1f}s")


# -- 2 -----------------------------------------------------------------------------


def printed_formulas():
    c = [
        MultiPoly.const(1),
        -HALF * X * (2 * X * S + X * S**2 + 2 * N * S + 2 * N),
        Fraction(1, 24) * X**2 * (
            -24 * X * S**2 - 24 * X * S - 8 * X * S**3 - 24 * N * S - 12 * N * S**2
            + 12 * X**2 * S**2 + 12 * X**2 * S**3 + 36 * X * S**2 * N + 3 * X**2 * S**4
            + 12 * X * S**3 * N + 12 * N**2 * S**2 + 24 * N * X * S + 24 * N**2 * S - 12 * N + 12 * N**2
        ),
    ]
    d = [
        MultiPoly.const(1),
        -HALF * S * X**2 * (S + 2),
        Fraction(1, 24) * S * X**3 * (-24 - 24 * S - 8 * S**2 + 12 * X * S + 12 * X * S**2 + 3 * X * S**3),
    ]
    a = [
        MultiPoly.const(1),
        -X,
        HALF * (X**2 - B),
        Fraction(1, 6) * (3 * B * X - 2 * B - X**3),
        Fraction(1, 24) * (3 * B**2 - 6 * B + 8 * B * X - 6 * B * X**2 + X**4),
        Fraction(1, 120) * (30 * B * X + 20 * B**2 - 20 * B * X**2 - 15 * B**2 * X - 10 * B * X**3 - 24 * B - X**5),
    ]
    eps = [
        -X / 2 * (A + 2 * N + X + 1),
        X / 24 * (5 + 7 * A**2 + 12 * A + 24 * N * (1 + A + N) + 13 * (1 + A + 2 * N) * X + 4 * X**2),
        -X / 48 * (
            9 * A**3 + 42 * N * A**2 + 23 * X * A**2 + 21 * A**2 + 42 * X * A + 72 * N**2 * A
            + 84 * X * N * A + 15 * A + 14 * X**2 * A + 72 * N * A + 19 * X + 72 * N**2
            + 30 * N + 48 * N**3 + 84 * N**2 * X + 3 + 84 * N * X + 14 * X**2 + 28 * N * X**2 + 2 * X**3
        ),
    ]
    delta = [
        -X / 2 * (A + X + 1),
        X / 24 * (5 + 7 * A**2 + 12 * A + (13 + 13 * A + 2 * N) * X + 4 * X**2),
        -X / 48 * (
            9 * A**3 + 23 * X * A**2 + 21 * A**2 + 42 * X * A + 15 * A + 6 * X * N * A
            + 14 * X**2 * A + 2 * X**3 + 6 * N * X + 19 * X + 4 * N * X**2 + 14 * X**2 + 3
        ),
    ]
    return c, d, a, eps, delta


def test_criterion_2_printed_coefficients():
    start = time.perf_counter()
    c, d, a, eps, delta = printed_formulas()
    ck, dk, ak = generate_ck(2), generate_dk(2), generate_ak(5).entries
    (u, v), (y, z) = generic_uv(1), generic_yz(1)
    pairs = [(f"c_{k}", ck.poly(k), c[k]) for k in range(3)]
    pairs += [(f"d_{k}", dk.poly(k), d[k]) for k in range(3)]
    pairs += [(f"a_{k}", ak[k], a[k]) for k in range(6)]
    pairs += [
        ("u_1", u[1], HALF * N * (2 * N + A + 1)),
        ("v_1", v[1], -HALF * (N + A) * (A + 2 * N + X + 1)),
        ("y_1", y[1], HALF * N * (2 * X + A + 1)),
        ("z_1", z[1], -HALF * (N + A) * (A + X + 1)),
    ]
    pairs += [(f"eps_{j + 1}", g, eps[j]) for j, g in enumerate(symbolic_zero_coeffs(EPSILON, 3))]
    pairs += [(f"delta_{j + 1}", g, delta[j]) for j, g in enumerate(symbolic_zero_coeffs(DELTA, 3))]
    failures = [f"{name}: generated - printed = {gen - pr!r}" for name, gen, pr in pairs if gen != pr]
    elapsed = time.perf_counter() - start
    record(2, "printed-coefficient snapshot", failures, f"{len(pairs)} symbolic comparisons, {elapsed:.1f}s")


# -- 3 to 7: published tables --------------------------------------------------------


def test_criterion_3_table_one():
    failures, total, elapsed = table_failures("T1")
    record(3, "T1 reproduction (factor 10)", failures, f"{total} cells, {elapsed:.1f}s")


def test_criterion_4_table_three():
    failures, total, elapsed = table_failures("T3")
    record(4, "T3 reproduction (factor 10, floor 10^(2-digits))", failures, f"{total} cells, {elapsed:.1f}s")


def test_criterion_5_zero_tables():
    failures, total, elapsed = table_failures("T2", "T4")
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s >= 60s")
    record(5, "T2 and T4 reproduction (factor 10)", failures, f"{total} cells, {elapsed:.1f}s")


def test_criterion_6_small_x_list():
    failures, total, elapsed = table_failures("R2")
    record(6, "R2 list, x=1/100 (factor 10, digits 32)", failures, f"{total} cells, {elapsed:.1f}s")


def test_criterion_7_large_degree_spot_values():
    failures, total, elapsed = table_failures("R3", "S31")
    if elapsed >= 120:
        failures.append(f"runtime {elapsed:.1f}s >= 120s")
    record(7, "R3 and S31 spot values (factor 10, digits 32)", failures, f"{total} cells, {elapsed:.1f}s")


# -- 8 -----------------------------------------------------------------------------


def _basis_reduction(rng):
    for _ in range(20):
        n = rng.randint(1, 12)
        alpha = Fraction(rng.randint(-11, 36), 12)
        x = Fraction(rng.randint(1, 150), 10)
        Ln, Lm = laguerre_eval(LaguerreParams(n, alpha), x), laguerre_eval(LaguerreParams(n - 1, alpha), x)
        for j in range(n + 1):
            p, q = reduce_to_basis(LaguerreParams(n, alpha), j)
            if x**j * laguerre_shifted(n, alpha, j, x) != p.horner("x", x) * Ln + q.horner("x", x) * Lm:
                return False
    return True


def _exp_log(rng):
    for K in range(1, 13):
        coeffs = [MultiPoly.const(1)] + [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) * X**rng.randint(0, 2)
                                         for _ in range(K)]
        f = TruncatedSeries(SHIFT, coeffs, K)
        back = series_exp(series_log(f))
        if any(MultiPoly._coerce(p) != MultiPoly._coerce(q) for p, q in zip(back.coeffs, f.coeffs)):
            return False
    return True


def _laguerre_zero_sets():
    for n in (5, 25):
        alpha = Fraction(1, 3)
        zs = laguerre_zeros(LaguerreParams(n, alpha), DIGITS).zeros
        ws = laguerre_zeros(LaguerreParams(n - 1, alpha), DIGITS).zeros
        with mpmath.workdps(DIGITS + 10):
            t = n * (n + alpha)
            trace = mpmath.mpf(t.numerator) / t.denominator
            if abs(mpmath.fsum(zs) - trace) > trace * mpmath.mpf(10) ** (2 - DIGITS):
                return False
        if not all(zs[i] < w < zs[i + 1] for i, w in enumerate(ws)):
            return False
    return True


def _symmetry(rng):
    for _ in range(30):
        n = rng.randint(0, 10)
        p = JacobiParams(n, Fraction(rng.randint(-8, 40), 9), Fraction(rng.randint(-8, 40), 9))
        z = Fraction(rng.randint(-30, 30), 11)
        swapped, mz, sign = symmetry_map(p, z)
        if oracle_eval(p, z) != sign * oracle_eval(swapped, mz):
            return False
    return True


def _delta_beats_epsilon():
    p = JacobiParams(5, Fraction(1, 3), 100)
    oracle = oracle_zeros(p, DIGITS)
    for T in range(1, 6):
        e = [attach_oracle(a, o).rel_error for a, o in zip(all_zeros(p, EPSILON, T, DIGITS), oracle)]
        d = [attach_oracle(a, o).rel_error for a, o in zip(all_zeros(p, DELTA, T, DIGITS), oracle)]
        if any(dk > ek for dk, ek in zip(d, e)):
            return False
    return True


def _error_decay():
    for expand, scale in ((eval_expansion_beta, "beta"), (eval_expansion_b, "b")):
        for kmax in range(1, 6):
            errs = []
            for beta in (1000, 2000):
                p = JacobiParams(10, Fraction(1, 3), beta)
                arg = 1 - 2 * Fraction(1) / (p.beta if scale == "beta" else p.b)
                errs.append(relative_error(expand(p, 1, kmax), oracle_eval(p, arg)))
            if errs[0] / errs[1] < Fraction(2**kmax, 2):
                return False
    return True


def test_criterion_8_property_suites():
    rng = random.Random(8)
    start = time.perf_counter()
    checks = {
        "basis reduction": lambda: _basis_reduction(rng),
        "exp/log round trip": lambda: _exp_log(rng),
        "Laguerre trace and interlacing": _laguerre_zero_sets,
        "symmetry relation": lambda: _symmetry(rng),
        "delta beats epsilon": _delta_beats_epsilon,
        "error decay in beta": _error_decay,
    }
    failures = [name for name, check in checks.items() if not check()]
    elapsed = time.perf_counter() - start
    if elapsed >= 120:
        failures.append(f"runtime {elapsed:.1f}s >= 120s")
    record(8, "property suites", failures, f"{len(checks)} suites, {elapsed:.1f}s")


if __name__ == "__main__":
    tests = [obj for name, obj in sorted(globals().items()) if name.startswith("test_criterion_")]
    ok = True
    for test in tests:
        try:
            test()
        except AssertionError:
            ok = False
    sys.exit(0 if ok else 1)
