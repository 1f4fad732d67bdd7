"""Acceptance suite: one test and one printed pass/fail line per criterion.

Run with  pytest tests/test_acceptance.py -v -s  to see the per-criterion
lines.  All tolerances are pinned here, not configurable.
"""

import json
import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from eulersums import (
    GSpec,
    MultiIndex,
    PrecisionConfig,
    bell_poly,
    bernoulli,
    binomial,
    compositions,
    finite_mzv,
    finite_mzsv,
    g2_closed,
    g_compositions,
    g_direct,
    g_quad,
    gen_harmonic,
    integrate_monomials,
    expand_log_power,
    LogMonomial,
    mzsv,
    mzv,
    ones,
    pi_value,
    precision,
    repeat,
    riemann_zeta,
    run_identity,
    thm53_rhs,
    zetastar_head2,
    zetastar_head_eval,
)
from eulersums.indices import composition_count
from eulersums.quadrature import F1, F3

CFG = PrecisionConfig(digits=30, cutoff=100_000, extrapolate=True, quad_level=10)


def _report(num: int, desc: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'} - {desc}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def _rel(a: mpf, b: mpf) -> mpf:
    return abs(a - b) / max(abs(a), abs(b), mpf(1) * 0 + mpf("1e-300"))


def _exp_series_coeff(xs, m):
    """Independent truncated-power-series exponential (exact Fractions)."""
    arg = [Fraction(0)] * (m + 1)
    for k in range(1, m + 1):
        arg[k] = Fraction(xs[k - 1]) / k
    out = [Fraction(0)] * (m + 1)
    out[0] = Fraction(1)
    term = list(out)
    for t in range(1, m + 1):
        nxt = [Fraction(0)] * (m + 1)
        for i in range(m + 1):
            if term[i]:
                for j in range(1, m + 1 - i):
                    nxt[i + j] += term[i] * arg[j]
        term = [c / t for c in nxt]
        for i in range(m + 1):
            out[i] += term[i]
    return out[m]


def test_criterion_1_exact_suite():
    t0 = time.perf_counter()
    ok = True
    # Bernoulli recurrence, n <= 24
    for n in range(1, 25):
        ok &= sum(Fraction(math.comb(n + 1, k)) * bernoulli(k)
                  for k in range(n + 1)) == 0
    # Bell recurrence vs symbolic expansion, m <= 8
    random.seed(1225)
    for m in range(0, 9):
        xs = [Fraction(random.randint(-9, 9), random.randint(1, 9)) for _ in range(m)]
        ok &= bell_poly(m, xs) == _exp_series_coeff(xs, m)
    # Chen's lemma, n <= 50, m <= 6, exact
    for n in range(0, 51):
        hs = [gen_harmonic(n, s) for s in range(1, 7)]
        for m in range(0, 7):
            alt = [(-1) ** (s + 1) * hs[s - 1] for s in range(1, m + 1)]
            ok &= finite_mzv(ones(m), n) == bell_poly(m, alt)
            ok &= finite_mzsv(ones(m), n) == bell_poly(m, hs[:m])
    # composition counts vs binomials, t <= 12
    for t in range(1, 13):
        for p in range(1, t + 1):
            ok &= len(compositions(t, p, 1)) == composition_count(t, p, 1)
    elapsed = time.perf_counter() - t0
    ok &= elapsed <= 10.0
    _report(1, "exact rational suite (Bernoulli, Bell, Chen, compositions)",
            ok, f"{elapsed:.1f}s <= 10s")


def test_criterion_2_representation_equivalence():
    t0 = time.perf_counter()
    worst = mpf(0)
    count = 0
    with precision(CFG):
        for total in range(0, 7):
            for n in range(total + 1):
                for p in range(total - n + 1):
                    q = total - n - p
                    spec = GSpec(n, p, q)
                    a = g_direct(spec, CFG)
                    b = g_compositions(spec, CFG)
                    worst = max(worst, _rel(a.value, b.value))
                    count += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= mpf("1e-6") and elapsed <= 120.0 and count == 84
    _report(2, "g_direct vs g_compositions, n+p+q <= 6",
            ok, f"{count} instances, worst rel {mp.nstr(worst, 3)}, {elapsed:.1f}s <= 120s")


def test_criterion_3_g2_closed_form():
    worst = mpf(0)
    with precision(CFG):
        for p in range(0, 7):
            for q in range(0, 7 - p):
                a = g_direct(GSpec(0, p, q), CFG)
                b = g2_closed(p, q).value(CFG)
                worst = max(worst, _rel(a.value, b.value))
    ok = worst <= mpf("1e-6")
    _report(3, "G_2(p,q) = C(p+q+1,q) zeta(p+q+2), p+q <= 6",
            ok, f"worst rel {mp.nstr(worst, 3)}")


def test_criterion_4_reflection():
    ok = True
    count = 0
    with precision(CFG):
        for p in (1, 2, 3):
            for q in (1, 2, 3):
                for k in (0, 1, 2):
                    if p + q + k + 2 > 9:
                        continue
                    rep = run_identity("prop2.4", {"p": p, "q": q, "k": k}, CFG)
                    scale = max(abs(rep.lhs.value), abs(rep.rhs.value))
                    residual = abs(rep.lhs.value - rep.rhs.value)
                    ok &= residual <= rep.lhs.err + rep.rhs.err
                    ok &= residual <= mpf("1e-6") * scale
                    count += 1
    _report(4, "reflection formula, p,q in 1..3, k in 0..2, weight <= 9",
            ok, f"{count} instances")


def test_criterion_5_generating_function():
    worst = mpf(0)
    with precision(CFG):
        for r in range(3):
            for m in range(4):
                a = zetastar_head2(r, m, CFG).value
                b = mzsv(repeat(r + 2, 1, *(2,) * m), CFG).value
                combo = mpf(0)
                for p in range(2 * m + 1):
                    q = 2 * m - p
                    for aa in range(r + 1):
                        bb = r - aa
                        coeff = (-1) ** (q + bb) * binomial(p + bb, p)
                        combo += coeff * g_direct(GSpec(q, p + bb, aa), CFG).value
                worst = max(worst, _rel(a, b), _rel(a, combo), _rel(b, combo))
    ok = worst <= mpf("1e-5")
    _report(5, "zetastar_head2 / eq-3.6 combo / mzsv pairwise, r <= 2, m <= 3",
            ok, f"worst rel {mp.nstr(worst, 3)}")


def test_criterion_6_section4_sum_formulas():
    ok = True
    details = []
    with precision(CFG):
        # alternating sum (n <= 5; odd n targets zero)
        for n in range(6):
            lhs = mpf(0)
            for t in range(n + 1):
                lhs += (-1) ** (t + n) * mzv(ones(t, n + 2 - t), CFG).value
            if n % 2 == 0:
                rhs = mzsv(repeat(2, n // 2 + 1), CFG).value
                ok &= _rel(lhs, rhs) <= mpf("1e-6")
            else:
                ok &= abs(lhs) <= mpf("1e-6")
        # weighted alternating sum (n <= 4)
        for n in range(5):
            lhs = mpf(0)
            for t in range(n + 1):
                lhs += (-1) ** (t + n) * (t + 1) * mzv(ones(t + 1, n + 2 - t), CFG).value
            if n % 2:
                m = (n - 1) // 2
                rhs = (m + 1) * mzsv(repeat(2, m + 2), CFG).value
            else:
                m = n // 2
                rhs = mpf(0)
                for a in range(m + 1):
                    rhs += mzsv(repeat(2, a, 3, *(2,) * (m - a)), CFG).value
            ok &= _rel(lhs, rhs) <= mpf("1e-6")
        # even-weight zeta* ones sum (n <= 2)
        for n in range(3):
            lhs = mpf(0)
            for p in range(2 * n + 3):
                lhs += mzsv(ones(p, 2 * n + 4 - p), CFG).value
            rhs = (2 * (2 * n + 3) * (1 - mpf(2) ** (-(2 * n + 3)))
                   * riemann_zeta(2 * n + 4, CFG).value)
            ok &= _rel(lhs, rhs) <= mpf("1e-6")
        # weight/height zeta* sum (k <= 8, s <= 2)
        from eulersums import admissible_by_weight_height
        for k in range(2, 9):
            for s in (1, 2):
                if 2 * s > k:
                    continue
                lhs = mpf(0)
                for idx in admissible_by_weight_height(k, s):
                    lhs += mzsv(idx, CFG).value
                rhs = (2 * binomial(k - 1, 2 * s - 1) * (1 - mpf(2) ** (1 - k))
                       * riemann_zeta(k, CFG).value)
                ok &= _rel(lhs, rhs) <= mpf("1e-6")
    _report(6, "section-4 sum formulas (alternating, weighted, even-weight, "
               "weight/height)", ok)


def test_criterion_7_section5_sum_formulas():
    ok = True
    with precision(CFG):
        for ident in ("prop5.1", "prop5.2", "thm5.3"):
            for n in range(3):
                rep = run_identity(ident, {"n": n}, CFG)
                ok &= _rel(rep.lhs.value, rep.rhs.value) <= mpf("1e-5")
    _report(7, "section-5 G-sum formulas (prop5.1, prop5.2, thm5.3), n <= 2", ok)


def test_criterion_8_section6_evaluations():
    ok = True
    with precision(CFG):
        for n in range(4):
            rep = run_identity("eq6.1", {"n": n}, CFG)
            ok &= _rel(rep.lhs.value, rep.rhs.value) <= mpf("1e-5")
        for r in range(3):
            for n in range(3):
                a = zetastar_head_eval(r, n, CFG).value
                b = mzsv(repeat(r + 2, 1, *(2,) * n), CFG).value
                ok &= _rel(a, b) <= mpf("1e-4")
    _report(8, "section-6: eq-6.1 (n <= 3) and zeta*(r+2,{2}^n) assembly", ok)


def test_criterion_9_quadrature_agreement():
    t0 = time.perf_counter()
    ok = True
    worst = mpf(0)
    with precision(CFG):
        for total in range(0, 5):
            for n in range(total + 1):
                for p in range(total - n + 1):
                    q = total - n - p
                    spec = GSpec(n, p, q)
                    a = g_quad(spec, CFG)
                    b = g_direct(spec, CFG)
                    worst = max(worst, _rel(a.value, b.value))
        ok &= worst <= mpf("1e-4")
        for r in range(3):
            for n in range(4):
                scale = Fraction(1, math.factorial(r) * math.factorial(n))
                terms = []
                for mono in expand_log_power(F1, F3, -1, n):
                    e = list(mono.exponents)
                    e[3] += r
                    terms.append(LogMonomial(mono.coeff * scale, tuple(e)))
                got = integrate_monomials(terms, CFG).value
                if n % 2:
                    ok &= abs(got) <= mpf("1e-4")
                else:
                    want = mzsv(repeat(r + 2, 1, *(2,) * (n // 2)), CFG).value
                    ok &= _rel(got, want) <= mpf("1e-4")
    elapsed = time.perf_counter() - t0
    ok &= elapsed <= 300.0
    _report(9, "quadrature vs series (35 + 12 instances) at quad_level 10",
            ok, f"worst rel {mp.nstr(worst, 3)}, {elapsed:.1f}s <= 300s")


def test_criterion_10_error_honesty():
    ok = True
    with precision(CFG):
        pi = pi_value(CFG)
        cases = []
        z2 = riemann_zeta(2, CFG)
        cases.append((z2, pi**2 / 6))
        z4 = riemann_zeta(4, CFG)
        cases.append((z4, pi**4 / 90))
        cases.append((mzv(MultiIndex((2,)), CFG), pi**2 / 6))
        cases.append((mzv(MultiIndex((1, 1, 2)), CFG), pi**4 / 90))
        with mp.workdps(mp.dps + 25):
            for m in range(1, 5):
                truth = 2 * (1 - mpf(2) ** (1 - 2 * m)) * mpmath.zeta(2 * m)
                cases.append((mzsv(repeat(2, m), CFG), truth))
            for p in range(0, 5):
                for q in range(0, 5 - p):
                    truth = binomial(p + q + 1, q) * mpmath.zeta(p + q + 2)
                    cases.append((g_direct(GSpec(0, p, q), CFG), truth))
        for got, truth in cases:
            ok &= abs(got.value - truth) <= 10 * got.err
    _report(10, "true error <= 10x reported err on all closed-form cases", ok)


def test_criterion_11_cli_full_verify():
    t0 = time.perf_counter()
    runs = []
    for _ in range(2):
        proc = subprocess.run(
            [sys.executable, "-m", "eulersums.cli", "verify", "--all"],
            capture_output=True, timeout=900,
        )
        runs.append(proc)
    elapsed = time.perf_counter() - t0
    ok = all(p.returncode == 0 for p in runs)
    ok &= runs[0].stdout == runs[1].stdout
    ok &= elapsed <= 15 * 60
    summary = runs[0].stdout.decode().strip().splitlines()[-1]
    _report(11, "CLI `verify --all`: exit 0, byte-identical, under 15 min",
            ok, f"{summary!r}, two runs in {elapsed:.0f}s")
