"""Finite nested sums in exact arithmetic: generalized harmonic numbers,
truncated MZV/MZSV, and modified Bell polynomials.

Everything here is a plain prefix dynamic program: one running accumulator
per index prefix, updated in ascending k, which is O(n * depth) ring
operations.  Exact Fractions are used up to ``RATIONAL_LIMIT`` (their
denominators explode beyond that); larger truncations fall back to mpmath
floats at the caller's current precision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from mpmath import mpf

from .indices import MultiIndex

__all__ = [
    "RATIONAL_LIMIT",
    "gen_harmonic",
    "finite_mzv",
    "finite_mzsv",
    "prefix_sweep",
    "bell_poly",
]

RATIONAL_LIMIT = 1000


def gen_harmonic(n: int, s: int) -> Fraction:
    """H_n^(s) = sum_{j<=n} j^(-s) as an exact rational (0 for n = 0)."""
    if n < 0 or s < 1:
        raise ValueError(f"gen_harmonic needs n >= 0 and s >= 1, got ({n}, {s})")
    return sum((Fraction(1, j**s) for j in range(1, n + 1)), Fraction(0))


def prefix_sweep(parts: Sequence[int], n: int, star: bool, one=Fraction(1)):
    """Accumulators [zeta_n(prefix) for every prefix of ``parts``].

    Entry j is the truncated sum over k_1 < ... < k_j <= n (or <= with
    ``star``) of prod k_i^(-a_i); entry 0 is the empty prefix, exactly 1.
    ``one`` selects the scalar ring (Fraction(1) or mpf(1)).
    """
    r = len(parts)
    zero = one - one
    acc = [one] + [zero] * r
    for k in range(1, n + 1):
        if star:
            # non-strict: prefix value may already include this k
            for j in range(1, r + 1):
                acc[j] = acc[j] + acc[j - 1] * _inv_pow(one, k, parts[j - 1])
        else:
            # strict: consume prefix values from the previous k
            for j in range(r, 0, -1):
                acc[j] = acc[j] + acc[j - 1] * _inv_pow(one, k, parts[j - 1])
    return acc


def _inv_pow(one, k: int, a: int):
    if isinstance(one, Fraction):
        return Fraction(1, k**a)
    return one / mpf(k) ** a


def finite_mzv(idx: MultiIndex, n: int) -> Fraction | mpf:
    """zeta_n(idx): sum over 1 <= k_1 < ... < k_r <= n of prod k_i^(-a_i).

    Exact Fraction for n <= RATIONAL_LIMIT, mpmath float beyond.  The
    empty index gives 1; any index deeper than n gives 0.
    """
    return _finite(idx, n, star=False)


def finite_mzsv(idx: MultiIndex, n: int) -> Fraction | mpf:
    """zeta*_n(idx): same as finite_mzv with <= in place of <."""
    return _finite(idx, n, star=True)


def _finite(idx: MultiIndex, n: int, star: bool) -> Fraction | mpf:
    if n < 0:
        raise ValueError(f"truncation bound must be >= 0, got {n}")
    one = Fraction(1) if n <= RATIONAL_LIMIT else mpf(1)
    return prefix_sweep(idx.parts, n, star, one)[len(idx.parts)]


def bell_poly(m: int, xs: Sequence):
    """Modified Bell polynomial P_m(x_1,...,x_m).

    Defined by exp(sum_k x_k z^k / k) = sum_m P_m z^m and computed through
    the recurrence m * P_m = sum_{k=1}^{m} x_k * P_{m-k}, P_0 = 1.  Works
    over any field scalars (Fractions, mpmath floats).
    """
    if m < 0:
        raise ValueError(f"bell_poly needs m >= 0, got {m}")
    if len(xs) < m:
        raise ValueError(f"need at least {m} arguments, got {len(xs)}")
    if m == 0:
        return Fraction(1) if not xs else xs[0] ** 0
    p = [xs[0] ** 0]  # multiplicative unit of the scalar kind
    for j in range(1, m + 1):
        s = sum(xs[k - 1] * p[j - k] for k in range(1, j + 1))
        p.append(s / j)
    return p[m]
