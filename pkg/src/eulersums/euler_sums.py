"""The two-block Euler sums G_{n+2}(p, q) and their companion formulas.

G_{n+2}(p,q) couples a strict all-ones block of length p, a head factor
k^-(n+2), and a non-strict all-ones block of length q tied to the head
variable:

    G_{n+2}(p,q) = sum_K  zeta_{K-1}({1}^p) * K^-(n+2) * zeta*_K({1}^q).

Three independent routes are provided: the direct sweep above (with the
engine's tail correction), the shuffle-product expansion into MZVs over
integer compositions, and a double integral over the unit simplex.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from mpmath import mp, mpf

from . import mzv_engine, quadrature
from .indices import MultiIndex, compositions, ones
from .numerics import PrecisionConfig, ValueWithError, binomial, precision, riemann_zeta

__all__ = [
    "GSpec",
    "ClosedG2",
    "g_direct",
    "g_compositions",
    "g_quad",
    "g2_closed",
    "reflection_residual",
    "zetastar_ones",
]


@dataclass(frozen=True)
class GSpec:
    """Parameters of G_{n+2}(p, q); all three are nonnegative."""

    n: int = 0
    p: int = 0
    q: int = 0

    def __post_init__(self) -> None:
        if self.n < 0 or self.p < 0 or self.q < 0:
            raise ValueError(f"GSpec needs nonnegative n, p, q, got {self}")

    def __str__(self) -> str:
        return f"G(n={self.n},p={self.p},q={self.q})"


_lock = threading.RLock()
_direct_cache: dict = {}


def g_direct(spec: GSpec, cfg: PrecisionConfig) -> ValueWithError:
    """G_{n+2}(p,q) by a single K-sweep over both prefix accumulators.

    One pass maintains zeta_{K-1}({1}^p) and zeta*_K({1}^q) in O(N(p+q))
    operations; the dropped tail is corrected the same way as in the MZV
    engine, using the asymptotic expansions of the two all-ones prefixes.
    """
    key = (spec, cfg.digits, cfg.cutoff, cfg.extrapolate)
    with _lock:
        hit = _direct_cache.get(key)
    if hit is not None:
        return hit

    n, p, q = spec.n, spec.p, spec.q
    with precision(cfg):
        dps = mp.dps
        m1, m2 = mzv_engine.effective_bounds(cfg)
        jmax = mzv_engine.jmax_for(dps, m1)

        strict = [mpf(1)] + [mpf(0)] * p
        star = [mpf(1)] + [mpf(0)] * q
        partial = mpf(0)
        snaps: dict[int, mpf] = {}
        head = -(n + 2)
        for k in range(1, m2 + 1):
            inv = mpf(1) / k
            for j in range(1, q + 1):
                star[j] += star[j - 1] * inv
            partial += strict[p] * mpf(k) ** head * star[q]
            for j in range(p, 0, -1):
                strict[j] += strict[j - 1] * inv
            if k in (m1, m2):
                snaps[k] = partial
                mzv_engine.seed_prefix_values(
                    (1,) * p, False, {k: list(strict)}, dps
                )
                mzv_engine.seed_prefix_values((1,) * q, True, {k: list(star)}, dps)

        vals = []
        trunc = mpf(0)
        for m in (m1, m2):
            e_strict = mzv_engine.prefix_expansion((1,) * p, False, m, dps, jmax)
            e_star = mzv_engine.prefix_expansion((1,) * q, True, m, dps, jmax)
            h = e_strict.shift_km1().mul(e_star).mul_kpow(n + 2)
            big_g = h.em_antiderivative()
            vals.append(snaps[m] - big_g.eval(m))
            trunc = big_g.top_order_magnitude(m)
        v1, v2 = vals
        floor = (abs(v2) + 1) * mpf(10) ** (-(cfg.digits + 2))
        result = ValueWithError(v2, 2 * abs(v2 - v1) + trunc + floor)

    with _lock:
        _direct_cache[key] = result
    return result


def g_compositions(spec: GSpec, cfg: PrecisionConfig) -> ValueWithError:
    """G_{n+2}(p,q) through the shuffle-product expansion into MZVs.

    Sums, for r = p+1 .. p+q+1, C(r-1, p) times the MZVs of every positive
    composition of p+q+1 into r parts with n+1 added to the final part.
    Component errors accumulate without cancellation credit.
    """
    n, p, q = spec.n, spec.p, spec.q
    total = ValueWithError.exact(0)
    for r in range(p + 1, p + q + 2):
        c = binomial(r - 1, p)
        if c == 0:
            continue
        for comp in compositions(p + q + 1, r, min_part=1):
            parts = comp.parts[:-1] + (comp.parts[-1] + n + 1,)
            total = total + mzv_engine.mzv(MultiIndex(parts), cfg) * c
    return total


def g_quad(spec: GSpec, cfg: PrecisionConfig) -> ValueWithError:
    """G_{n+2}(p,q) as the simplex integral of F1^p F2^q F3^n / (p!q!n!)."""
    n, p, q = spec.n, spec.p, spec.q
    if p + q + n > 10:
        raise ValueError(f"g_quad practicality bound p+q+n <= 10 exceeded by {spec}")
    coeff = Fraction(1, factorial(p) * factorial(q) * factorial(n))
    mono = quadrature.LogMonomial(coeff, (p, q, n, 0, 0))
    return quadrature.integrate_monomials([mono], cfg)


@dataclass(frozen=True)
class ClosedG2:
    """Exact value of G_2(p,q): coefficient * zeta(argument)."""

    coefficient: int
    zeta_argument: int

    def value(self, cfg: PrecisionConfig) -> ValueWithError:
        return riemann_zeta(self.zeta_argument, cfg) * self.coefficient


def g2_closed(p: int, q: int) -> ClosedG2:
    """G_2(p,q) = C(p+q+1, q) zeta(p+q+2), exactly."""
    if p < 0 or q < 0:
        raise ValueError(f"g2_closed needs nonnegative p, q, got ({p}, {q})")
    return ClosedG2(binomial(p + q + 1, q), p + q + 2)


def reflection_residual(p: int, q: int, k: int, cfg: PrecisionConfig) -> ValueWithError:
    """Residual of the reflection formula; zero within errors when it holds.

    G_{k+3}(p-1,q) + (-1)^k G_{k+3}(q-1,p)
        - sum_{a+b=k} (-1)^b zeta({1}^{p-1}, a+2) zeta({1}^{q-1}, b+2).
    """
    if p < 1 or q < 1 or k < 0:
        raise ValueError(f"reflection needs p, q >= 1 and k >= 0, got ({p}, {q}, {k})")
    lhs = g_direct(GSpec(k + 1, p - 1, q), cfg)
    lhs = lhs + g_direct(GSpec(k + 1, q - 1, p), cfg) * ((-1) ** k)
    rhs = ValueWithError.exact(0)
    for a in range(k + 1):
        b = k - a
        za = mzv_engine.mzv(ones(p - 1, a + 2), cfg)
        zb = mzv_engine.mzv(ones(q - 1, b + 2), cfg)
        rhs = rhs + (za * zb) * ((-1) ** b)
    return lhs - rhs


def zetastar_ones(q: int, n: int, cfg: PrecisionConfig) -> ValueWithError:
    """zeta*({1}^q, n+2) by the composition-sum integral representation.

    The p = 0 case of the composition route; at n = 0 it must reduce to
    (q+1) zeta(q+2).
    """
    if q < 0 or n < 0:
        raise ValueError(f"zetastar_ones needs q, n >= 0, got ({q}, {n})")
    return g_compositions(GSpec(n, 0, q), cfg)
