"""Catalog of the verified identities, with parameterized LHS/RHS builders.

Each entry states both sides of one identity as computations routed
through independent parts of the package (direct sweeps, composition
expansions, quadrature, closed forms), so a pass genuinely cross-checks
two evaluation paths.  An instance passes when

    |lhs - rhs| <= max(tol * max(|lhs|, |rhs|), lhs.err + rhs.err).

Identities built on quadrature carry a looser default tolerance than the
pure-series ones.
"""

from __future__ import annotations

import fnmatch
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Optional

from mpmath import mp, mpf

from . import quadrature
from .euler_sums import GSpec, g2_closed, g_compositions, g_direct, g_quad, zetastar_ones
from .indices import MultiIndex, admissible_by_weight_height, compositions, ones, repeat
from .mzv_engine import mzv, mzsv, zetastar_head2
from .numerics import PrecisionConfig, ValueWithError, binomial, precision, riemann_zeta

__all__ = [
    "IdentityDef",
    "IdentityReport",
    "CATALOG",
    "catalog_ids",
    "run_identity",
    "run_suite",
    "thm53_rhs",
    "thm53_weight",
    "zetastar_head_eval",
]

SERIES_TOL = 1e-6
QUAD_TOL = 1e-4

Builder = Callable[[dict, PrecisionConfig], ValueWithError]


@dataclass
class IdentityDef:
    id: str
    description: str
    params: tuple[str, ...]
    grid: list[dict]
    lhs: Builder
    rhs: Builder
    tol: float = SERIES_TOL


@dataclass
class IdentityReport:
    id: str
    params: dict
    lhs: Optional[ValueWithError]
    rhs: Optional[ValueWithError]
    residual: float
    tol: float
    passed: bool
    elapsed: float
    error: Optional[str] = None

    def to_json_dict(self, digits: int = 30, with_timing: bool = False) -> dict:
        out = {
            "id": self.id,
            "params": dict(sorted(self.params.items())),
            "lhs": self.lhs.to_json(digits) if self.lhs else None,
            "rhs": self.rhs.to_json(digits) if self.rhs else None,
            "residual": mp.nstr(mpf(self.residual), 4),
            "tol": repr(self.tol),
            "pass": self.passed,
            "elapsed_ms": round(self.elapsed * 1000.0, 3) if with_timing else None,
        }
        if self.error:
            out["error"] = self.error
        return out


# ---------------------------------------------------------------------------
# Composite evaluators used on the right-hand sides
# ---------------------------------------------------------------------------

def _zeta(s: int, cfg: PrecisionConfig) -> ValueWithError:
    return riemann_zeta(s, cfg)


def _pow2_factor(e: int) -> Fraction:
    """2 * (1 - 2^-e) as an exact rational."""
    return 2 * (1 - Fraction(1, 2**e))


def thm53_weight(c: tuple[int, ...]) -> int:
    """W(c_0,...,c_j) = C(c_0+3, 3) * prod_{i>=1} (c_i + 1)."""
    w = binomial(c[0] + 3, 3)
    for ci in c[1:]:
        w *= ci + 1
    return w


def thm53_rhs(n: int, cfg: PrecisionConfig) -> ValueWithError:
    """C(2n+4,3) zeta(2n+4) plus the alternating weighted composition sum.

    The inner sum runs over compositions c = (c_0,...,c_j) of 2n+1-2j into
    j+1 nonnegative parts, each contributing zeta(c_0+3, c_1+2,..., c_j+2)
    with weight W(c) = thm53_weight(c).
    """
    if n < 0 or n > 3:
        raise ValueError(f"thm53_rhs supports 0 <= n <= 3, got {n}")
    total = _zeta(2 * n + 4, cfg) * binomial(2 * n + 4, 3)
    for j in range(1, n + 1):
        sign = (-1) ** j
        for comp in compositions(2 * n + 1 - 2 * j, j + 1, min_part=0):
            c = comp.parts
            idx = MultiIndex((c[0] + 3,) + tuple(ci + 2 for ci in c[1:]))
            total = total + mzv(idx, cfg) * (sign * thm53_weight(c))
    return total


def zetastar_head_eval(r: int, n: int, cfg: PrecisionConfig) -> ValueWithError:
    """zeta*(r+2, {2}^n) assembled from the Euler-sum formulas, r <= 2.

    r=0 uses the alternating MZV sum; r=1 the closed zeta(2n+3) term minus
    twice the interleaved-3 sum; r=2 the full combination of the weighted
    alternating sum, the composition sum, and the product corrections.
    """
    if r not in (0, 1, 2):
        raise ValueError(f"zetastar_head_eval supports r in 0..2, got {r}")
    if n < 0 or n > 3:
        raise ValueError(f"zetastar_head_eval supports 0 <= n <= 3, got {n}")

    if r == 0:
        total = ValueWithError.exact(0)
        for p in range(2 * n + 1):
            q = 2 * n - p
            total = total + mzv(ones(p, q + 2), cfg) * ((-1) ** q)
        return total

    if r == 1:
        total = _zeta(2 * n + 3, cfg) * ((2 * n + 2) * _pow2_factor(2 * n + 2))
        for a in range(n + 1):
            b = n - a
            total = total - mzsv(repeat(2, a, 3, *(2,) * b), cfg) * 2
        return total

    # r = 2: leading zeta(2n+4) block ...
    lead = Fraction(-binomial(2 * n + 4, 3)) + (2 * n + 3) * _pow2_factor(2 * n + 3) - 1
    total = _zeta(2 * n + 4, cfg) * lead
    # ... alternating weighted composition sum (sign flipped vs thm53_rhs) ...
    for j in range(1, n + 1):
        sign = (-1) ** (j + 1)
        for comp in compositions(2 * n + 1 - 2 * j, j + 1, min_part=0):
            c = comp.parts
            idx = MultiIndex((c[0] + 3,) + tuple(ci + 2 for ci in c[1:]))
            total = total + mzv(idx, cfg) * (sign * thm53_weight(c))
    # ... C(p+2,2)-weighted alternating MZV sum ...
    for p in range(2 * n + 1):
        q = 2 * n - p
        total = total + mzv(ones(p + 2, q + 2), cfg) * ((-1) ** q * binomial(p + 2, 2))
    # ... and the three product sums.
    for a in range(n + 1):
        b = n - a
        total = total - mzv(MultiIndex((1, 2 * a + 3)), cfg) * mzsv(repeat(2, b), cfg)
        if b:
            total = total + _zeta(2 * a + 2, cfg) * mzsv(repeat(2, b + 1), cfg) * b
    for a in range(n):
        for b in range(n - a):
            c = n - 1 - a - b
            total = total + mzsv(repeat(2, a, 3, *(2,) * b), cfg) * _zeta(2 * c + 3, cfg)
    return total


# ---------------------------------------------------------------------------
# The catalog
# ---------------------------------------------------------------------------

def _grid(**ranges) -> list[dict]:
    """Cartesian product of named integer ranges, in parameter order."""
    names = list(ranges)
    out: list[dict] = [{}]
    for name in names:
        out = [dict(d, **{name: v}) for d in out for v in ranges[name]]
    return out


def _build_catalog() -> dict[str, IdentityDef]:
    defs: list[IdentityDef] = []

    # --- section 2 --------------------------------------------------------
    defs.append(IdentityDef(
        id="prop2.5",
        description="G_2(p,q) = C(p+q+1,q) zeta(p+q+2)",
        params=("p", "q"),
        grid=[d for d in _grid(p=range(7), q=range(7)) if d["p"] + d["q"] <= 6],
        lhs=lambda d, cfg: g_direct(GSpec(0, d["p"], d["q"]), cfg),
        rhs=lambda d, cfg: g2_closed(d["p"], d["q"]).value(cfg),
    ))

    def _thm22_lhs(d, cfg):
        spec = GSpec(d["n"], d["p"], d["q"])
        return g_compositions(spec, cfg) if d["rep"] == 0 else g_quad(spec, cfg)

    defs.append(IdentityDef(
        id="thm2.2-equiv",
        description="direct, composition, and integral forms of G agree",
        params=("n", "p", "q", "rep"),
        grid=(
            [d for d in _grid(n=range(7), p=range(7), q=range(7), rep=(0,))
             if d["n"] + d["p"] + d["q"] <= 6]
            + [d for d in _grid(n=range(5), p=range(5), q=range(5), rep=(1,))
               if d["n"] + d["p"] + d["q"] <= 4]
        ),
        lhs=_thm22_lhs,
        rhs=lambda d, cfg: g_direct(GSpec(d["n"], d["p"], d["q"]), cfg),
        tol=QUAD_TOL,  # instances with rep=0 are re-tested at SERIES_TOL in acceptance
    ))

    defs.append(IdentityDef(
        id="cor2.3",
        description="zeta*({1}^q, n+2) via the composition sum",
        params=("q", "n"),
        grid=_grid(q=range(5), n=range(3)),
        lhs=lambda d, cfg: zetastar_ones(d["q"], d["n"], cfg),
        rhs=lambda d, cfg: mzsv(ones(d["q"], d["n"] + 2), cfg),
    ))

    def _refl_lhs(d, cfg):
        p, q, k = d["p"], d["q"], d["k"]
        return g_direct(GSpec(k + 1, p - 1, q), cfg) + \
            g_direct(GSpec(k + 1, q - 1, p), cfg) * ((-1) ** k)

    def _refl_rhs(d, cfg):
        p, q, k = d["p"], d["q"], d["k"]
        total = ValueWithError.exact(0)
        for a in range(k + 1):
            b = k - a
            term = mzv(ones(p - 1, a + 2), cfg) * mzv(ones(q - 1, b + 2), cfg)
            total = total + term * ((-1) ** b)
        return total

    defs.append(IdentityDef(
        id="prop2.4",
        description="reflection formula for G_{k+3}",
        params=("p", "q", "k"),
        grid=[d for d in _grid(p=(1, 2, 3), q=(1, 2, 3), k=(0, 1, 2))
              if d["p"] + d["q"] + d["k"] + 2 <= 9],
        lhs=_refl_lhs,
        rhs=_refl_rhs,
    ))

    defs.append(IdentityDef(
        id="easy-ones",
        description="zeta*({1}^q, 2) = (q+1) zeta(q+2)",
        params=("q",),
        grid=_grid(q=range(7)),
        lhs=lambda d, cfg: g_direct(GSpec(0, 0, d["q"]), cfg),
        rhs=lambda d, cfg: _zeta(d["q"] + 2, cfg) * (d["q"] + 1),
    ))

    # --- section 3 --------------------------------------------------------
    defs.append(IdentityDef(
        id="prop3.1",
        description="generating-function route for zeta*(r+2, {2}^m)",
        params=("r", "m"),
        grid=_grid(r=range(3), m=range(4)),
        lhs=lambda d, cfg: zetastar_head2(d["r"], d["m"], cfg),
        rhs=lambda d, cfg: mzsv(repeat(d["r"] + 2, 1, *(2,) * d["m"]), cfg),
    ))

    def _thm32_lhs(d, cfg):
        r, n = d["r"], d["n"]
        scale = Fraction(1, factorial(r) * factorial(n))
        terms = []
        for mono in quadrature.expand_log_power(quadrature.F1, quadrature.F3, -1, n):
            e = list(mono.exponents)
            e[3] += r
            terms.append(quadrature.LogMonomial(mono.coeff * scale, tuple(e)))
        return quadrature.integrate_monomials(terms, cfg)

    def _thm32_rhs(d, cfg):
        r, n = d["r"], d["n"]
        if n % 2:
            return ValueWithError.exact(0)
        return mzsv(repeat(r + 2, 1, *(2,) * (n // 2)), cfg)

    defs.append(IdentityDef(
        id="thm3.2",
        description="simplex integral of F4^r (F1-F3)^n: zeta* head or zero",
        params=("r", "n"),
        grid=_grid(r=range(3), n=range(4)),
        lhs=_thm32_lhs,
        rhs=_thm32_rhs,
        tol=QUAD_TOL,
    ))

    def _prop33_lhs(d, cfg):
        r, m = d["r"], d["m"]
        total = ValueWithError.exact(0)
        for p in range(2 * m + 1):
            q = 2 * m - p
            for a in range(r + 1):
                b = r - a
                coeff = (-1) ** (q + b) * binomial(p + b, p)
                total = total + g_direct(GSpec(q, p + b, a), cfg) * coeff
        return total

    defs.append(IdentityDef(
        id="prop3.3",
        description="zeta*(r+2, {2}^m) as a signed sum of G values",
        params=("r", "m"),
        grid=_grid(r=range(3), m=range(4)),
        lhs=_prop33_lhs,
        rhs=lambda d, cfg: mzsv(repeat(d["r"] + 2, 1, *(2,) * d["m"]), cfg),
    ))

    # --- section 4 --------------------------------------------------------
    def _prop41_lhs(d, cfg):
        s, r, n = d["s"], d["r"], d["n"]
        total = ValueWithError.exact(0)
        for a in range(n + 1):
            b = n - a
            total = total + mzsv(repeat(s, a), cfg) * _zeta(s * b + r, cfg)
        return total

    def _prop41_rhs(d, cfg):
        s, r, n = d["s"], d["r"], d["n"]
        total = ValueWithError.exact(0)
        for a in range(n + 1):
            b = n - a
            total = total + mzsv(repeat(s, a, r, *(s,) * b), cfg)
        return total

    defs.append(IdentityDef(
        id="prop4.1",
        description="interleaving an r into a homogeneous {s} block",
        params=("s", "r", "n"),
        grid=_grid(s=(2, 3), r=(2, 3), n=range(3)),
        lhs=_prop41_lhs,
        rhs=_prop41_rhs,
    ))

    def _prop42_lhs(d, cfg):
        n = d["n"]
        total = ValueWithError.exact(0)
        for t in range(n + 1):
            total = total + mzv(ones(t, n + 2 - t), cfg) * ((-1) ** (t + n))
        return total

    defs.append(IdentityDef(
        id="prop4.2",
        description="alternating height-one MZV sum: zeta*({2}^(m+1)) or zero",
        params=("n",),
        grid=_grid(n=range(6)),
        lhs=_prop42_lhs,
        rhs=lambda d, cfg: (
            mzsv(repeat(2, d["n"] // 2 + 1), cfg) if d["n"] % 2 == 0
            else ValueWithError.exact(0)
        ),
    ))

    def _prop43_lhs(d, cfg):
        n = d["n"]
        total = ValueWithError.exact(0)
        for t in range(n + 1):
            total = total + mzv(ones(t + 1, n + 2 - t), cfg) * ((-1) ** (t + n) * (t + 1))
        return total

    def _prop43_rhs(d, cfg):
        n = d["n"]
        if n % 2:
            m = (n - 1) // 2
            return mzsv(repeat(2, m + 2), cfg) * (m + 1)
        m = n // 2
        total = ValueWithError.exact(0)
        for a in range(m + 1):
            b = m - a
            total = total + mzsv(repeat(2, a, 3, *(2,) * b), cfg)
        return total

    defs.append(IdentityDef(
        id="prop4.3",
        description="weighted alternating height-one MZV sum",
        params=("n",),
        grid=_grid(n=range(5)),
        lhs=_prop43_lhs,
        rhs=_prop43_rhs,
    ))

    def _prop44_lhs(d, cfg):
        n = d["n"]
        total = ValueWithError.exact(0)
        for p in range(2 * n + 3):
            q = 2 * n + 2 - p
            total = total + mzsv(ones(p, q + 2), cfg)
        return total

    defs.append(IdentityDef(
        id="prop4.4",
        description="sum of zeta*({1}^p, q+2) over fixed even weight",
        params=("n",),
        grid=_grid(n=range(3)),
        lhs=_prop44_lhs,
        rhs=lambda d, cfg: _zeta(2 * d["n"] + 4, cfg)
        * ((2 * d["n"] + 3) * _pow2_factor(2 * d["n"] + 3)),
    ))

    def _aoki_lhs(d, cfg):
        total = ValueWithError.exact(0)
        for idx in admissible_by_weight_height(d["k"], d["s"]):
            total = total + mzsv(idx, cfg)
        return total

    defs.append(IdentityDef(
        id="aoki-ohno",
        description="zeta* sum over fixed weight and height",
        params=("k", "s"),
        grid=(
            _grid(k=range(2, 9), s=(1,))
            + [d for d in _grid(k=range(4, 9), s=(2,))]
        ),
        lhs=_aoki_lhs,
        rhs=lambda d, cfg: _zeta(d["k"], cfg)
        * (2 * binomial(d["k"] - 1, 2 * d["s"] - 1) * (1 - Fraction(2) ** (1 - d["k"]))),
    ))

    defs.append(IdentityDef(
        id="zetastar-2s",
        description="zeta*({2}^m) = 2 (1 - 2^(1-2m)) zeta(2m)",
        params=("m",),
        grid=_grid(m=range(1, 5)),
        lhs=lambda d, cfg: mzsv(repeat(2, d["m"]), cfg),
        rhs=lambda d, cfg: _zeta(2 * d["m"], cfg) * _pow2_factor(2 * d["m"] - 1),
    ))

    # --- section 5 --------------------------------------------------------
    def _prop51_lhs(d, cfg):
        n = d["n"]
        total = ValueWithError.exact(0)
        for p in range(2 * n + 1):
            q = 2 * n - p
            total = total + g_direct(GSpec(q, p, 2), cfg) * ((-1) ** q)
        return total

    def _prop51_rhs(d, cfg):
        n = d["n"]
        total = ValueWithError.exact(0)
        for p in range(2 * n + 2):
            q = 2 * n + 1 - p
            total = total + g_direct(GSpec(q, 1, p), cfg)
        for a in range(n + 1):
            b = n - a
            total = total - mzv(MultiIndex((1, 2 * a + 3)), cfg) * mzsv(repeat(2, b), cfg)
        return total

    defs.append(IdentityDef(
        id="prop5.1",
        description="signed G(p,2) sum vs G(1,p) sum with product correction",
        params=("n",),
        grid=_grid(n=range(3)),
        lhs=_prop51_lhs,
        rhs=_prop51_rhs,
    ))

    def _prop52_lhs(d, cfg):
        n = d["n"]
        total = ValueWithError.exact(0)
        for p in range(2 * n + 1):
            q = 2 * n - p
            total = total + g_direct(GSpec(q, p + 1, 1), cfg) * ((-1) ** q * (p + 1))
        return total

    def _prop52_rhs(d, cfg):
        n = d["n"]
        total = ValueWithError.exact(0)
        for p in range(2 * n + 1):
            q = 2 * n - p
            total = total + mzsv(ones(p + 2, q + 2), cfg) * (p + 1)
        for a in range(n + 1):
            b = n - a
            if b:
                total = total - _zeta(2 * a + 2, cfg) * mzsv(repeat(2, b + 1), cfg) * b
        for a in range(n):
            for b in range(n - a):
                c = n - 1 - a - b
                total = total - mzsv(repeat(2, a, 3, *(2,) * b), cfg) * _zeta(2 * c + 3, cfg)
        return total

    defs.append(IdentityDef(
        id="prop5.2",
        description="weighted signed G(p+1,1) sum vs zeta* sums",
        params=("n",),
        grid=_grid(n=range(3)),
        lhs=_prop52_lhs,
        rhs=_prop52_rhs,
    ))

    def _thm53_lhs(d, cfg):
        n = d["n"]
        total = ValueWithError.exact(0)
        for p in range(2 * n + 2):
            q = 2 * n + 1 - p
            total = total + mzsv(ones(p + 1, q + 2), cfg) * (p + 1)
            total = total - g_direct(GSpec(q, 1, p), cfg)
        return total

    defs.append(IdentityDef(
        id="thm5.3",
        description="zeta*({1}^(p+1), q+2) sum minus G(1,p) sum, closed form",
        params=("n",),
        grid=_grid(n=range(3)),
        lhs=_thm53_lhs,
        rhs=lambda d, cfg: thm53_rhs(d["n"], cfg),
        tol=1e-5,
    ))

    # --- section 6 --------------------------------------------------------
    def _eq61_lhs(d, cfg):
        n = d["n"]
        total = ValueWithError.exact(0)
        for a in range(n + 1):
            b = n - a
            coeff = 2 + (1 if a == 0 else 0)
            total = total + mzsv(repeat(2, a, 3, *(2,) * b), cfg) * coeff
        return total

    defs.append(IdentityDef(
        id="eq6.1",
        description="(2 + delta_{0a}) weighted interleaved-3 sum",
        params=("n",),
        grid=_grid(n=range(4)),
        lhs=_eq61_lhs,
        rhs=lambda d, cfg: _zeta(2 * d["n"] + 3, cfg)
        * ((2 * d["n"] + 2) * _pow2_factor(2 * d["n"] + 2)),
        tol=1e-5,
    ))

    for r in range(3):
        defs.append(IdentityDef(
            id=f"sec6-r{r}",
            description=f"zeta*({r + 2}, {{2}}^n) assembled from Euler-sum formulas",
            params=("n",),
            grid=_grid(n=range(3)),
            lhs=(lambda rr: lambda d, cfg: zetastar_head_eval(rr, d["n"], cfg))(r),
            rhs=(lambda rr: lambda d, cfg: mzsv(repeat(rr + 2, 1, *(2,) * d["n"]), cfg))(r),
            tol=1e-4 if r == 2 else 1e-5,
        ))

    defs.append(IdentityDef(
        id="duality-ones",
        description="zeta({1}^m, 2) = zeta(m+2)",
        params=("m",),
        grid=_grid(m=range(7)),
        lhs=lambda d, cfg: mzv(ones(d["m"], 2), cfg),
        rhs=lambda d, cfg: _zeta(d["m"] + 2, cfg),
    ))

    return {d.id: d for d in defs}


CATALOG: dict[str, IdentityDef] = _build_catalog()


def catalog_ids() -> list[str]:
    return sorted(CATALOG)


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------

def _params_key(params: dict) -> tuple:
    return tuple(sorted(params.items()))


def run_identity(ident: str, params: dict, cfg: PrecisionConfig,
                 tol: Optional[float] = None) -> IdentityReport:
    """Evaluate both sides of one catalog identity instance."""
    if ident not in CATALOG:
        raise KeyError(f"unknown identity id {ident!r}")
    idef = CATALOG[ident]
    missing = [p for p in idef.params if p not in params]
    if missing:
        raise ValueError(f"{ident} needs parameters {missing}")
    use_tol = idef.tol if tol is None else tol
    t0 = time.perf_counter()
    try:
        with precision(cfg):
            lhs = idef.lhs(params, cfg)
            rhs = idef.rhs(params, cfg)
            residual = abs(lhs.value - rhs.value)
            bound = max(
                mpf(use_tol) * max(abs(lhs.value), abs(rhs.value)),
                lhs.err + rhs.err,
            )
            passed = bool(residual <= bound)
        return IdentityReport(
            ident, dict(params), lhs, rhs, float(residual), use_tol, passed,
            time.perf_counter() - t0,
        )
    except (ValueError, ArithmeticError) as exc:
        return IdentityReport(
            ident, dict(params), None, None, float("inf"), use_tol, False,
            time.perf_counter() - t0, error=f"{type(exc).__name__}: {exc}",
        )


def run_suite(pattern: Optional[str], cfg: PrecisionConfig,
              threads: int = 1, tol: Optional[float] = None) -> list[IdentityReport]:
    """Run every matching catalog entry over its default parameter grid.

    Reports come back ordered by (id, params) regardless of scheduling;
    individual failures are recorded, never raised.
    """
    selected = [
        CATALOG[i] for i in catalog_ids()
        if pattern is None or fnmatch.fnmatch(i, pattern)
    ]
    jobs = [(idef.id, params) for idef in selected for params in idef.grid]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(
                lambda job: run_identity(job[0], job[1], cfg, tol), jobs
            ))
    else:
        reports = [run_identity(ident, params, cfg, tol) for ident, params in jobs]
    reports.sort(key=lambda r: (r.id, _params_key(r.params)))
    return reports
