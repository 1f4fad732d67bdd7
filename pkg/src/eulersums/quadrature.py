"""Tanh-sinh integration of logarithmic monomials over the simplex E_2.

The integrands are products of five canonical factors over
E_2 = {0 < t1 < t2 < 1} with measure dt1 dt2 / ((1-t1) t2):

    F1 = log 1/(1-t1)   F2 = log 1/(1-t2)   F3 = log t2/t1
    F4 = log (1-t1)/(1-t2)                  F5 = log 1/t2

The substitution t1 = s*t2 maps E_2 to the unit square and cancels the
1/t2 of the measure, leaving

    integral over [0,1]^2 of  prod F_i^{e_i} * ds dt2 / (1 - s*t2),

with F3 = log(1/s) decoupled onto one axis.  Every remaining endpoint
singularity is a power of a logarithm, which the double-exponential
(tanh-sinh) transform absorbs; node tables are cached per level and the
level-to-level difference provides the error estimate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from mpmath import mpf

from .numerics import PrecisionConfig, ValueWithError

__all__ = [
    "LogMonomial",
    "QuadratureNonConvergence",
    "expand_log_power",
    "integrate_monomials",
    "F1",
    "F2",
    "F3",
    "F4",
    "F5",
]

# factor identifiers, indexing into LogMonomial.exponents
F1, F2, F3, F4, F5 = 1, 2, 3, 4, 5

MAX_TOTAL_DEGREE = 12


class QuadratureNonConvergence(ArithmeticError):
    """Raised when refining the level stops shrinking the difference."""


@dataclass(frozen=True)
class LogMonomial:
    """coeff * F1^e1 ... F5^e5 over E_2 with the canonical measure."""

    coeff: Fraction
    exponents: tuple[int, int, int, int, int]

    def __post_init__(self) -> None:
        if self.coeff == 0:
            raise ValueError("monomial coefficient must be nonzero")
        if len(self.exponents) != 5 or any(e < 0 for e in self.exponents):
            raise ValueError(f"need 5 nonnegative exponents, got {self.exponents}")
        if sum(self.exponents) > MAX_TOTAL_DEGREE:
            raise ValueError(f"total degree exceeds {MAX_TOTAL_DEGREE}")


def expand_log_power(
    base_a: int, base_b: int, sign: int, n: int
) -> list[LogMonomial]:
    """Binomial expansion of (F_a + sign * F_b)^n into monomials."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    for fid in (base_a, base_b):
        if not 1 <= fid <= 5:
            raise ValueError(f"unknown factor id {fid}")
    if base_a == base_b:
        raise ValueError("expansion bases must differ")
    if n < 0 or n > MAX_TOTAL_DEGREE:
        raise ValueError(f"exponent must be in 0..{MAX_TOTAL_DEGREE}, got {n}")
    out = []
    for t in range(n, -1, -1):
        coeff = Fraction(comb(n, t) * sign ** (n - t))
        exps = [0] * 5
        exps[base_a - 1] += t
        exps[base_b - 1] += n - t
        out.append(LogMonomial(coeff, tuple(exps)))
    return out


# ---------------------------------------------------------------------------
# Node tables: x(t) = (1 + tanh((pi/2) sinh t)) / 2 on (0, 1)
# ---------------------------------------------------------------------------

_T_CUT = 6.0          # |t| beyond this underflows double precision anyway
_node_cache: dict[int, tuple[np.ndarray, ...]] = {}


def _nodes(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(x, 1-x, log x, log(1-x), w) arrays for one refinement level.

    Level 3 corresponds to step h = 1 in the tanh-sinh variable; each
    level halves h.  Endpoint distances and logs are computed from the
    transform itself, so they stay accurate down to ~1e-280.
    """
    cached = _node_cache.get(level)
    if cached is not None:
        return cached
    h = 2.0 ** (3 - level)
    k = np.arange(-int(np.ceil(_T_CUT / h)), int(np.ceil(_T_CUT / h)) + 1)
    t = k * h
    g = 0.5 * np.pi * np.sinh(t)
    x = 1.0 / (1.0 + np.exp(-2.0 * g))
    omx = 1.0 / (1.0 + np.exp(2.0 * g))
    logx = -np.logaddexp(0.0, -2.0 * g)
    logomx = -np.logaddexp(0.0, 2.0 * g)
    # sech^2(g), overflow-free
    sech2 = 4.0 * np.exp(-2.0 * np.abs(g)) / (1.0 + np.exp(-2.0 * np.abs(g))) ** 2
    w = h * (np.pi / 4.0) * np.cosh(t) * sech2
    keep = (w > 1e-280) & (omx > 1e-280) & (x > 1e-280)
    result = (x[keep], omx[keep], logx[keep], logomx[keep], w[keep])
    _node_cache[level] = result
    return result


def _level_sum(terms: list[LogMonomial], level: int) -> float:
    """Tensor tanh-sinh sum of all monomials at one level."""
    xs, omxs, logxs, logomxs, ws = _nodes(level)     # s axis
    xt, omxt, logxt, logomxt, wt = _nodes(level)     # t2 axis
    coeffs = [float(m.coeff) for m in terms]
    neg_logxs = -logxs                                # F3 = log(1/s)
    f3_pows: dict[int, np.ndarray] = {0: np.ones_like(xs)}
    for mono in terms:
        e3 = mono.exponents[2]
        if e3 not in f3_pows:
            f3_pows[e3] = neg_logxs**e3

    row_totals = np.zeros(len(xt))
    for jdx in range(len(xt)):
        v = omxt[jdx]
        f2 = -logomxt[jdx]                            # log 1/(1-t2)
        f5 = -logxt[jdx]                              # log 1/t2
        u = omxs + xs * v                             # 1 - s*t2, no cancellation
        f1 = -np.log(u)                               # log 1/(1-t1)
        f4 = np.log(omxs / v + xs)                    # log (1-t1)/(1-t2)
        meas = ws * (wt[jdx] / u)
        pows: dict[tuple[int, int], np.ndarray] = {}
        inner = np.zeros_like(xs)
        for mono, c in zip(terms, coeffs):
            e1, e2, e3, e4, e5 = mono.exponents
            vec = f3_pows[e3]
            if e1:
                key = (1, e1)
                if key not in pows:
                    pows[key] = f1**e1
                vec = vec * pows[key]
            if e4:
                key = (4, e4)
                if key not in pows:
                    pows[key] = f4**e4
                vec = vec * pows[key]
            scal = c
            if e2:
                scal *= f2**e2
            if e5:
                scal *= f5**e5
            inner = inner + scal * vec
        row_totals[jdx] = float(np.dot(meas, inner))
    return float(np.sum(row_totals))


def integrate_monomials(
    terms: list[LogMonomial], cfg: PrecisionConfig
) -> ValueWithError:
    """Integrate a sum of monomials over E_2 at cfg.quad_level.

    The three finest levels are evaluated; err is twice the last
    level-to-level difference.  A difference that grows well past the
    previous one (outside rounding noise) raises QuadratureNonConvergence.
    """
    if not terms:
        return ValueWithError.exact(0)
    level = cfg.quad_level
    levels = [lv for lv in (level - 2, level - 1, level) if lv >= 3]
    sums = [_level_sum(terms, lv) for lv in levels]
    value = sums[-1]
    scale = max(abs(value), 1.0)
    if len(sums) >= 2:
        d2 = abs(sums[-1] - sums[-2])
        if len(sums) >= 3:
            d1 = abs(sums[-2] - sums[-3])
            if d2 > 8.0 * d1 and d2 > 1e-10 * scale:
                raise QuadratureNonConvergence(
                    f"level {levels[-1]} difference {d2:.3e} exceeds "
                    f"level {levels[-2]} difference {d1:.3e}"
                )
        err = 2.0 * d2 + 1e-15 * scale
    else:
        err = 1e-12 * scale
    return ValueWithError(mpf(value), mpf(err))
