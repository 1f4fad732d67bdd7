"""Extended-precision substrate: configuration, tracked-error values,
exact rationals, Bernoulli numbers, binomials, and zeta at integer points.

All floating arithmetic is mpmath binary floating point run at
``cfg.digits`` significant decimal digits plus a fixed guard margin.
Error estimates are deliberately conservative: they compose additively
across sums and by first-order propagation across products.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import mp, mpf

__all__ = [
    "PrecisionConfig",
    "ValueWithError",
    "Rational",
    "GUARD_DIGITS",
    "working_dps",
    "precision",
    "bernoulli",
    "binomial",
    "pi_value",
    "riemann_zeta",
    "zeta_tail",
]

# Alias: exact rationals are stdlib Fractions (always reduced, denominator > 0).
Rational = Fraction

# Extra decimal digits carried internally so that accumulated rounding over
# ~10^5-term sweeps stays far below the requested precision.
GUARD_DIGITS = 15


@dataclass(frozen=True)
class PrecisionConfig:
    """Working-precision knobs shared by every evaluator.

    digits      significant decimal digits of working arithmetic
    cutoff      series truncation bound N (evaluators may stop earlier
                when their tail correction already meets ``digits``)
    extrapolate apply the tail-acceleration step (dual-cutoff checked)
    quad_level  tanh-sinh refinement level for double integrals
    """

    digits: int = 30
    cutoff: int = 100_000
    extrapolate: bool = True
    quad_level: int = 10

    def __post_init__(self) -> None:
        if self.digits < 15:
            raise ValueError(f"digits must be >= 15, got {self.digits}")
        if self.cutoff < 100:
            raise ValueError(f"cutoff must be >= 100, got {self.cutoff}")
        if self.quad_level < 3:
            raise ValueError(f"quad_level must be >= 3, got {self.quad_level}")


def working_dps(cfg: PrecisionConfig) -> int:
    return cfg.digits + GUARD_DIGITS


class precision:
    """Context manager pinning mp.dps to the working precision of ``cfg``.

    Re-entrant and idempotent for a fixed config, so concurrent suite
    instances sharing one PrecisionConfig write the same value.
    """

    def __init__(self, cfg: PrecisionConfig):
        self._dps = working_dps(cfg)
        self._saved = 0

    def __enter__(self) -> "precision":
        self._saved = mp.dps
        mp.dps = self._dps
        return self

    def __exit__(self, *exc) -> None:
        mp.dps = self._saved


@dataclass
class ValueWithError:
    """A high-precision real paired with a nonnegative absolute error bound."""

    value: mpf
    err: mpf

    def __post_init__(self) -> None:
        self.err = abs(mpf(self.err))
        if not mp.isfinite(self.err):
            raise ValueError("error estimate must be finite")

    def __add__(self, other: "ValueWithError") -> "ValueWithError":
        return ValueWithError(self.value + other.value, self.err + other.err)

    def __sub__(self, other: "ValueWithError") -> "ValueWithError":
        return ValueWithError(self.value - other.value, self.err + other.err)

    def __mul__(self, other: Union["ValueWithError", int, Fraction, mpf]) -> "ValueWithError":
        if isinstance(other, ValueWithError):
            return ValueWithError(
                self.value * other.value,
                abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err,
            )
        c = mpf(other.numerator) / other.denominator if isinstance(other, Fraction) else mpf(other)
        return ValueWithError(self.value * c, abs(c) * self.err)

    __rmul__ = __mul__

    def __neg__(self) -> "ValueWithError":
        return ValueWithError(-self.value, self.err)

    @staticmethod
    def exact(x) -> "ValueWithError":
        return ValueWithError(mpf(x), mpf(0))

    def to_json(self, digits: int = 30) -> dict:
        return {
            "value": mp.nstr(self.value, digits, strip_zeros=False),
            "err": mp.nstr(self.err, 3),
        }


# ---------------------------------------------------------------------------
# Exact integer/rational helpers
# ---------------------------------------------------------------------------

def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n (convention B_1 = -1/2) as an exact Fraction.

    Computed by the defining recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0.
    """
    if n < 0:
        raise ValueError(f"bernoulli needs n >= 0, got {n}")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= n:
            m = len(_bernoulli_cache)
            s = sum(
                Fraction(math.comb(m + 1, k)) * _bernoulli_cache[k] for k in range(m)
            )
            _bernoulli_cache.append(-s / (m + 1))
        return _bernoulli_cache[n]


# ---------------------------------------------------------------------------
# Pi and the Riemann zeta function at integers
# ---------------------------------------------------------------------------

_pi_cache: dict[int, mpf] = {}
_pi_lock = threading.Lock()


def pi_value(cfg: PrecisionConfig) -> mpf:
    """Pi at the working precision of ``cfg``, cached per digit count."""
    dps = working_dps(cfg)
    with _pi_lock:
        hit = _pi_cache.get(dps)
        if hit is None:
            with precision(cfg):
                hit = +mp.pi  # mpmath uses an AGM-class scheme internally
            _pi_cache[dps] = hit
        return hit


def zeta_tail(s: int, n: int) -> mpf:
    """sum_{k>n} k^{-s} by Euler-Maclaurin with Bernoulli corrections.

    Must be called with mp.dps already set; corrections are added until
    they drop below the working epsilon (fast, since they decay like
    (2*pi*n)^(-2j)).
    """
    nn = mpf(n)
    tail = nn ** (1 - s) / (s - 1) - nn ** (-s) / 2
    eps = mpf(10) ** (-(mp.dps + 2))
    rising = mpf(s)      # s(s+1)...(s+2j-2)
    fact = mpf(2)        # (2j)!
    power = nn ** (-(s + 1))
    inv_n2 = nn ** (-2)
    j = 1
    while True:
        b = bernoulli(2 * j)
        term = mpf(b.numerator) / b.denominator / fact * rising * power
        tail += term
        if abs(term) < eps * abs(tail) or j > mp.dps:
            break
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        power *= inv_n2
        j += 1
    return tail


def riemann_zeta(s: int, cfg: PrecisionConfig) -> ValueWithError:
    """zeta(s) for integer s >= 2 by direct sum plus Euler-Maclaurin tail.

    The cutoff grows with the requested precision so that the correction
    remainder sits below 10^(-digits); the reported err is a rounding /
    truncation floor well above the true residual.
    """
    if s < 2:
        raise ValueError(f"riemann_zeta needs integer s >= 2, got {s}")
    with precision(cfg):
        n = max(10, working_dps(cfg))
        head = mp.fsum(mpf(k) ** (-s) for k in range(1, n + 1))
        value = head + zeta_tail(s, n)
        err = abs(value) * mpf(10) ** (-(cfg.digits + GUARD_DIGITS - 4))
        return ValueWithError(value, err)
