"""Convergent-series evaluation of multiple zeta and zeta-star values.

The evaluator runs the ascending prefix dynamic program up to a sweep
bound N, then replaces the dropped tail by a closed-form correction: the
partial sums of every index prefix admit asymptotic expansions in the
(ln k)^i k^(-j) algebra (see logseries), whose free constants are read
off numerically at the sweep boundary.  Summing the corrected tail by
Euler-Maclaurin reproduces the full series to roughly N^(-jmax), so the
default sweep bound can stay in the low thousands even for indices whose
raw tails only decay like (ln N)^p / N.

Two matching points (N/2 and N) are always evaluated; their difference,
doubled, is the reported error estimate (plus a truncation proxy and a
rounding floor).  With ``extrapolate`` off the plain partial sum at the
configured cutoff is returned instead, dual-cutoff error included.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

from mpmath import mp, mpf

from .indices import MultiIndex
from .logseries import LogSeries
from .numerics import PrecisionConfig, ValueWithError, precision, zeta_tail

__all__ = [
    "DEPTH_LIMIT",
    "WEIGHT_LIMIT",
    "DivergentIndexError",
    "DomainLimitError",
    "SeriesEvaluation",
    "evaluate",
    "mzv",
    "mzsv",
    "mzsv_from_mzv",
    "homogeneous_tail_coeff",
    "zetastar_head2",
    "effective_bounds",
    "jmax_for",
    "prefix_expansion",
    "seed_prefix_values",
    "clear_caches",
]

DEPTH_LIMIT = 12
WEIGHT_LIMIT = 16


class DivergentIndexError(ValueError):
    """Nonempty index whose last entry is 1: the series diverges."""


class DomainLimitError(ValueError):
    """Index outside the supported depth/weight envelope."""


@dataclass
class SeriesEvaluation:
    """One engine run: raw partial sum and tail-corrected value."""

    index: MultiIndex
    cutoff_used: int
    raw: ValueWithError
    extrapolated: ValueWithError


_lock = threading.RLock()
_values: dict = {}       # (parts, star, M, dps)        -> mpf  zeta_M(parts)
_expansions: dict = {}   # (parts, star, M, dps, jmax)  -> LogSeries
_evaluations: dict = {}  # (parts, star, digits, cutoff, extrapolate) -> SeriesEvaluation


def clear_caches() -> None:
    with _lock:
        _values.clear()
        _expansions.clear()
        _evaluations.clear()


def effective_bounds(cfg: PrecisionConfig) -> tuple[int, int]:
    """(N/2, N) sweep checkpoints actually used.

    With tail correction on, accuracy is set by the correction order, not
    the sweep length, so the bound is capped well below the configured
    cutoff; with it off the cutoff is honored literally.
    """
    if cfg.extrapolate:
        n = min(cfg.cutoff, max(1200, 40 * cfg.digits))
    else:
        n = cfg.cutoff
    return max(50, n // 2), n


def jmax_for(dps: int, m_small: int) -> int:
    j = math.ceil((dps + 6) * math.log(10) / math.log(max(m_small, 10))) + 2
    return max(8, min(j, 48))


def _sweep(parts: tuple[int, ...], star: bool, checkpoints: list[int]) -> dict[int, list[mpf]]:
    """Prefix-DP sweep; returns accumulator snapshots at each checkpoint."""
    cps = sorted(set(checkpoints))
    r = len(parts)
    exps = sorted(set(parts))
    acc = [mpf(1)] + [mpf(0)] * r
    snaps: dict[int, list[mpf]] = {}
    ci = 0
    for k in range(1, cps[-1] + 1):
        inv = mpf(1) / k
        pw = {a: inv**a for a in exps}
        if star:
            for j in range(1, r + 1):
                acc[j] += acc[j - 1] * pw[parts[j - 1]]
        else:
            for j in range(r, 0, -1):
                acc[j] += acc[j - 1] * pw[parts[j - 1]]
        if k == cps[ci]:
            snaps[k] = list(acc)
            ci += 1
    return snaps


def seed_prefix_values(parts: tuple[int, ...], star: bool, snaps: dict[int, list[mpf]], dps: int) -> None:
    with _lock:
        for m, acc in snaps.items():
            for lvl in range(len(parts) + 1):
                _values.setdefault((parts[:lvl], star, m, dps), acc[lvl])


def _ensure_values(parts: tuple[int, ...], star: bool, m: int, dps: int) -> None:
    with _lock:
        if (parts, star, m, dps) in _values:
            return
    snaps = _sweep(parts, star, [m])
    seed_prefix_values(parts, star, snaps, dps)


def prefix_expansion(parts: tuple[int, ...], star: bool, m: int, dps: int, jmax: int) -> LogSeries:
    """Asymptotic expansion of k |-> zeta_k(parts) (or star), valid k >= m.

    Built level by level: the level-j summand is the level-(j-1) expansion
    (shifted to k-1 for strict sums) times k^(-a_j); its Euler-Maclaurin
    antiderivative gives the shape, and the free constant is pinned by the
    numeric partial sum at the matching point m.
    """
    key = (parts, star, m, dps, jmax)
    with _lock:
        hit = _expansions.get(key)
    if hit is not None:
        return hit
    _ensure_values(parts, star, m, dps)
    e = LogSeries.one(jmax)
    for lvl in range(1, len(parts) + 1):
        sub = parts[:lvl]
        subkey = (sub, star, m, dps, jmax)
        with _lock:
            cached = _expansions.get(subkey)
        if cached is not None:
            e = cached
            continue
        g = (e if star else e.shift_km1()).mul_kpow(parts[lvl - 1])
        big_g = g.em_antiderivative()
        with _lock:
            val = _values[(sub, star, m, dps)]
        e = big_g.add_const(val - big_g.eval(m))
        with _lock:
            _expansions[subkey] = e
    return e


def _tail(parts: tuple[int, ...], star: bool, m: int, dps: int, jmax: int) -> tuple[mpf, mpf]:
    """(sum over k > m of the index terms, dropped-order proxy)."""
    prefix = parts[:-1]
    e = prefix_expansion(prefix, star, m, dps, jmax)
    h = (e if star else e.shift_km1()).mul_kpow(parts[-1])
    big_g = h.em_antiderivative()
    return -big_g.eval(m), big_g.top_order_magnitude(m)


def _validate(idx: MultiIndex) -> None:
    if idx.parts and idx.parts[-1] < 2:
        raise DivergentIndexError(
            f"index {idx} has last exponent {idx.parts[-1]} < 2: divergent series"
        )
    if idx.depth > DEPTH_LIMIT:
        raise DomainLimitError(f"depth {idx.depth} exceeds limit {DEPTH_LIMIT}")
    if idx.weight > WEIGHT_LIMIT:
        raise DomainLimitError(f"weight {idx.weight} exceeds limit {WEIGHT_LIMIT}")


def evaluate(idx: MultiIndex, star: bool, cfg: PrecisionConfig) -> SeriesEvaluation:
    """Full engine run for one admissible (or empty) index."""
    _validate(idx)
    parts = idx.parts
    if not parts:
        one = ValueWithError.exact(1)
        return SeriesEvaluation(idx, 0, one, one)
    key = (parts, star, cfg.digits, cfg.cutoff, cfg.extrapolate)
    with _lock:
        hit = _evaluations.get(key)
    if hit is not None:
        return hit

    with precision(cfg):
        dps = mp.dps
        m1, m2 = effective_bounds(cfg)
        snaps = _sweep(parts, star, [m1, m2])
        seed_prefix_values(parts, star, snaps, dps)
        s1 = snaps[m1][len(parts)]
        s2 = snaps[m2][len(parts)]
        jmax = jmax_for(dps, m1)

        t1, _ = _tail(parts, star, m1, dps, jmax)
        t2, trunc2 = _tail(parts, star, m2, dps, jmax)
        v1 = s1 + t1
        v2 = s2 + t2

        floor = (abs(v2) + 1) * mpf(10) ** (-(cfg.digits + 2))
        raw = ValueWithError(s2, 2 * abs(s2 - s1) + floor)
        extrapolated = ValueWithError(v2, 2 * abs(v2 - v1) + trunc2 + floor)

    result = SeriesEvaluation(idx, m2, raw, extrapolated)
    with _lock:
        _evaluations[key] = result
    return result


def mzv(idx: MultiIndex, cfg: PrecisionConfig) -> ValueWithError:
    """zeta(idx) = sum over k_1 < ... < k_r of prod k_i^(-a_i)."""
    ev = evaluate(idx, star=False, cfg=cfg)
    return ev.extrapolated if cfg.extrapolate else ev.raw


def mzsv(idx: MultiIndex, cfg: PrecisionConfig) -> ValueWithError:
    """zeta*(idx): same series with non-strict inequalities."""
    ev = evaluate(idx, star=True, cfg=cfg)
    return ev.extrapolated if cfg.extrapolate else ev.raw


def mzsv_from_mzv(idx: MultiIndex, cfg: PrecisionConfig) -> ValueWithError:
    """Independent zeta* oracle: sum of zeta over adjacent-entry merges.

    Each of the 2^(depth-1) ways of collapsing runs of adjacent entries
    (replacing them by their sum) contributes one MZV; the non-strict sum
    is their total.  Component errors add.
    """
    _validate(idx)
    parts = idx.parts
    r = len(parts)
    if r == 0:
        return ValueWithError.exact(1)
    total = ValueWithError.exact(0)
    for mask in range(1 << (r - 1)):
        merged: list[int] = [parts[0]]
        for pos in range(1, r):
            if mask >> (pos - 1) & 1:
                merged[-1] += parts[pos]
            else:
                merged.append(parts[pos])
        total = total + mzv(MultiIndex(tuple(merged)), cfg)
    return total


# ---------------------------------------------------------------------------
# Trailing-{2} machinery: coefficients of prod_{n>=k} (1 - x^2/n^2)^(-1)
# ---------------------------------------------------------------------------

def homogeneous_tail_coeff(k: int, m: int, cfg: PrecisionConfig) -> ValueWithError:
    """c_m(k): coefficient of x^(2m) in prod_{n>=k} (1 - x^2/n^2)^(-1).

    Equals the non-strict m-fold sum of n_i^(-2) over k <= n_1 <= ... <= n_m.
    Computed by a polynomial-coefficient DP over the factors n = k..N (each
    factor truncated at order m, which is exact for coefficient m) times the
    closed-form factor for n > N; two cutoffs give the error estimate.
    """
    if k < 1 or m < 0:
        raise ValueError(f"need k >= 1 and m >= 0, got ({k}, {m})")
    if m == 0:
        return ValueWithError.exact(1)
    with precision(cfg):
        n_half, n_full = effective_bounds(cfg)
        v1 = _tail_coeff_at(k, m, max(n_half, k - 1))
        v2 = _tail_coeff_at(k, m, max(n_full, k - 1))
        floor = (abs(v2) + 1) * mpf(10) ** (-(cfg.digits + 2))
        return ValueWithError(v2, 2 * abs(v2 - v1) + floor)


def _tail_coeff_at(k: int, m: int, n: int) -> mpf:
    # partial product over k..n, coefficients in y = x^2 up to order m
    coeffs = [mpf(1)] + [mpf(0)] * m
    for v in range(k, n + 1):
        iv2 = mpf(v) ** (-2)
        powers = [mpf(1)]
        for _ in range(m):
            powers.append(powers[-1] * iv2)
        coeffs = [
            sum(coeffs[u] * powers[t - u] for u in range(t + 1)) for t in range(m + 1)
        ]
    # closed tail factor: exp(sum_t y^t/t * sum_{v>n} v^(-2t))
    tails = [zeta_tail(2 * t, n) for t in range(1, m + 1)]
    efac = [mpf(1)] + [mpf(0)] * m
    for j in range(1, m + 1):
        efac[j] = sum(tails[t - 1] * efac[j - t] for t in range(1, j + 1)) / j
    return sum(coeffs[u] * efac[m - u] for u in range(m + 1))


def zetastar_head2(r: int, m: int, cfg: PrecisionConfig) -> ValueWithError:
    """zeta*(r+2, {2}^m) by the generating-function route.

    Sums k^(-(r+2)) * c_m(k) over k, with c_m computed by the downward
    recurrence c_m(k) = c_m(k+1) + k^(-2) c_{m-1}(k) seeded from the
    asymptotic series of c_m at the sweep boundary.  Must agree with the
    direct mzsv of the same index.
    """
    if r < 0 or m < 0:
        raise ValueError(f"need r, m >= 0, got ({r}, {m})")
    with precision(cfg):
        dps = mp.dps
        m1, m2 = effective_bounds(cfg)
        jmax = jmax_for(dps, m1)
        v1 = _head2_at(r, m, m1, jmax)
        v2 = _head2_at(r, m, m2, jmax)
        floor = (abs(v2) + 1) * mpf(10) ** (-(cfg.digits + 2))
        return ValueWithError(v2, 2 * abs(v2 - v1) + floor)


def _head2_at(r: int, m: int, n: int, jmax: int) -> mpf:
    # asymptotic series s_j(k) ~ c_j(k); no logs arise (all entries >= 2)
    series = [LogSeries.one(jmax)]
    for _ in range(m):
        f = series[-1].mul_kpow(2)
        series.append(f.add(f.em_antiderivative().scale(-1)))
    # numeric c_j(k) for k <= n by downward recurrence
    prev = [mpf(1)] * (n + 2)
    for j in range(1, m + 1):
        row = [mpf(0)] * (n + 2)
        row[n + 1] = series[j].eval(n + 1)
        for k in range(n, 0, -1):
            row[k] = row[k + 1] + mpf(k) ** (-2) * prev[k]
        prev = row
    head = mp.fsum(mpf(k) ** (-(r + 2)) * prev[k] for k in range(1, n + 1))
    tail = -series[m].mul_kpow(r + 2).em_antiderivative().eval(n)
    return head + tail
