"""Truncated asymptotic expansions in powers of ln(k) and 1/k.

A LogSeries holds coefficients c[(i, j)] of (ln k)^i * k^(-j) with the
inverse power truncated at ``jmax``.  Partial sums of the nested-series
kernels live in this algebra: generalized harmonic numbers, truncated
MZV/MZSV prefixes, and their Euler-Maclaurin antiderivatives all stay
inside it, because

    d/dk (ln k)^i k^(-j) = i (ln k)^(i-1) k^(-j-1) - j (ln k)^i k^(-j-1)

and the antiderivatives of (ln k)^i k^(-j) are again log-polynomials
over powers of k.  That closure is what lets the series engine replace
a slowly-convergent tail by a closed-form-in-ln(N) correction whose
truncation error decays like N^(-jmax).
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpf

from .numerics import bernoulli

__all__ = ["LogSeries"]


def _mpf_fraction(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


class LogSeries:
    """Sparse bivariate expansion  sum c[i,j] (ln k)^i k^(-j),  j <= jmax."""

    __slots__ = ("data", "jmax")

    def __init__(self, jmax: int, data: dict[tuple[int, int], mpf] | None = None):
        self.jmax = jmax
        self.data = data if data is not None else {}

    @classmethod
    def one(cls, jmax: int) -> "LogSeries":
        return cls(jmax, {(0, 0): mpf(1)})

    def copy(self) -> "LogSeries":
        return LogSeries(self.jmax, dict(self.data))

    def is_zero(self) -> bool:
        return not self.data

    def _bump(self, key: tuple[int, int], value: mpf) -> None:
        if key[1] > self.jmax:
            return
        cur = self.data.get(key)
        new = value if cur is None else cur + value
        if new:
            self.data[key] = new
        elif cur is not None:
            del self.data[key]

    # -- ring operations ----------------------------------------------------

    def add(self, other: "LogSeries") -> "LogSeries":
        out = self.copy()
        for key, v in other.data.items():
            out._bump(key, v)
        return out

    def add_const(self, c: mpf) -> "LogSeries":
        out = self.copy()
        out._bump((0, 0), c)
        return out

    def scale(self, c) -> "LogSeries":
        c = mpf(c)
        if not c:
            return LogSeries(self.jmax)
        return LogSeries(self.jmax, {k: v * c for k, v in self.data.items()})

    def mul(self, other: "LogSeries") -> "LogSeries":
        out = LogSeries(self.jmax)
        for (i1, j1), v1 in self.data.items():
            for (i2, j2), v2 in other.data.items():
                if j1 + j2 <= self.jmax:
                    out._bump((i1 + i2, j1 + j2), v1 * v2)
        return out

    def mul_kpow(self, s: int) -> "LogSeries":
        """Multiply by k^(-s)."""
        out = LogSeries(self.jmax)
        for (i, j), v in self.data.items():
            out._bump((i, j + s), v)
        return out

    # -- reindexing k -> k-1 ------------------------------------------------

    def shift_km1(self) -> "LogSeries":
        """The series of k |-> f(k-1), re-expanded around large k.

        Uses ln(k-1) = ln k - sum_{t>=1} k^(-t)/t and the binomial series
        (k-1)^(-j) = k^(-j) sum_{t>=0} C(j+t-1, t) k^(-t).
        """
        jmax = self.jmax
        # L = ln(k-1) - ln(k), a pure 1/k series; cache its powers
        ell = LogSeries(jmax, {(0, t): mpf(-1) / t for t in range(1, jmax + 1)})
        max_i = max((i for (i, _) in self.data), default=0)
        ell_pows = [LogSeries.one(jmax)]
        for _ in range(max_i):
            ell_pows.append(ell_pows[-1].mul(ell))

        out = LogSeries(jmax)
        from math import comb

        for (i, j), v in self.data.items():
            # (ln k + L)^i expanded binomially
            for a in range(i + 1):
                base = ell_pows[i - a]
                coef = v * comb(i, a)
                for (ib, jb), vb in base.data.items():
                    jj = jb + j
                    if jj > jmax:
                        continue
                    # multiply by (k-1)^(-j) = k^(-j) * sum_t C(j+t-1,t) k^(-t)
                    if j == 0:
                        out._bump((a + ib, jj), coef * vb)
                    else:
                        for t in range(jmax - jj + 1):
                            out._bump((a + ib, jj + t), coef * vb * comb(j + t - 1, t))
        return out

    # -- calculus -----------------------------------------------------------

    def diff(self) -> "LogSeries":
        out = LogSeries(self.jmax)
        for (i, j), v in self.data.items():
            if i:
                out._bump((i - 1, j + 1), v * i)
            if j:
                out._bump((i, j + 1), -v * j)
        return out

    def integrate(self) -> "LogSeries":
        """An antiderivative, term by term; requires every j >= 1.

        For j >= 2 the result decays at infinity; j = 1 terms integrate to
        (ln k)^(i+1)/(i+1), the log-degree bump that makes harmonic-type
        prefix sums representable.
        """
        out = LogSeries(self.jmax)
        for (i, j), v in self.data.items():
            if j == 0:
                raise ValueError("cannot integrate a non-decaying term (j=0)")
            if j == 1:
                out._bump((i + 1, 0), v / (i + 1))
                continue
            # repeated integration by parts down the log degree
            c = v / (1 - j)
            for a in range(i, -1, -1):
                out._bump((a, j - 1), c)
                c = -c * a / (1 - j)
        return out

    def em_antiderivative(self) -> "LogSeries":
        """Euler-Maclaurin antiderivative G with  sum_{m<=k} f(m) ~ C + G(k).

        G = integral(f) + f/2 + sum_{j>=1} B_{2j}/(2j)! f^(2j-1).  For a
        summand decaying at least like k^(-2), the convergent-tail form is
        sum_{m>k} f(m) = -G(k).  The correction loop terminates on its own:
        each derivative raises the inverse power, so past jmax the running
        derivative empties out.
        """
        total = self.integrate()
        total = total.add(self.scale(mpf("0.5")))
        deriv = self.diff()
        j = 1
        while not deriv.is_zero() and j <= self.jmax:
            b = bernoulli(2 * j)
            coef = _mpf_fraction(b) / mp.factorial(2 * j)
            total = total.add(deriv.scale(coef))
            deriv = deriv.diff().diff()
            j += 1
        return total

    # -- evaluation ----------------------------------------------------------

    def eval(self, k) -> mpf:
        """Evaluate at integer (or mpf) k > 1, Horner in 1/k per log power."""
        kk = mpf(k)
        ln_k = mp.log(kk)
        inv = 1 / kk
        by_i: dict[int, dict[int, mpf]] = {}
        for (i, j), v in self.data.items():
            by_i.setdefault(i, {})[j] = v
        result = mpf(0)
        for i, row in by_i.items():
            acc = mpf(0)
            for j in range(max(row), -1, -1):
                acc = acc * inv + row.get(j, mpf(0))
            result += acc * ln_k**i
        return result

    def top_order_magnitude(self, k) -> mpf:
        """|sum of the jmax-order terms| at k: a proxy for dropped orders."""
        kk = mpf(k)
        ln_k = mp.log(kk)
        tot = mpf(0)
        for (i, j), v in self.data.items():
            if j == self.jmax:
                tot += abs(v) * ln_k**i
        return tot * kk ** (-self.jmax)

    def __repr__(self) -> str:  # debugging aid
        terms = ", ".join(
            f"({i},{j}): {mp.nstr(v, 6)}" for (i, j), v in sorted(self.data.items())
        )
        return f"LogSeries(jmax={self.jmax}, {{{terms}}})"
