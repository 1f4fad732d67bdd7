"""Multi-index and composition combinatorics.

Summation convention used throughout this package: ascending, i.e.
zeta(a_1,...,a_r) sums over k_1 < ... < k_r, so an index converges
exactly when its LAST entry is >= 2 ("admissible").  Much of the
literature uses the reverse ordering; everything here is pinned to the
ascending form to keep signs and orderings single-sourced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .numerics import binomial

__all__ = [
    "MultiIndex",
    "Composition",
    "ones",
    "repeat",
    "weight_depth_height",
    "compositions",
    "admissible_by_weight_height",
    "parse_index",
    "format_index",
    "composition_count",
]


@dataclass(frozen=True, order=True)
class MultiIndex:
    """An exponent sequence (a_1,...,a_r) of positive integers.

    The empty index is allowed and stands for the empty sum/product:
    any zeta-like evaluation of it is exactly 1.
    """

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if any(p < 1 for p in self.parts):
            raise ValueError(f"index parts must be >= 1, got {self.parts}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def height(self) -> int:
        return sum(1 for p in self.parts if p > 1)

    @property
    def is_admissible(self) -> bool:
        """Last entry >= 2 (convergent series), or the empty index."""
        return not self.parts or self.parts[-1] >= 2

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return format_index(self)


def ones(count: int, *tail: int) -> MultiIndex:
    """({1}^count, tail...) - the recurring all-ones-prefix shape."""
    return MultiIndex((1,) * count + tail)


def repeat(value: int, count: int, *tail: int) -> MultiIndex:
    """({value}^count, tail...)."""
    return MultiIndex((value,) * count + tail)


@dataclass(frozen=True)
class Composition:
    """A sequence of nonnegative integers with its total."""

    parts: tuple[int, ...]
    total: int = field(default=-1)

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        t = sum(self.parts)
        if self.total == -1:
            object.__setattr__(self, "total", t)
        elif self.total != t:
            raise ValueError(f"total {self.total} != sum of parts {t}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def weight_depth_height(idx: MultiIndex) -> tuple[int, int, int]:
    """(sum of parts, number of parts, number of parts > 1)."""
    return idx.weight, idx.depth, idx.height


def compositions(total: int, parts: int, min_part: int = 1) -> list[Composition]:
    """All length-``parts`` sequences of integers >= min_part summing to total.

    Lexicographic order on the part sequence; empty list when infeasible.
    Counts: C(total-1, parts-1) for min_part=1 and C(total+parts-1, parts-1)
    for min_part=0.
    """
    if min_part not in (0, 1):
        raise ValueError("min_part must be 0 or 1")
    if parts < 0 or total < 0:
        return []
    if parts == 0:
        return [Composition(())] if total == 0 else []

    out: list[Composition] = []

    def rec(remaining: int, slots: int, acc: list[int]) -> None:
        if slots == 1:
            if remaining >= min_part:
                out.append(Composition(tuple(acc) + (remaining,)))
            return
        lo = min_part
        hi = remaining - min_part * (slots - 1)
        for v in range(lo, hi + 1):
            acc.append(v)
            rec(remaining - v, slots - 1, acc)
            acc.pop()

    rec(total, parts, [])
    return out


def admissible_by_weight_height(weight: int, height: int) -> list[MultiIndex]:
    """All admissible indices of the given weight and height.

    Height counts entries > 1; admissible means the last entry is >= 2.
    Returned in lexicographic order (deterministic, duplicate-free); empty
    when the (weight, height) combination is infeasible.
    """
    if weight < 2 or height < 1 or 2 * height > weight:
        return []
    found: list[MultiIndex] = []
    for depth in range(height, weight - height + 1):
        for comp in compositions(weight, depth, min_part=1):
            p = comp.parts
            if p[-1] >= 2 and sum(1 for v in p if v > 1) == height:
                found.append(MultiIndex(p))
    return sorted(found, key=lambda m: m.parts)


# ---------------------------------------------------------------------------
# Canonical text form: "(3,{2}^2)" <-> (3, 2, 2)
# ---------------------------------------------------------------------------

_ITEM_RE = re.compile(r"\s*(?:\{\s*(\d+)\s*\}\s*\^\s*(\d+)|(\d+))\s*")


def parse_index(text: str) -> MultiIndex:
    """Parse the canonical index form, expanding "{a}^k" repetition blocks.

    Accepts "(1,2)", "1,2", "(3,{2}^2)", "()" (the empty index).
    """
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s.strip():
        return MultiIndex(())
    parts: list[int] = []
    pos = 0
    while pos < len(s):
        m = _ITEM_RE.match(s, pos)
        if not m:
            raise ValueError(f"bad index syntax at position {pos} in {text!r}")
        if m.group(3) is not None:
            parts.append(int(m.group(3)))
        else:
            parts.extend([int(m.group(1))] * int(m.group(2)))
        pos = m.end()
        if pos < len(s):
            if s[pos] != ",":
                raise ValueError(f"expected ',' at position {pos} in {text!r}")
            pos += 1
            if pos == len(s):
                raise ValueError(f"trailing ',' in {text!r}")
    return MultiIndex(tuple(parts))


def format_index(idx: MultiIndex | Sequence[int]) -> str:
    """Canonical text: comma-separated expanded parts in parentheses."""
    parts = idx.parts if isinstance(idx, MultiIndex) else tuple(idx)
    return "(" + ",".join(str(p) for p in parts) + ")"


def composition_count(total: int, parts: int, min_part: int) -> int:
    """Closed-form composition counts used as the enumeration cross-check."""
    if parts < 0 or total < 0:
        return 0
    if parts == 0:
        return 1 if total == 0 else 0
    if min_part == 1:
        return binomial(total - 1, parts - 1) if total >= 1 else 0
    return binomial(total + parts - 1, parts - 1)
