"""Colorings of an integer interval and longest monochromatic chain search.

A coloring assigns one of r colors to every integer in [1, n].  A chain for a
gap set S is a strictly increasing sequence of positions whose consecutive
differences all lie in S; it is monochromatic when all its positions share one
color.  The central quantity is the length of the longest monochromatic chain,
computed by a left-to-right dynamic program:

    L[i] = 1 + max{ L[i - s] : s in S, s < i, color(i - s) == color(i) }

with the maximum over the empty set taken as 0.  ChainState exposes the same
recurrence incrementally (position by position, with exact undo) for the
backtracking solver, and brute_force_longest re-derives the answer by plain
exhaustive chain enumeration so the dynamic program can be checked against an
implementation that shares none of its machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gapsets import GapSet

COLOR_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_COLORS = len(COLOR_ALPHABET)

_BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class Coloring:
    """An r-coloring of [1, n]; colors[i] is the color of integer i + 1."""

    colors: tuple[int, ...]
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"color count must be >= 1, got {self.r}")
        if len(self.colors) < 1:
            raise ValueError("a coloring needs at least one position")
        bad = [c for c in self.colors if not 0 <= c < self.r]
        if bad:
            raise ValueError(f"colors must lie in [0, {self.r - 1}], got {bad[:3]}")

    @property
    def n(self) -> int:
        return len(self.colors)

    def color_of(self, x: int) -> int:
        """Color of the integer x (1-based)."""
        if not 1 <= x <= self.n:
            raise IndexError(f"position {x} outside [1, {self.n}]")
        return self.colors[x - 1]

    @classmethod
    def from_colors(cls, seq: Sequence[int], r: int) -> "Coloring":
        return cls(colors=tuple(int(c) for c in seq), r=r)

    @classmethod
    def parse(cls, text: str, r: int | None = None) -> "Coloring":
        """Parse the text format: character i is the color of integer i.

        Colors 0-9 then a-z.  With r given, any character encoding a color
        >= r is rejected; without it, r is inferred as max color + 1.
        """
        values = []
        for i, ch in enumerate(text):
            idx = COLOR_ALPHABET.find(ch.lower())
            if idx < 0:
                raise ValueError(f"invalid color character {ch!r} at position {i + 1}")
            values.append(idx)
        if not values:
            raise ValueError("empty coloring text")
        if r is None:
            r = max(values) + 1
        over = [v for v in values if v >= r]
        if over:
            raise ValueError(f"color {over[0]} out of range for r={r}")
        return cls(colors=tuple(values), r=r)

    def to_text(self) -> str:
        if self.r > MAX_COLORS:
            raise ValueError(f"text format supports at most {MAX_COLORS} colors")
        return "".join(COLOR_ALPHABET[c] for c in self.colors)

    def __str__(self) -> str:
        return self.to_text()

    def truncate(self, m: int) -> "Coloring":
        """Restriction to [1, m]."""
        if not 1 <= m <= self.n:
            raise ValueError(f"truncation length {m} outside [1, {self.n}]")
        return Coloring(colors=self.colors[:m], r=self.r)

    def relabel(self, perm: Sequence[int]) -> "Coloring":
        """Apply a color permutation (perm[c] is the new name of color c)."""
        return Coloring(colors=tuple(perm[c] for c in self.colors), r=self.r)


@dataclass(frozen=True)
class DiffseqWitness:
    """A monochromatic chain: 1-based positions plus their common color."""

    positions: tuple[int, ...]
    color: int

    def __len__(self) -> int:
        return len(self.positions)

    def is_valid_for(self, coloring: Coloring, S: GapSet) -> bool:
        """Independent re-check: strictly increasing, same color, gaps in S."""
        pos = self.positions
        if not pos:
            return False
        if any(not 1 <= x <= coloring.n for x in pos):
            return False
        if any(coloring.color_of(x) != self.color for x in pos):
            return False
        return all(b > a and (b - a) in S for a, b in zip(pos, pos[1:]))


def _gaps_within(S: GapSet, n: int) -> list[int]:
    # Only differences below n can occur inside [1, n].
    return S.enumerate(n - 1)


def _chain_table(colors: Sequence[int], gaps: Sequence[int],
                 allowed: Sequence[bool] | None = None) -> tuple[list[int], list[int]]:
    """L-values and back-pointers; ties broken toward the smallest predecessor.

    allowed, when given, restricts chains to positions (0-based) marked True;
    excluded positions get L = 0 and never extend anything.
    """
    n = len(colors)
    L = [0] * n
    back = [-1] * n
    for i in range(n):
        if allowed is not None and not allowed[i]:
            continue
        best = 0
        bp = -1
        ci = colors[i]
        for s in gaps:
            j = i - s
            if j < 0:
                break
            if colors[j] == ci and L[j] > 0:
                # gaps ascend, so j strictly descends: >= lands on the
                # smallest predecessor among equals.
                if L[j] >= best:
                    best, bp = L[j], j
        L[i] = best + 1
        back[i] = bp
    return L, back


def _extract_witness(colors: Sequence[int], L: list[int], back: list[int]) -> tuple[int, DiffseqWitness]:
    best = max(L)
    end = L.index(best)  # smallest position attaining the maximum
    chain = []
    i = end
    while i >= 0:
        chain.append(i + 1)
        i = back[i]
    chain.reverse()
    return best, DiffseqWitness(positions=tuple(chain), color=colors[end])


def longest_mono_diffseq(c: Coloring, S: GapSet) -> tuple[int, DiffseqWitness]:
    """Length of the longest monochromatic chain in c, with one witness.

    Deterministic: the witness ends at the smallest position attaining the
    maximum and each step follows the smallest predecessor attaining its
    L-value.  Singletons count, so the length is always >= 1.
    """
    L, back = _chain_table(c.colors, _gaps_within(S, c.n))
    return _extract_witness(c.colors, L, back)


def longest_restricted(c: Coloring, S: GapSet, allowed: Sequence[bool]) -> tuple[int, DiffseqWitness | None]:
    """Longest monochromatic chain using only positions marked allowed.

    allowed[i] covers integer i + 1.  Returns (0, None) when every position
    is excluded.
    """
    if len(allowed) != c.n:
        raise ValueError("allowed mask must cover the whole interval")
    if not any(allowed):
        return 0, None
    L, back = _chain_table(c.colors, _gaps_within(S, c.n), allowed)
    return _extract_witness(c.colors, L, back)


def has_k_term(c: Coloring, S: GapSet, k: int) -> bool:
    """True iff c contains a monochromatic k-term chain; stops at the first."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k == 1:
        return True
    gaps = _gaps_within(S, c.n)
    colors = c.colors
    n = c.n
    L = [0] * n
    for i in range(n):
        best = 0
        ci = colors[i]
        for s in gaps:
            j = i - s
            if j < 0:
                break
            if colors[j] == ci and L[j] > best:
                best = L[j]
        L[i] = best + 1
        if L[i] >= k:
            return True
    return False


def brute_force_longest(c: Coloring, S: GapSet) -> int:
    """Oracle: longest monochromatic chain by exhaustive chain enumeration.

    Walks every monochromatic chain by recursive extension, querying gap
    membership directly; no tables, no recurrence.  Exponential in the worst
    case, hence the hard n <= 20 guard.
    """
    n = c.n
    if n > _BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force oracle limited to n <= {_BRUTE_FORCE_LIMIT}, got {n}")
    colors = c.colors
    best = 1

    def extend(last: int, length: int) -> None:
        nonlocal best
        if length > best:
            best = length
        for nxt in range(last + 1, n):
            if colors[nxt] == colors[last] and S.contains(nxt - last):
                extend(nxt, length + 1)

    for start in range(n):
        extend(start, 1)
    return best


class ChainState:
    """Incremental longest-chain table for a coloring built left to right.

    extend assigns the next position and returns its L-value together with a
    prune flag (L >= k); retract undoes the last extend exactly.  Undo is O(1)
    because positions are colored strictly left to right, so no later L-value
    can ever have depended on the retracted one.
    """

    def __init__(self, S: GapSet, k: int, n: int, r: int):
        if k < 1 or n < 1 or r < 1:
            raise ValueError("k, n and r must all be >= 1")
        self.k = k
        self.n = n
        self.r = r
        self.gaps = _gaps_within(S, n)
        self.colors: list[int] = []
        self.L: list[int] = []

    @property
    def assigned(self) -> int:
        return len(self.colors)

    def extend(self, color: int) -> tuple[int, bool]:
        """Color the next position; returns (L-value, prune)."""
        if not 0 <= color < self.r:
            raise ValueError(f"color {color} out of range for r={self.r}")
        if self.assigned >= self.n:
            raise ValueError("all positions already assigned")
        i = self.assigned
        best = 0
        for s in self.gaps:
            j = i - s
            if j < 0:
                break
            if self.colors[j] == color and self.L[j] > best:
                best = self.L[j]
        value = best + 1
        self.colors.append(color)
        self.L.append(value)
        return value, value >= self.k

    def retract(self) -> None:
        """Undo the most recent extend."""
        if not self.colors:
            raise ValueError("nothing to retract")
        self.colors.pop()
        self.L.pop()

    def as_coloring(self) -> Coloring:
        """The currently assigned prefix as a Coloring."""
        return Coloring(colors=tuple(self.colors), r=self.r)
