"""Catalog of gap sets, a small textual grammar to name them, and membership.

A gap set is a set of positive integers used as the allowed differences
between consecutive elements of a chain.  Sets are described by a canonical
ASCII spec:

    powers(a) | thm23(a) | fibonacci | primes | primes+t | s_m(m)
    | residues(m; c1,c2,...) | diffs(t1,t2,...) | scaled(j, SPEC)
    | union(SPEC, SPEC) | explicit(d1,d2,...) | odds_plus_two

Kinds:
    powers(a)        {a^i : i >= 0}
    thm23(a)         {(a-1)*a^j} union {(a-1)^2*a^j}, j >= 0 (a >= 2, a != 3)
    fibonacci        the Fibonacci numbers as a set: {1, 2, 3, 5, 8, ...}
    primes           the primes
    primes+t         every prime shifted up by t
    s_m(m)           positive integers not divisible by m
    residues(m; C)   positive integers whose residue mod m lies in C
    diffs(T)         pairwise differences {t - s : s < t in T}
    scaled(j, S)     {j*d : d in S}
    union(A, B)      set union
    explicit(...)    a finite list
    odds_plus_two    {2} union the odd numbers

GapSet objects are immutable; membership and bounded enumeration agree
pointwise by construction (enumeration filters through membership except for
a few kinds generated directly, which the tests cross-check).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .primechain import is_prime as _is_prime
from .primechain import sieve as _sieve


class GapSetError(ValueError):
    """A structurally valid spec with out-of-domain parameters."""


class GapSpecError(GapSetError):
    """A malformed spec string; carries the offending character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _is_power(d: int, a: int) -> bool:
    while d % a == 0:
        d //= a
    return d == 1


@dataclass(frozen=True)
class GapSet:
    """An immutable set of positive integers with a canonical textual spec."""

    kind: str
    params: tuple
    spec: str

    def __str__(self) -> str:
        return self.spec

    def contains(self, d: int) -> bool:
        """Membership test for a positive integer d."""
        if d < 1:
            return False
        kind = self.kind
        if kind == "powers":
            return _is_power(d, self.params[0])
        if kind == "thm23":
            a = self.params[0]
            return (d % (a - 1) == 0 and _is_power(d // (a - 1), a)) or (
                d % (a - 1) ** 2 == 0 and _is_power(d // (a - 1) ** 2, a)
            )
        if kind == "fibonacci":
            x, y = 1, 2
            while x < d:
                x, y = y, x + y
            return x == d
        if kind == "primes":
            return _is_prime(d)
        if kind == "primes_shifted":
            t = self.params[0]
            return d > t and _is_prime(d - t)
        if kind == "s_m":
            return d % self.params[0] != 0
        if kind == "residues":
            m, classes = self.params
            return d % m in classes
        if kind == "diff_of_set":
            return d in self._diff_values
        if kind == "scaled":
            j, inner = self.params
            return d % j == 0 and inner.contains(d // j)
        if kind == "union":
            a, b = self.params
            return a.contains(d) or b.contains(d)
        if kind == "explicit":
            return d in self._explicit_values
        if kind == "odds_plus_two":
            return d == 2 or d % 2 == 1
        raise AssertionError(f"unhandled kind {kind}")

    def __contains__(self, d: int) -> bool:
        return self.contains(d)

    @cached_property
    def _diff_values(self) -> frozenset[int]:
        base = self.params
        return frozenset(t - s for i, s in enumerate(base) for t in base[i + 1 :])

    @cached_property
    def _explicit_values(self) -> frozenset[int]:
        return frozenset(self.params)

    def enumerate(self, bound: int) -> list[int]:
        """The members in [1, bound], ascending.  bound 0 yields []."""
        if bound < 0:
            raise ValueError(f"enumeration bound must be >= 0, got {bound}")
        if bound == 0:
            return []
        kind = self.kind
        if kind == "powers":
            a = self.params[0]
            out, v = [], 1
            while v <= bound:
                out.append(v)
                v *= a
            return out
        if kind == "thm23":
            a = self.params[0]
            vals = set()
            for c in (a - 1, (a - 1) ** 2):
                v = c
                while v <= bound:
                    vals.add(v)
                    v *= a
            return sorted(vals)
        if kind == "fibonacci":
            vals = set()
            x, y = 1, 1
            while x <= bound:
                vals.add(x)
                x, y = y, x + y
            return sorted(vals)
        if kind == "primes":
            return [int(p) for p in _sieve(bound)] if bound >= 2 else []
        if kind == "primes_shifted":
            t = self.params[0]
            return [int(p) + t for p in _sieve(bound - t)] if bound - t >= 2 else []
        if kind == "scaled":
            j, inner = self.params
            return [j * d for d in inner.enumerate(bound // j)]
        if kind == "union":
            a, b = self.params
            return sorted(set(a.enumerate(bound)) | set(b.enumerate(bound)))
        if kind == "diff_of_set":
            return sorted(v for v in self._diff_values if v <= bound)
        if kind == "explicit":
            return [v for v in self.params if v <= bound]
        return [d for d in range(1, bound + 1) if self.contains(d)]


def _mk(kind: str, params: tuple, spec: str) -> GapSet:
    return GapSet(kind=kind, params=params, spec=spec)


def powers(a: int) -> GapSet:
    if a < 2:
        raise GapSetError(f"powers(a) requires a >= 2, got {a}")
    return _mk("powers", (a,), f"powers({a})")


def thm23(a: int) -> GapSet:
    if a < 2 or a == 3:
        raise GapSetError(f"thm23(a) requires a >= 2 and a != 3, got {a}")
    return _mk("thm23", (a,), f"thm23({a})")


def fibonacci() -> GapSet:
    return _mk("fibonacci", (), "fibonacci")


def primes() -> GapSet:
    return _mk("primes", (), "primes")


def primes_shifted(t: int) -> GapSet:
    if t < 1:
        raise GapSetError(f"primes+t requires t >= 1, got {t}")
    return _mk("primes_shifted", (t,), f"primes+{t}")


def s_m(m: int) -> GapSet:
    if m < 2:
        raise GapSetError(f"s_m(m) requires m >= 2, got {m}")
    return _mk("s_m", (m,), f"s_m({m})")


def residues(m: int, classes) -> GapSet:
    if m < 2:
        raise GapSetError(f"residues(m; ...) requires m >= 2, got {m}")
    cset = tuple(sorted(set(int(c) for c in classes)))
    if not cset:
        raise GapSetError("residues(m; ...) requires at least one class")
    bad = [c for c in cset if c < 0 or c >= m]
    if bad:
        raise GapSetError(f"residue classes must lie in [0, {m - 1}], got {bad}")
    body = ",".join(str(c) for c in cset)
    return _mk("residues", (m, frozenset(cset)), f"residues({m}; {body})")


def diff_of_set(elements) -> GapSet:
    base = tuple(sorted(set(int(x) for x in elements)))
    if len(base) < 2:
        raise GapSetError("diffs(...) requires at least two distinct elements")
    if base[0] < 1:
        raise GapSetError(f"diffs(...) elements must be positive, got {base[0]}")
    return _mk("diff_of_set", base, f"diffs({','.join(str(x) for x in base)})")


def scaled(j: int, inner: GapSet) -> GapSet:
    if j < 1:
        raise GapSetError(f"scaled(j, S) requires j >= 1, got {j}")
    return _mk("scaled", (j, inner), f"scaled({j}, {inner.spec})")


def union(a: GapSet, b: GapSet) -> GapSet:
    return _mk("union", (a, b), f"union({a.spec}, {b.spec})")


def explicit(elements) -> GapSet:
    vals = tuple(sorted(set(int(x) for x in elements)))
    if not vals:
        raise GapSetError("explicit(...) requires at least one element")
    if vals[0] < 1:
        raise GapSetError(f"explicit(...) elements must be positive, got {vals[0]}")
    return _mk("explicit", vals, f"explicit({','.join(str(x) for x in vals)})")


def odds_plus_two() -> GapSet:
    return _mk("odds_plus_two", (), "odds_plus_two")


def not_multiple_of(S: GapSet) -> int | None:
    """If S is (an alias of) the non-multiples of some m, return m."""
    if S.kind == "s_m":
        return S.params[0]
    if S.kind == "residues":
        m, classes = S.params
        if classes == frozenset(range(1, m)):
            return m
    return None


# Shown by the CLI catalog listing; one entry per grammar production.
CATALOG: tuple[tuple[str, str], ...] = (
    ("powers(a)", "geometric gaps {a^i : i >= 0}; a >= 2"),
    ("thm23(a)", "{(a-1)a^j} union {(a-1)^2 a^j}; a >= 2, a != 3"),
    ("fibonacci", "the Fibonacci numbers as a set {1,2,3,5,8,...}"),
    ("primes", "the prime numbers"),
    ("primes+t", "primes shifted up by t >= 1"),
    ("s_m(m)", "positive integers not divisible by m; m >= 2"),
    ("residues(m; c1,c2,...)", "integers whose residue mod m is listed"),
    ("diffs(t1,t2,...)", "pairwise differences of a finite set"),
    ("scaled(j, SPEC)", "every element of SPEC multiplied by j >= 1"),
    ("union(SPEC, SPEC)", "set union"),
    ("explicit(d1,d2,...)", "a finite list of gaps"),
    ("odds_plus_two", "{2} union the odd numbers"),
)


class _Parser:
    """Recursive-descent parser for the gap-set grammar."""

    _WORD_CHARS = set("abcdefghijklmnopqrstuvwxyz0123456789_+")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> GapSpecError:
        return GapSpecError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in self._WORD_CHARS:
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a set name")
        return self.text[start:self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def int_list(self) -> list[int]:
        vals = [self.integer()]
        while True:
            self.skip_ws()
            if self.peek() == ",":
                self.pos += 1
                vals.append(self.integer())
            else:
                return vals

    def parse_spec(self) -> GapSet:
        head = self.word()
        if head == "fibonacci":
            return fibonacci()
        if head == "odds_plus_two":
            return odds_plus_two()
        if head == "primes":
            return primes()
        if head.startswith("primes+"):
            suffix = head[len("primes+"):]
            if not suffix.isdigit():
                raise self.error("primes+t requires an integer shift")
            return primes_shifted(int(suffix))
        if head == "powers":
            self.expect("(")
            a = self.integer()
            self.expect(")")
            return powers(a)
        if head == "thm23":
            self.expect("(")
            a = self.integer()
            self.expect(")")
            return thm23(a)
        if head == "s_m":
            self.expect("(")
            m = self.integer()
            self.expect(")")
            return s_m(m)
        if head == "residues":
            self.expect("(")
            m = self.integer()
            self.expect(";")
            classes = self.int_list()
            self.expect(")")
            return residues(m, classes)
        if head == "diffs":
            self.expect("(")
            vals = self.int_list()
            self.expect(")")
            return diff_of_set(vals)
        if head == "explicit":
            self.expect("(")
            vals = self.int_list()
            self.expect(")")
            return explicit(vals)
        if head == "scaled":
            self.expect("(")
            j = self.integer()
            self.expect(",")
            inner = self.parse_spec()
            self.expect(")")
            return scaled(j, inner)
        if head == "union":
            self.expect("(")
            a = self.parse_spec()
            self.expect(",")
            b = self.parse_spec()
            self.expect(")")
            return union(a, b)
        raise self.error(f"unknown set kind {head!r}")


def make_set(spec: str) -> GapSet:
    """Parse a spec string into a GapSet; the result carries a canonical spec."""
    parser = _Parser(spec)
    result = parser.parse_spec()
    parser.skip_ws()
    if parser.pos != len(spec):
        raise parser.error("trailing characters after set spec")
    return result
