"""Named blocking colorings, pattern expansion, and coloring combinators.

Every entry in the witness catalog produces a coloring together with a
machine-checkable claim: the longest monochromatic chain for the attached gap
set stays at or below a stated length (optionally with all chain elements
restricted to a domain set).  Claims are data, so callers and the test
harness can verify any witness the same way.

Colorings defined on all positive integers (the blocking colorings) are
materialized on a caller-supplied prefix [1, n]; claims are then prefix
claims.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .coloring import Coloring, DiffseqWitness, has_k_term, longest_restricted
from .gapsets import GapSet, make_set


@dataclass(frozen=True)
class PatternColoring:
    """Symbolic coloring prefix + block^repeats + suffix over color characters."""

    prefix: str
    block: str
    repeats: int
    suffix: str

    def __post_init__(self):
        if self.repeats < 0:
            raise ValueError(f"repeats must be >= 0, got {self.repeats}")

    def text(self) -> str:
        return self.prefix + self.block * self.repeats + self.suffix

    def __len__(self) -> int:
        return len(self.prefix) + self.repeats * len(self.block) + len(self.suffix)


def expand(pattern: PatternColoring, r: int) -> Coloring:
    """Materialize the pattern as a Coloring with r colors."""
    return Coloring.parse(pattern.text(), r)


@dataclass(frozen=True)
class WitnessClaim:
    """Longest monochromatic chain for set_spec stays <= max_length.

    With domain_spec set, only chains whose elements all lie in the domain
    count.
    """

    set_spec: str
    max_length: int
    domain_spec: str | None = None

    def check(self, coloring: Coloring) -> bool:
        S = make_set(self.set_spec)
        if self.domain_spec is None:
            return not has_k_term(coloring, S, self.max_length + 1)
        restricted = subset_elements_coloring(coloring, make_set(self.domain_spec))
        length, _ = restricted.longest(S)
        return length <= self.max_length

    def describe(self) -> str:
        base = (
            f"no monochromatic {self.max_length + 1}-term "
            f"{self.set_spec}-diffsequence"
        )
        if self.domain_spec is not None:
            base += f" with all elements in {self.domain_spec}"
        return base

    def to_dict(self) -> dict:
        out = {"set_spec": self.set_spec, "max_length": self.max_length}
        if self.domain_spec is not None:
            out["domain_spec"] = self.domain_spec
        return out


def product_coloring(c1: Coloring, c2: Coloring) -> Coloring:
    """Pair two colorings into one with r1*r2 colors: (a, b) -> a*r2 + b.

    Two positions share a product color exactly when they agree in both
    factors, so a monochromatic chain here is monochromatic in each factor.
    """
    if c1.n != c2.n:
        raise ValueError(f"length mismatch: {c1.n} vs {c2.n}")
    colors = tuple(a * c2.r + b for a, b in zip(c1.colors, c2.colors))
    return Coloring(colors=colors, r=c1.r * c2.r)


@dataclass(frozen=True)
class RestrictedColoring:
    """A coloring with chains restricted to elements of a domain set."""

    coloring: Coloring
    domain: GapSet

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(self.domain.enumerate(self.coloring.n))

    def longest(self, S: GapSet) -> tuple[int, DiffseqWitness | None]:
        mask = [False] * self.coloring.n
        for x in self.domain.enumerate(self.coloring.n):
            mask[x - 1] = True
        return longest_restricted(self.coloring, S, mask)

    def has_k_term(self, S: GapSet, k: int) -> bool:
        length, _ = self.longest(S)
        return length >= k


def subset_elements_coloring(c: Coloring, domain: GapSet) -> RestrictedColoring:
    """Chains drawn from domain elements only; gaps still measured in [1, n]."""
    return RestrictedColoring(coloring=c, domain=domain)


# --- the witness catalog -------------------------------------------------

def _require(params: dict, **constraints) -> None:
    for name, (ok, msg) in constraints.items():
        if not ok:
            raise ValueError(f"witness parameter {name}: {msg} (got {params.get(name)})")


def _chi_k(k: int) -> tuple[Coloring, WitnessClaim]:
    _require({"k": k}, k=(k >= 5, "requires k >= 5"))
    pattern = PatternColoring("", "10010110", k - 3, "")
    return expand(pattern, 2), WitnessClaim("powers(2)", k - 1)


def _c_k(k: int) -> tuple[Coloring, WitnessClaim]:
    _require({"k": k}, k=(k >= 4 and k % 2 == 0, "requires even k >= 4"))
    pattern = PatternColoring("1", "000111", (k - 2) // 2, "0")
    return expand(pattern, 2), WitnessClaim("odds_plus_two", k - 1)


def _d_k(k: int) -> tuple[Coloring, WitnessClaim]:
    _require({"k": k}, k=(k >= 3 and k % 2 == 1, "requires odd k >= 3"))
    pattern = PatternColoring("11", "000111", (k - 3) // 2, "00")
    return expand(pattern, 2), WitnessClaim("odds_plus_two", k - 1)


def _thm34(k: int) -> tuple[Coloring, WitnessClaim]:
    # Mod-4 blocking coloring on [1, 4k-6]: 0 on residues 2 and 3, 1 on 0 and 1.
    _require({"k": k}, k=(k >= 2, "requires k >= 2"))
    colors = [0 if x % 4 in (2, 3) else 1 for x in range(1, 4 * k - 6 + 1)]
    return Coloring.from_colors(colors, 2), WitnessClaim("s_m(3)", k - 1)


def _thm35(m: int, k: int) -> tuple[Coloring, WitnessClaim]:
    _require({"m": m, "k": k}, m=(m >= 5, "requires m >= 5"), k=(k >= 2, "requires k >= 2"))
    a = k // m
    tail = k - a * (m - 1) - 1
    text = ("1" + "0" * (m - 1)) * a + ("1" * (m - 1) + "0") * a + "0" * tail + "1" * tail
    return Coloring.parse(text, 2), WitnessClaim(f"s_m({m})", k - 1)


_PROP36_BLOCK = "10011000110011"  # 14 characters; length comes out to 7k-13


def _prop36(k: int) -> tuple[Coloring, WitnessClaim]:
    _require({"k": k}, k=(k >= 3, "requires k >= 3"))
    if k % 2 == 0:
        pattern = PatternColoring("1", _PROP36_BLOCK, (k - 2) // 2, "")
    else:
        pattern = PatternColoring("1", _PROP36_BLOCK, (k - 3) // 2, "1001100")
    return expand(pattern, 2), WitnessClaim("residues(12; 1,2,5,7,10,11)", k - 1)


def _mod_block(m: int, n: int, set_spec: str | None = None) -> tuple[Coloring, WitnessClaim]:
    # x -> x mod m blocks every 2-term chain over any set without a multiple
    # of m; the default claim set s_m(m) has none by construction.
    _require({"m": m, "n": n}, m=(m >= 2, "requires m >= 2"), n=(n >= 1, "requires n >= 1"))
    colors = [x % m for x in range(1, n + 1)]
    claim_spec = set_spec if set_spec is not None else f"s_m({m})"
    return Coloring.from_colors(colors, m), WitnessClaim(claim_spec, 1)


def _lemma25(m: int, n: int, i: int = 1) -> tuple[Coloring, WitnessClaim]:
    _require(
        {"m": m, "n": n, "i": i},
        m=(m >= 2, "requires m >= 2"),
        n=(n >= 1, "requires n >= 1"),
        i=(1 <= i < m and gcd(i, m) == 1, "requires 1 <= i < m coprime to m"),
    )
    colors = [0 if x % m == 0 else 1 for x in range(1, n + 1)]
    return Coloring.from_colors(colors, 2), WitnessClaim(f"residues({m}; {i})", m - 1)


def _p_not_3acc(n: int) -> tuple[Coloring, WitnessClaim]:
    # Color 0: multiples of 9; color 1: remaining evens; color 2: remaining odds.
    _require({"n": n}, n=(n >= 1, "requires n >= 1"))
    colors = [0 if x % 9 == 0 else (1 if x % 2 == 0 else 2) for x in range(1, n + 1)]
    return Coloring.from_colors(colors, 3), WitnessClaim("primes", 9)


def _remark1(n: int) -> tuple[Coloring, WitnessClaim]:
    # 2-coloring of the gap set itself: chains must draw their elements from
    # it, hence the domain restriction in the claim.
    _require({"n": n}, n=(n >= 1, "requires n >= 1"))
    colors = [1 if (x % 4 == 1 or x == 2) else 0 for x in range(1, n + 1)]
    claim = WitnessClaim("odds_plus_two", 3, domain_spec="odds_plus_two")
    return Coloring.from_colors(colors, 2), claim


@dataclass(frozen=True)
class WitnessDef:
    name: str
    params: tuple[str, ...]
    optional: tuple[str, ...]
    summary: str
    build: callable


WITNESSES: dict[str, WitnessDef] = {
    "chi_k": WitnessDef(
        "chi_k", ("k",), (), "8-periodic block coloring avoiding k-term power-of-two chains", _chi_k
    ),
    "C_k": WitnessDef(
        "C_k", ("k",), (), "even-k blocking coloring for {2}-union-odds gaps", _c_k
    ),
    "D_k": WitnessDef(
        "D_k", ("k",), (), "odd-k blocking coloring for {2}-union-odds gaps", _d_k
    ),
    "thm34": WitnessDef(
        "thm34", ("k",), (), "mod-4 coloring of [1,4k-6] avoiding k-term non-multiple-of-3 chains", _thm34
    ),
    "thm35": WitnessDef(
        "thm35", ("m", "k"), (), "block coloring avoiding k-term non-multiple-of-m chains", _thm35
    ),
    "prop36": WitnessDef(
        "prop36", ("k",), (), "14-periodic coloring for gaps divisible by neither 3 nor 4", _prop36
    ),
    "mod_block": WitnessDef(
        "mod_block", ("m", "n"), ("set_spec",),
        "x mod m as an m-coloring; blocks 2-term chains over sets with no multiple of m", _mod_block
    ),
    "lemma25": WitnessDef(
        "lemma25", ("m", "n"), ("i",),
        "multiples of m vs the rest; blocks m-term chains over one coprime residue class", _lemma25
    ),
    "p_not_3acc": WitnessDef(
        "p_not_3acc", ("n",), (),
        "3-coloring (multiples of 9 / other evens / other odds) bounding prime-gap chains", _p_not_3acc
    ),
    "remark1": WitnessDef(
        "remark1", ("n",), (),
        "2-coloring of the {2}-union-odds set itself with no 4-term chain inside it", _remark1
    ),
}


def named_witness(name: str, **params) -> tuple[Coloring, WitnessClaim]:
    """Build a cataloged witness coloring and its claim.

    Parameters are keyword-only and per-name; see WITNESSES for the catalog.
    """
    spec = WITNESSES.get(name)
    if spec is None:
        raise ValueError(f"unknown witness {name!r}; known: {', '.join(sorted(WITNESSES))}")
    missing = [p for p in spec.params if p not in params]
    if missing:
        raise ValueError(f"witness {name} requires parameters {missing}")
    extra = [p for p in params if p not in spec.params + spec.optional]
    if extra:
        raise ValueError(f"witness {name} does not take parameters {extra}")
    return spec.build(**params)
