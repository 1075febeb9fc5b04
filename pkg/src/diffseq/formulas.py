"""Closed-form values, bounds and conjectures for f(S,k;r), as a registry.

Each entry ties a gap-set family to a formula in k, a kind (exact / lower /
upper / conjecture) and an applicability predicate.  The solver consults only
theorem-backed lower bounds when choosing where to start its upward
iteration; conjectures are carried for reporting and never steer the search,
so a wrong conjecture cannot corrupt an exact result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .gapsets import GapSet, not_multiple_of


def g(k: int) -> int:
    """The two-color threshold for {2}-union-odds gaps: 3k-4 odd k, 3k-3 even."""
    if k < 2:
        raise ValueError(f"g(k) requires k >= 2, got {k}")
    return 3 * k - 4 if k % 2 == 1 else 3 * k - 3


def fib(i: int) -> int:
    """Fibonacci numbers with F(1) = F(2) = 1."""
    if i < 1:
        raise ValueError(f"fib(i) requires i >= 1, got {i}")
    a, b = 1, 1
    for _ in range(i - 1):
        a, b = b, a + b
    return a


def scaled_value(m_value: int, j: int) -> int:
    """Threshold after scaling every gap by j: M maps to j*(M-1)+1."""
    if m_value < 1 or j < 1:
        raise ValueError("scaled_value requires M >= 1 and j >= 1")
    return j * (m_value - 1) + 1


_PROP36_CLASSES = frozenset({1, 2, 5, 7, 10, 11})


def _conj_s6(k: int) -> int:
    # Piecewise by k mod 4; conjectured exact value for the non-multiples of 6.
    offset = {2: 4, 3: 5, 0: 6, 1: 7}[k % 4]
    return (5 * k - offset) // 2


def _is_powers2(S: GapSet) -> bool:
    return S.kind == "powers" and S.params[0] == 2


def _is_prop36_family(S: GapSet) -> bool:
    return S.kind == "residues" and S.params == (12, _PROP36_CLASSES)


def _geometric_base(S: GapSet) -> int:
    return S.params[0] if S.kind == "thm23" else 2


@dataclass(frozen=True)
class BoundEntry:
    """One registered formula: family matcher, kind, and value in k."""

    family: str
    params: str
    kind: str  # exact | lower | upper | conjecture
    formula_id: str
    formula: str
    k_range: str
    statement: str
    matches: Callable[[GapSet], bool] = field(repr=False)
    applies: Callable[[GapSet, int, int], bool] = field(repr=False)
    value: Callable[[GapSet, int], int] = field(repr=False)


_REGISTRY: tuple[BoundEntry, ...] = (
    BoundEntry(
        family="odds_plus_two", params="-", kind="exact",
        formula_id="odds-two-exact", formula="g(k)", k_range="k>=2",
        statement="f = 3k-4 for odd k and 3k-3 for even k, two colors",
        matches=lambda S: S.kind == "odds_plus_two",
        applies=lambda S, k, r: r == 2 and k >= 2,
        value=lambda S, k: g(k),
    ),
    BoundEntry(
        family="odds_plus_two", params="-", kind="upper",
        formula_id="odds-two-3color-upper", formula="6k^2-13k+6", k_range="k>=2",
        statement="f <= 6k^2-13k+6 with three colors",
        matches=lambda S: S.kind == "odds_plus_two",
        applies=lambda S, k, r: r == 3 and k >= 2,
        value=lambda S, k: 6 * k * k - 13 * k + 6,
    ),
    BoundEntry(
        family="s_m(3)", params="m=3", kind="exact",
        formula_id="nonmult3-exact", formula="4k-5", k_range="k>=2",
        statement="f = 4k-5 for the non-multiples of 3, two colors",
        matches=lambda S: not_multiple_of(S) == 3,
        applies=lambda S, k, r: r == 2 and k >= 2,
        value=lambda S, k: 4 * k - 5,
    ),
    BoundEntry(
        family="s_m(4)", params="m=4", kind="exact",
        formula_id="nonmult4-exact", formula="g(k)", k_range="k>=2",
        statement="f = g(k) for the non-multiples of 4, two colors",
        matches=lambda S: not_multiple_of(S) == 4,
        applies=lambda S, k, r: r == 2 and k >= 2,
        value=lambda S, k: g(k),
    ),
    BoundEntry(
        family="s_m(m)", params="m>=5", kind="exact",
        formula_id="nonmult-small-k-exact", formula="2k-1", k_range="1<=k<m",
        statement="f = 2k-1 for the non-multiples of m when k < m, two colors",
        matches=lambda S: (not_multiple_of(S) or 0) >= 5,
        applies=lambda S, k, r: r == 2 and 1 <= k < (not_multiple_of(S) or 0),
        value=lambda S, k: 2 * k - 1,
    ),
    BoundEntry(
        family="s_m(m)", params="m>=5", kind="lower",
        formula_id="nonmult-lower", formula="2k+2a-1, a=floor(k/m)", k_range="k>=1",
        statement="f >= 2k+2a-1 for the non-multiples of m, where am <= k < (a+1)m",
        matches=lambda S: (not_multiple_of(S) or 0) >= 5,
        applies=lambda S, k, r: r == 2 and k >= 1,
        value=lambda S, k: 2 * k + 2 * (k // not_multiple_of(S)) - 1,
    ),
    BoundEntry(
        family="powers(2)", params="a=2", kind="lower",
        formula_id="pow2-lower", formula="8(k-3)+1", k_range="k>=3",
        statement="f >= 8(k-3)+1 for power-of-two gaps, two colors",
        matches=_is_powers2,
        applies=lambda S, k, r: r == 2 and k >= 3,
        value=lambda S, k: 8 * (k - 3) + 1,
    ),
    BoundEntry(
        family="thm23(a)", params="a>=2, a!=3 (a=2 covers powers(2))", kind="upper",
        formula_id="geometric-upper", formula="a^k-a+1", k_range="k>=1",
        statement="f <= a^k-a+1 for the two-track geometric gap family, two colors",
        matches=lambda S: S.kind == "thm23" or _is_powers2(S),
        applies=lambda S, k, r: r == 2 and k >= 1,
        value=lambda S, k: _geometric_base(S) ** k - _geometric_base(S) + 1,
    ),
    BoundEntry(
        family="fibonacci", params="-", kind="upper",
        formula_id="fibonacci-upper", formula="F(k+3)-2", k_range="k>=1",
        statement="f <= F(k+3)-2 for Fibonacci gaps, two colors",
        matches=lambda S: S.kind == "fibonacci",
        applies=lambda S, k, r: r == 2 and k >= 1,
        value=lambda S, k: fib(k + 3) - 2,
    ),
    BoundEntry(
        family="residues(12; 1,2,5,7,10,11)", params="mod 12", kind="exact",
        formula_id="mod12-classes-exact", formula="7k-12", k_range="k>=3",
        statement="f = 7k-12 for gaps divisible by neither 3 nor 4, two colors",
        matches=_is_prop36_family,
        applies=lambda S, k, r: r == 2 and k >= 3,
        value=lambda S, k: 7 * k - 12,
    ),
    BoundEntry(
        family="s_m(6)", params="m=6", kind="conjecture",
        formula_id="nonmult6-conjecture",
        formula="(5k-4)/2, (5k-5)/2, (5k-6)/2, (5k-7)/2 by k mod 4 = 2,3,0,1",
        k_range="k>=2",
        statement="conjectured exact value for the non-multiples of 6, two colors",
        matches=lambda S: not_multiple_of(S) == 6,
        applies=lambda S, k, r: r == 2 and k >= 2,
        value=lambda S, k: _conj_s6(k),
    ),
)


@dataclass
class Bounds:
    """Tightest registered bounds for one (set, k, r) query."""

    lower: int | None
    upper: int | None
    exact: bool
    conjectures: list[tuple[str, int]]
    entries: list[tuple[BoundEntry, int]]


def bounds_for(S: GapSet, k: int, r: int) -> Bounds:
    """Collect every applicable registry entry and reduce to tightest bounds.

    Exact entries register on both sides; the exact flag is set when a
    theorem pins lower == upper.  Unknown families yield empty bounds.
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    lower: int | None = None
    upper: int | None = None
    exact = False
    conjectures: list[tuple[str, int]] = []
    matched: list[tuple[BoundEntry, int]] = []
    for entry in _REGISTRY:
        if not entry.matches(S) or not entry.applies(S, k, r):
            continue
        value = entry.value(S, k)
        matched.append((entry, value))
        if entry.kind == "conjecture":
            conjectures.append((entry.formula_id, value))
            continue
        if entry.kind in ("exact", "lower"):
            lower = value if lower is None else max(lower, value)
        if entry.kind in ("exact", "upper"):
            upper = value if upper is None else min(upper, value)
        if entry.kind == "exact":
            exact = True
    return Bounds(lower=lower, upper=upper, exact=exact,
                  conjectures=conjectures, entries=matched)


def theorem_lower_bound(S: GapSet, k: int, r: int) -> int | None:
    """Best theorem-backed lower bound, or None; conjectures never count."""
    return bounds_for(S, k, r).lower


def registry_rows() -> list[dict]:
    """Registry dump rows: family, params, k-range, kind, formula, citation."""
    return [
        {
            "family": entry.family,
            "params": entry.params,
            "k-range": entry.k_range,
            "kind": entry.kind,
            "formula": entry.formula,
            "citation": entry.statement,
        }
        for entry in _REGISTRY
    ]
