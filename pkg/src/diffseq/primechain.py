"""Prime chains with shifted-prime gaps, and residue admissibility of offset systems.

A chain for shift t is a sequence of primes p1 < p2 < ... < pk whose every
consecutive gap p[i] - p[i-1] equals q + t for some prime q (the gap witness).
This module provides the segmented prime sieve, a deterministic searcher for
such chains, an independent re-verifier (trial division, no shared sieve
state), and the p-admissibility test for offset systems derived from gap
witness tuples.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

# Above this bound the sieve switches to fixed-span segments so that memory
# stays proportional to the span, not the bound.
_SEGMENT_THRESHOLD = 10_000_000
_SEGMENT_SPAN = 4_000_000


def _simple_sieve(limit: int) -> np.ndarray:
    """Primes <= limit via a plain Eratosthenes bool mask."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def sieve(n: int) -> np.ndarray:
    """All primes <= n in ascending order; segmented above 10**7."""
    if n < 2:
        raise ValueError(f"sieve bound must be >= 2, got {n}")
    if n <= _SEGMENT_THRESHOLD:
        return _simple_sieve(n)
    base = _simple_sieve(math.isqrt(n))
    parts = [_simple_sieve(_SEGMENT_THRESHOLD)]
    low = _SEGMENT_THRESHOLD + 1
    while low <= n:
        high = min(low + _SEGMENT_SPAN, n + 1)  # exclusive
        mask = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((low + p - 1) // p) * p)
            if start < high:
                mask[start - low :: p] = False
        parts.append((np.flatnonzero(mask) + low).astype(np.int64))
        low = high
    return np.concatenate(parts)


class _PrimalityCache:
    """Grow-on-demand sieve mask shared by membership queries.

    Growth is synchronized; reads of a published mask are safe without the
    lock because masks are replaced wholesale, never mutated in place.
    """

    def __init__(self) -> None:
        self._mask = np.zeros(2, dtype=bool)
        self._lock = threading.Lock()

    def is_prime(self, d: int) -> bool:
        if d < 2:
            return False
        mask = self._mask
        if d >= mask.shape[0]:
            with self._lock:
                if d >= self._mask.shape[0]:
                    limit = max(2 * self._mask.shape[0], 2 * d, 1000)
                    new = np.ones(limit + 1, dtype=bool)
                    new[:2] = False
                    for p in range(2, math.isqrt(limit) + 1):
                        if new[p]:
                            new[p * p :: p] = False
                    self._mask = new
                mask = self._mask
        return bool(mask[d])


_cache = _PrimalityCache()


def is_prime(d: int) -> bool:
    """Deterministic sieve-backed primality test (cache grows on demand)."""
    return _cache.is_prime(d)


def _trial_division_prime(n: int) -> bool:
    # Independent of the sieve on purpose: verify_chain must not trust it.
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeChain:
    """A chain of primes whose gaps are witnessed shifted primes.

    gap_witnesses[i] is the prime q with gaps[i] == q + t.
    """

    t: int
    elements: tuple[int, ...]
    gaps: tuple[int, ...]
    gap_witnesses: tuple[int, ...]

    @classmethod
    def from_elements(cls, t: int, elements: tuple[int, ...] | list[int]) -> "PrimeChain":
        elements = tuple(int(p) for p in elements)
        gaps = tuple(b - a for a, b in zip(elements, elements[1:]))
        return cls(t=t, elements=elements, gaps=gaps,
                   gap_witnesses=tuple(gap - t for gap in gaps))

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "k": len(self.elements),
            "elements": list(self.elements),
            "gaps": list(self.gaps),
            "gap_witnesses": list(self.gap_witnesses),
        }


@dataclass(frozen=True)
class OffsetSystem:
    """Offsets b1=0 < b2 < ... built as partial sums of gap sources q_j + t."""

    t: int
    sources: tuple[int, ...]
    offsets: tuple[int, ...]

    @classmethod
    def from_sources(cls, t: int, sources: tuple[int, ...] | list[int]) -> "OffsetSystem":
        sources = tuple(int(q) for q in sources)
        offsets = [0]
        for q in sources:
            offsets.append(offsets[-1] + q + t)
        return cls(t=t, sources=sources, offsets=tuple(offsets))

    @classmethod
    def from_offsets(cls, t: int, offsets: tuple[int, ...] | list[int]) -> "OffsetSystem":
        """Offsets given directly; sources recovered from consecutive sums."""
        offsets = tuple(int(b) for b in offsets)
        sources = tuple(b2 - b1 - t for b1, b2 in zip(offsets, offsets[1:]))
        return cls(t=t, sources=sources, offsets=offsets)


def _member(sorted_primes: np.ndarray, x: int) -> bool:
    i = int(np.searchsorted(sorted_primes, x))
    return i < sorted_primes.shape[0] and int(sorted_primes[i]) == x


def _dfs_extend(chain: list[int], t: int, k: int, bound: int,
                prime_list: list[int], prime_arr: np.ndarray) -> list[int] | None:
    if len(chain) == k:
        return chain
    p = chain[-1]
    for q in prime_list:
        nxt = p + q + t
        if nxt > bound:
            break
        if _member(prime_arr, nxt):
            found = _dfs_extend(chain + [nxt], t, k, bound, prime_list, prime_arr)
            if found is not None:
                return found
    return None


def find_chain(t: int, k: int, bound: int, strategy: str = "dfs") -> PrimeChain | None:
    """Search for a k-element chain with all elements <= bound.

    dfs tries starting primes in ascending order and extends by the smallest
    admissible next element first, so the first complete chain found is the
    lexicographically least one within the bound.  bfs wraps dfs in iterative
    deepening over the largest allowed element, so its result additionally has
    the least possible maximum element.  Returns None when no chain exists
    within the bound (which says nothing about larger bounds).
    """
    if t < 1 or t % 2 == 0:
        raise ValueError(f"shift t must be a positive odd integer, got {t}")
    if k < 2:
        raise ValueError(f"chain length k must be >= 2, got {k}")
    if strategy not in ("dfs", "bfs"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if bound < 2:
        return None

    prime_arr = sieve(bound)
    prime_list = [int(p) for p in prime_arr]

    def dfs_upto(cap: int) -> list[int] | None:
        for p1 in prime_list:
            if p1 > cap:
                break
            found = _dfs_extend([p1], t, k, cap, prime_list, prime_arr)
            if found is not None:
                return found
        return None

    if strategy == "dfs":
        found = dfs_upto(bound)
    else:
        found = None
        for cap in prime_list[k - 1 :]:
            found = dfs_upto(cap)
            if found is not None:
                break
    if found is None:
        return None
    return PrimeChain.from_elements(t, found)


def verify_chain(chain: PrimeChain) -> bool:
    """Re-check a chain from scratch; primality by trial division only."""
    if chain.t < 1 or chain.t % 2 == 0:
        return False
    if len(chain.elements) < 1:
        return False
    if any(b <= a for a, b in zip(chain.elements, chain.elements[1:])):
        return False
    if chain.gaps != tuple(b - a for a, b in zip(chain.elements, chain.elements[1:])):
        return False
    if chain.gap_witnesses != tuple(gap - chain.t for gap in chain.gaps):
        return False
    if not all(_trial_division_prime(p) for p in chain.elements):
        return False
    return all(_trial_division_prime(q) for q in chain.gap_witnesses)


def is_p_admissible(system: OffsetSystem, p: int) -> bool:
    """True iff some residue h mod p keeps every h + offset nonzero mod p."""
    if not _trial_division_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    residues = [b % p for b in system.offsets]
    for h in range(p):
        if all((h + b) % p != 0 for b in residues):
            return True
    return False


def is_admissible_small_primes(system: OffsetSystem, k: int) -> bool:
    """Conjunction of is_p_admissible over primes p < k.

    Primes >= k never obstruct an offset system of k entries (there are more
    residue classes than offsets), so only the small primes need checking.
    Vacuously true for k <= 2.
    """
    if k <= 2:
        return True
    return all(is_p_admissible(system, int(p)) for p in sieve(k - 1))
