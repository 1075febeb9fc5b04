"""Coloring type, longest-chain dynamic program, oracle, and incremental state."""

from __future__ import annotations

import itertools
import random

import pytest

from diffseq.coloring import (
    ChainState,
    Coloring,
    brute_force_longest,
    has_k_term,
    longest_mono_diffseq,
)
from diffseq.gapsets import make_set

ODDS = make_set("residues(2; 1)")
POW2 = make_set("powers(2)")


def all_zero(n: int) -> Coloring:
    return Coloring.from_colors([0] * n, 1)


def alternating(n: int) -> Coloring:
    return Coloring.from_colors([i % 2 for i in range(n)], 2)


# --- Coloring type ---------------------------------------------------------

def test_parse_and_text_round_trip():
    c = Coloring.parse("0120", 3)
    assert c.colors == (0, 1, 2, 0)
    assert c.to_text() == "0120"
    assert Coloring.parse(c.to_text(), 3) == c


def test_parse_rejects_color_at_or_above_r():
    with pytest.raises(ValueError):
        Coloring.parse("012", 2)
    with pytest.raises(ValueError):
        Coloring.parse("0!1", 2)
    with pytest.raises(ValueError):
        Coloring.parse("", 2)


def test_parse_infers_r():
    assert Coloring.parse("0120").r == 3


def test_letters_cover_colors_past_nine():
    c = Coloring.parse("0a", 11)
    assert c.colors == (0, 10)
    assert c.to_text() == "0a"


def test_constructor_invariants():
    with pytest.raises(ValueError):
        Coloring.from_colors([], 2)
    with pytest.raises(ValueError):
        Coloring.from_colors([0, 2], 2)
    with pytest.raises(ValueError):
        Coloring.from_colors([0], 0)


def test_color_of_is_one_based():
    c = Coloring.parse("011", 2)
    assert [c.color_of(x) for x in (1, 2, 3)] == [0, 1, 1]
    with pytest.raises(IndexError):
        c.color_of(4)


# --- longest_mono_diffseq --------------------------------------------------

def test_single_color_unit_gaps_spans_interval():
    length, witness = longest_mono_diffseq(all_zero(5), make_set("explicit(1)"))
    assert length == 5
    assert witness.positions == (1, 2, 3, 4, 5)


def test_alternating_coloring_blocks_odd_gaps():
    # Same-colored positions differ by even numbers, never an odd gap.
    length, _ = longest_mono_diffseq(alternating(20), ODDS)
    assert length == 1


def test_period_four_coloring_blocks_gap_two():
    c = Coloring.parse("001100110011", 2)
    length, _ = longest_mono_diffseq(c, make_set("explicit(2)"))
    assert length == 1


def test_eight_periodic_coloring_longest_is_four():
    c = Coloring.parse("10010110" * 2, 2)
    length, witness = longest_mono_diffseq(c, POW2)
    assert length == 4
    assert length == brute_force_longest(c, POW2)
    assert witness.is_valid_for(c, POW2)


def test_witness_always_validates():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 16)
        r = rng.randint(1, 3)
        c = Coloring.from_colors([rng.randrange(r) for _ in range(n)], r)
        S = make_set(rng.choice(["powers(2)", "s_m(3)", "odds_plus_two", "fibonacci"]))
        length, witness = longest_mono_diffseq(c, S)
        assert witness.is_valid_for(c, S)
        assert len(witness.positions) == length


def test_witness_is_deterministic():
    c = Coloring.parse("0101100110", 2)
    S = make_set("s_m(3)")
    first = longest_mono_diffseq(c, S)
    for _ in range(3):
        assert longest_mono_diffseq(c, S) == first


# --- has_k_term ------------------------------------------------------------

def test_has_k_term_examples():
    assert has_k_term(all_zero(5), make_set("explicit(1)"), 5)
    assert not has_k_term(alternating(20), ODDS, 2)
    assert not has_k_term(Coloring.parse("10010110" * 2, 2), POW2, 5)


def test_has_k_term_matches_longest():
    rng = random.Random(11)
    S = make_set("s_m(3)")
    for _ in range(200):
        n = rng.randint(1, 14)
        c = Coloring.from_colors([rng.randrange(2) for _ in range(n)], 2)
        length, _ = longest_mono_diffseq(c, S)
        for k in range(1, length + 2):
            assert has_k_term(c, S, k) == (k <= length)


def test_one_term_chains_always_exist():
    assert has_k_term(Coloring.parse("0"), make_set("explicit(5)"), 1)


# --- brute_force_longest (the oracle itself) -------------------------------

def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_longest(all_zero(21), POW2)


def test_brute_force_against_subset_enumeration():
    # Check the oracle itself against literal subset enumeration on tiny inputs.
    def subset_longest(c: Coloring, S) -> int:
        best = 1
        for size in range(2, c.n + 1):
            for positions in itertools.combinations(range(1, c.n + 1), size):
                if len({c.color_of(x) for x in positions}) != 1:
                    continue
                if all((b - a) in S for a, b in zip(positions, positions[1:])):
                    best = max(best, size)
        return best

    rng = random.Random(3)
    S = make_set("s_m(3)")
    for _ in range(25):
        n = rng.randint(1, 9)
        c = Coloring.from_colors([rng.randrange(2) for _ in range(n)], 2)
        assert brute_force_longest(c, S) == subset_longest(c, S)


def test_oracle_equivalence_exhaustive_small():
    S = make_set("odds_plus_two")
    for n in range(1, 9):
        for bits in range(2**n):
            c = Coloring.from_colors([(bits >> i) & 1 for i in range(n)], 2)
            length, _ = longest_mono_diffseq(c, S)
            assert length == brute_force_longest(c, S)


# --- structural properties -------------------------------------------------

def test_monotone_in_gap_set():
    rng = random.Random(23)
    small = make_set("explicit(1,4)")
    large = make_set("explicit(1,2,4)")
    for _ in range(100):
        n = rng.randint(1, 16)
        c = Coloring.from_colors([rng.randrange(2) for _ in range(n)], 2)
        assert longest_mono_diffseq(c, small)[0] <= longest_mono_diffseq(c, large)[0]


def test_color_permutation_invariance():
    rng = random.Random(29)
    S = make_set("powers(2)")
    for _ in range(100):
        n = rng.randint(1, 14)
        c = Coloring.from_colors([rng.randrange(3) for _ in range(n)], 3)
        perm = [0, 1, 2]
        rng.shuffle(perm)
        assert (longest_mono_diffseq(c, S)[0]
                == longest_mono_diffseq(c.relabel(perm), S)[0])


def test_truncation_never_increases_longest():
    rng = random.Random(31)
    S = make_set("s_m(4)")
    for _ in range(50):
        n = rng.randint(2, 16)
        c = Coloring.from_colors([rng.randrange(2) for _ in range(n)], 2)
        full, _ = longest_mono_diffseq(c, S)
        for m in range(1, n):
            assert longest_mono_diffseq(c.truncate(m), S)[0] <= full


# --- ChainState (incremental/undoable recurrence) --------------------------

def test_extend_on_empty_prefix():
    state = ChainState(make_set("explicit(1)"), k=2, n=5, r=2)
    value, prune = state.extend(0)
    assert (value, prune) == (1, False)
    state.retract()
    value, prune = ChainState(make_set("explicit(1)"), k=1, n=5, r=2).extend(1)
    assert (value, prune) == (1, True)  # k = 1 prunes immediately


def test_extend_builds_chain_and_prunes():
    state = ChainState(make_set("explicit(1,2)"), k=3, n=3, r=2)
    assert state.extend(0) == (1, False)
    assert state.extend(0) == (2, False)
    assert state.extend(0) == (3, True)


def test_extend_ignores_differently_colored_predecessor():
    state = ChainState(make_set("explicit(1)"), k=2, n=3, r=2)
    state.extend(0)
    state.extend(1)
    value, prune = state.extend(0)  # predecessor at gap 1 has color 1
    assert (value, prune) == (1, False)
    # cross-check against the batch recurrence
    c = state.as_coloring()
    assert longest_mono_diffseq(c, make_set("explicit(1)"))[0] == 1


def test_incremental_matches_batch_after_random_walk():
    rng = random.Random(37)
    S = make_set("s_m(3)")
    for _ in range(50):
        n = rng.randint(1, 14)
        state = ChainState(S, k=10**9, n=n, r=2)
        reference: list[int] = []
        colors: list[int] = []
        while state.assigned < n:
            # random walk: sometimes retract, always eventually progress
            if colors and rng.random() < 0.3:
                state.retract()
                colors.pop()
                reference.pop()
                continue
            color = rng.randrange(2)
            value, _ = state.extend(color)
            colors.append(color)
            reference.append(value)
        c = Coloring.from_colors(colors, 2)
        # L-values of the full run match a fresh batch computation
        from diffseq.coloring import _chain_table, _gaps_within
        L, _ = _chain_table(c.colors, _gaps_within(S, n))
        assert reference == L


def test_retract_restores_state_exactly():
    S = make_set("explicit(1,2)")
    state = ChainState(S, k=5, n=4, r=2)
    state.extend(0)
    snapshot = (list(state.colors), list(state.L))
    state.extend(0)
    state.retract()
    assert (list(state.colors), list(state.L)) == snapshot
    with pytest.raises(ValueError):
        ChainState(S, k=2, n=2, r=2).retract()
