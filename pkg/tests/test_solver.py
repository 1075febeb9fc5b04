"""Backtracking solver: feasibility, exact values, certificates, determinism."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import pytest

from diffseq import solver
from diffseq._kernels import HAVE_NUMBA
from diffseq.coloring import Coloring, has_k_term
from diffseq.gapsets import make_set
from diffseq.solver import SearchBudget, compute_f, feasible, verify_certificate

ENGINES = ["python"] + (["numba"] if HAVE_NUMBA else [])


def test_two_singletons_are_feasible():
    res = feasible(make_set("odds_plus_two"), 2, 2, 2)
    assert res.status == solver.FEASIBLE
    assert res.coloring.to_text() == "01"


def test_power_gaps_threshold_at_seven():
    S = make_set("powers(2)")
    assert feasible(S, 3, 2, 6).status == solver.FEASIBLE
    assert feasible(S, 3, 2, 7).status == solver.INFEASIBLE


def test_nonmult3_infeasible_at_seven():
    assert feasible(make_set("s_m(3)"), 3, 2, 7).status == solver.INFEASIBLE


def test_feasible_coloring_is_lexicographically_least():
    # Exhaustive reference: smallest canonical (first position color 0)
    # avoiding coloring in lexicographic order.
    S = make_set("s_m(3)")
    k, n = 3, 6
    best = None
    for colors in itertools.product((0, 1), repeat=n):
        if colors[0] != 0:
            continue
        c = Coloring.from_colors(colors, 2)
        if not has_k_term(c, S, k):
            best = c
            break
    res = feasible(S, k, 2, n)
    assert res.coloring == best


@pytest.mark.parametrize("engine", ENGINES)
def test_feasible_matches_exhaustive_enumeration(engine):
    # Complete agreement with brute-force enumeration over all 2**n colorings
    # (first color pinned to 0; the rest follows by color-swap symmetry).
    for spec, k in (("powers(2)", 3), ("odds_plus_two", 3), ("s_m(3)", 3), ("primes", 2)):
        S = make_set(spec)
        for n in range(1, 13):
            exists = any(
                not has_k_term(Coloring.from_colors((0,) + rest, 2), S, k)
                for rest in itertools.product((0, 1), repeat=n - 1)
            )
            res = feasible(S, k, 2, n, engine=engine)
            expected = solver.FEASIBLE if exists else solver.INFEASIBLE
            assert res.status == expected, (spec, n)


def test_compute_f_examples():
    assert compute_f(make_set("s_m(5)"), 2, 2).value == 3
    assert compute_f(make_set("powers(2)"), 4, 2).value == 11
    assert compute_f(make_set("primes"), 3, 2).value == 9


def test_compute_f_not_found_when_gaps_have_no_even_member():
    # {1} never yields a 2-term chain against the alternating 2-coloring.
    res = compute_f(make_set("explicit(1)"), 2, 2, n_max=100)
    assert res.status == solver.NOT_FOUND_UP_TO
    assert res.value is None
    assert res.feasible_up_to == 100


def test_certificate_properties():
    S = make_set("s_m(3)")
    res = compute_f(S, 3, 2)
    assert res.status == solver.EXACT and res.value == 7
    assert res.certificate.n == 6
    assert not has_k_term(res.certificate, S, 3)
    assert verify_certificate(res, S, 3, 2)


def test_verify_certificate_catches_mutations():
    S = make_set("s_m(3)")
    res = compute_f(S, 3, 2)
    # flip one position to create a 3-term chain
    flipped = list(res.certificate.colors)
    flipped[1] ^= 1
    bad = replace(res, certificate=Coloring.from_colors(flipped, 2))
    assert not verify_certificate(bad, S, 3, 2)
    # a decremented value claims infeasibility where a coloring exists
    shrunk = replace(res, value=res.value - 1,
                     certificate=res.certificate.truncate(res.certificate.n - 1))
    assert not verify_certificate(shrunk, S, 3, 2)


def test_verify_certificate_requires_exact():
    res = compute_f(make_set("explicit(1)"), 2, 2, n_max=10)
    with pytest.raises(ValueError):
        verify_certificate(res, make_set("explicit(1)"), 2, 2)


def test_k_equal_one_threshold_is_one():
    res = compute_f(make_set("explicit(1)"), 1, 2)
    assert res.status == solver.EXACT
    assert res.value == 1
    assert res.certificate is None


def test_single_color_threshold_is_k():
    # with one color the interval itself is the only coloring
    res = compute_f(make_set("explicit(1)"), 5, 1)
    assert res.value == 5


def test_monotone_in_k_and_r():
    S = make_set("fibonacci")
    values_k = [compute_f(S, k, 2).value for k in range(2, 6)]
    assert values_k == sorted(values_k)
    assert compute_f(S, 3, 2).value <= compute_f(S, 3, 3).value


def test_antimonotone_in_gap_set():
    # odds_plus_two is a subset of the non-multiples of 4
    f_small = compute_f(make_set("odds_plus_two"), 4, 2).value
    f_large = compute_f(make_set("s_m(4)"), 4, 2).value
    assert f_small >= f_large


@pytest.mark.parametrize("j", [2, 3])
def test_scaling_law_small_case(j):
    S = make_set("s_m(3)")
    base = compute_f(S, 3, 2).value
    scaled = compute_f(make_set(f"scaled({j}, s_m(3))"), 3, 2).value
    assert scaled == j * (base - 1) + 1


def test_deterministic_across_runs_and_workers():
    S = make_set("primes+1")
    ref = compute_f(S, 4, 2)
    for workers in (1, 2, 3):
        res = compute_f(S, 4, 2, workers=workers)
        assert (res.status, res.value, res.nodes) == (ref.status, ref.value, ref.nodes)
        assert res.certificate == ref.certificate


@pytest.mark.parametrize("workers", [2, 3])
def test_parallel_feasibility_matches_sequential(workers):
    cases = [
        ("powers(2)", 4, 2, 10),   # feasible
        ("powers(2)", 4, 2, 11),   # infeasible
        ("primes", 3, 2, 9),       # infeasible
        ("odds_plus_two", 4, 2, 8),
        ("s_m(3)", 4, 2, 11),
    ]
    for spec, k, r, n in cases:
        S = make_set(spec)
        seq = feasible(S, k, r, n, workers=1)
        par = feasible(S, k, r, n, workers=workers)
        assert (par.status, par.nodes) == (seq.status, seq.nodes), (spec, n)
        assert par.coloring == seq.coloring


def test_parallel_matches_sequential_on_random_instances():
    import random

    rng = random.Random(99)
    specs = ["powers(2)", "s_m(3)", "odds_plus_two", "fibonacci", "primes+1"]
    for _ in range(25):
        S = make_set(rng.choice(specs))
        k = rng.randint(2, 4)
        r = rng.randint(2, 3)
        n = rng.randint(2, 14)
        workers = rng.choice((2, 3, 4))
        seq = feasible(S, k, r, n, workers=1)
        par = feasible(S, k, r, n, workers=workers)
        assert (par.status, par.nodes) == (seq.status, seq.nodes), (S.spec, k, r, n)
        assert par.coloring == seq.coloring


def test_three_color_feasibility_matches_exhaustive():
    # Canonical color introduction must stay complete for r=3: compare the
    # verdict with literal enumeration of all 3**n colorings.
    S = make_set("s_m(4)")
    k = 2
    for n in range(1, 9):
        exists = any(
            not has_k_term(Coloring.from_colors(colors, 3), S, k)
            for colors in itertools.product((0, 1, 2), repeat=n)
        )
        res = feasible(S, k, 3, n)
        expected = solver.FEASIBLE if exists else solver.INFEASIBLE
        assert res.status == expected, n


def test_time_budget_zero_times_out():
    res = compute_f(make_set("primes"), 4, 2, budget=SearchBudget(max_seconds=0.0))
    assert res.status == solver.TIMEOUT


@pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")
def test_engines_agree_bit_for_bit():
    cases = [("powers(2)", 3, 2, 7), ("s_m(3)", 3, 2, 7), ("odds_plus_two", 4, 2, 9),
             ("fibonacci", 4, 2, 9), ("primes+2", 3, 2, 17)]
    for spec, k, r, n in cases:
        S = make_set(spec)
        a = feasible(S, k, r, n, engine="python")
        b = feasible(S, k, r, n, engine="numba")
        assert (a.status, a.nodes) == (b.status, b.nodes)
        assert a.coloring == b.coloring


def test_node_budget_is_exact():
    S = make_set("primes")
    full = feasible(S, 4, 2, 13)
    assert full.status == solver.INFEASIBLE
    capped = feasible(S, 4, 2, 13, budget=SearchBudget(max_nodes=full.nodes - 1))
    assert capped.status == solver.BUDGET_EXCEEDED
    assert capped.nodes == full.nodes - 1
    uncapped = feasible(S, 4, 2, 13, budget=SearchBudget(max_nodes=full.nodes))
    assert uncapped.status == solver.INFEASIBLE


def test_compute_f_timeout_reports_progress():
    S = make_set("primes")
    res = compute_f(S, 4, 2, budget=SearchBudget(max_nodes=50))
    assert res.status == solver.TIMEOUT
    assert res.value is None
    assert res.nodes <= 50


def test_concurrent_compute_f_calls_do_not_interfere():
    S = make_set("powers(2)")
    expected = compute_f(S, 4, 2)
    with ThreadPoolExecutor(max_workers=2) as pool:
        futures = [pool.submit(compute_f, S, 4, 2) for _ in range(4)]
        for fut in futures:
            res = fut.result()
            assert (res.value, res.nodes) == (expected.value, expected.nodes)


def test_json_round_trip():
    S = make_set("s_m(3)")
    res = compute_f(S, 3, 2)
    doc = res.to_json_dict()
    assert doc["spec"] == "s_m(3)"
    assert doc["value"] == 7
    restored = Coloring.parse(doc["certificate"], res.r)
    assert not has_k_term(restored, S, 3)


def test_start_bound_above_nmax_still_reports_honestly():
    # the registered exact start bound (4k-5 = 35) exceeds n_max here
    res = compute_f(make_set("s_m(3)"), 10, 2, n_max=20)
    assert res.status == solver.NOT_FOUND_UP_TO
    assert res.feasible_up_to == 20
