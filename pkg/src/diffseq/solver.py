"""Exact computation of f(S,k;r) by complete backtracking over colorings.

feasible(S, k, r, n) decides whether some r-coloring of [1, n] avoids
monochromatic k-term chains, returning the lexicographically least such
coloring under canonical color order when one exists.  compute_f iterates n
upward from a start bound (k, or a registered theorem lower bound when one
applies) and reports the first infeasible n as the exact value, with the
avoiding coloring of [1, value-1] as certificate.

Search is plain chronological backtracking, pruned the moment the incremental
longest-chain value at the newest position reaches k.  Determinism: node
counts and certificates are reproducible across runs, engines, and worker
counts; with workers > 1 the tree is split at a fixed shallow depth into
prefix subtrees searched independently and merged in canonical (lexicographic)
order, so reported nodes equal what the sequential search would count.  Node
budgets are enforced exactly; wall-clock budgets are best-effort (checked
between node slices), so timeout outcomes are inherently timing-dependent.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from threading import Event

import numpy as np

from . import formulas
from ._kernels import PAUSED, SAT, UNSAT, get_search, resolve_engine
from .coloring import Coloring, has_k_term
from .gapsets import GapSet

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
BUDGET_EXCEEDED = "budget_exceeded"

EXACT = "exact"
NOT_FOUND_UP_TO = "not_found_up_to"
TIMEOUT = "timeout"

_NUMBA_SLICE = 4_000_000
_PYTHON_SLICE = 200_000

RESULT_VERSION = "1"


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one solver call; None means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes < 0:
            raise ValueError("max_nodes must be >= 0")
        if self.max_seconds is not None and self.max_seconds < 0:
            raise ValueError("max_seconds must be >= 0")


UNLIMITED = SearchBudget()


class _Tracker:
    """Shared budget accounting across the searches of one solver call."""

    def __init__(self, budget: SearchBudget, slice_nodes: int,
                 deadline: float | None = None):
        self.nodes_left = budget.max_nodes if budget.max_nodes is not None else None
        if deadline is not None:
            self.deadline = deadline
        else:
            self.deadline = (
                time.monotonic() + budget.max_seconds
                if budget.max_seconds is not None else None
            )
        self.slice_nodes = slice_nodes

    def next_slice(self) -> int:
        if self.nodes_left is None:
            return self.slice_nodes
        return min(self.slice_nodes, self.nodes_left)

    def charge(self, nodes: int) -> None:
        if self.nodes_left is not None:
            self.nodes_left -= nodes

    def out_of_nodes(self) -> bool:
        return self.nodes_left is not None and self.nodes_left <= 0

    def out_of_time(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


@dataclass
class FeasibleResult:
    """Outcome of one fixed-n feasibility search."""

    status: str  # feasible | infeasible | budget_exceeded
    coloring: Coloring | None
    nodes: int
    elapsed: float


@dataclass
class SolveResult:
    """Outcome of a compute_f run, JSON-serializable for the CLI."""

    set_spec: str
    k: int
    r: int
    status: str  # exact | not_found_up_to | timeout
    value: int | None
    certificate: Coloring | None
    nodes: int
    elapsed: float
    feasible_up_to: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "spec": self.set_spec,
            "k": self.k,
            "r": self.r,
            "status": self.status,
            "value": self.value,
            "certificate": self.certificate.to_text() if self.certificate else None,
            "nodes": self.nodes,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "version": RESULT_VERSION,
        }


@dataclass
class _Frame:
    """Mutable search arrays for one (sub)tree."""

    n: int
    colors: np.ndarray
    L: np.ndarray
    used: np.ndarray
    cand: np.ndarray

    @classmethod
    def fresh(cls, n: int) -> "_Frame":
        return cls(
            n=n,
            colors=np.zeros(n, dtype=np.int64),
            L=np.zeros(n, dtype=np.int64),
            used=np.zeros(n, dtype=np.int64),
            cand=np.zeros(n + 1, dtype=np.int64),
        )


def _run_tree(search, frame: _Frame, r: int, k: int, gaps: np.ndarray, pos0: int,
              tracker: _Tracker, stop: Event | None = None) -> tuple[str, int]:
    """Drive the kernel over one subtree in node slices; returns (status, nodes)."""
    frame.cand[pos0] = 0
    i = pos0
    total = 0
    while True:
        if tracker.out_of_nodes() or tracker.out_of_time():
            return BUDGET_EXCEEDED, total
        if stop is not None and stop.is_set():
            return BUDGET_EXCEEDED, total  # discarded by the canonical merge
        status, nodes, i = search(
            frame.n, r, k, gaps, frame.colors, frame.L, frame.used, frame.cand,
            pos0, i, tracker.next_slice(),
        )
        total += nodes
        tracker.charge(nodes)
        if status == SAT:
            return FEASIBLE, total
        if status == UNSAT:
            return INFEASIBLE, total
        assert status == PAUSED


def _enumerate_prefixes(r: int, k: int, gaps_list: list[int], depth: int):
    """All feasible canonical prefixes of the given depth, in search order.

    Mirrors the kernel's branch order and node counting exactly; each emitted
    prefix carries a snapshot of the enumeration node count at emission time,
    which is what a plain sequential DFS would have spent at depths < depth
    before entering that prefix's subtree.
    """
    colors = [0] * depth
    L = [0] * depth
    used = [0] * depth
    cand = [0] * (depth + 1)
    out = []
    nodes = 0
    i = 0
    while i >= 0:
        if i == depth:
            out.append((list(colors), list(L), list(used), nodes))
            i -= 1
            continue
        c = cand[i]
        u = used[i - 1] if i > 0 else 0
        maxc = u if u < r - 1 else r - 1
        if c > maxc:
            i -= 1
            continue
        cand[i] = c + 1
        nodes += 1
        best = 0
        for s in gaps_list:
            j = i - s
            if j < 0:
                break
            if colors[j] == c and L[j] > best:
                best = L[j]
        li = best + 1
        if li >= k:
            continue
        colors[i] = c
        L[i] = li
        used[i] = u + (1 if c == u else 0)
        i += 1
        cand[i] = 0
    return out, nodes


def _split_depth(workers: int) -> int:
    return int(np.ceil(np.log2(workers))) + 2


def _feasible_parallel(S_gaps: np.ndarray, gaps_list: list[int], n: int, k: int, r: int,
                       budget: SearchBudget, workers: int, engine: str) -> FeasibleResult:
    t0 = time.monotonic()
    search = get_search(engine)
    slice_nodes = _NUMBA_SLICE if resolve_engine(engine) == "numba" else _PYTHON_SLICE
    depth = min(_split_depth(workers), n - 1)
    prefixes, enum_nodes = _enumerate_prefixes(r, k, gaps_list, depth)
    if not prefixes:
        return FeasibleResult(INFEASIBLE, None, enum_nodes, time.monotonic() - t0)

    # Every subtree gets the full node budget (the canonical merge below
    # re-imposes the budget at the sequential-equivalent cut) but shares one
    # absolute wall-clock deadline.
    deadline = t0 + budget.max_seconds if budget.max_seconds is not None else None
    stop = Event()

    def run_one(prefix) -> tuple[str, int, np.ndarray | None]:
        colors, L, used, _snap = prefix
        frame = _Frame.fresh(n)
        frame.colors[:depth] = colors
        frame.L[:depth] = L
        frame.used[:depth] = used
        tracker = _Tracker(budget, slice_nodes, deadline=deadline)
        status, nodes = _run_tree(search, frame, r, k, S_gaps, depth, tracker, stop)
        cert = frame.colors.copy() if status == FEASIBLE else None
        return status, nodes, cert

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(run_one, p) for p in prefixes]
        results = []
        for idx, fut in enumerate(futures):
            results.append(fut.result())
            if results[-1][0] == FEASIBLE and all(
                st == INFEASIBLE for st, _, _ in results[:idx]
            ):
                stop.set()  # later subtrees cannot affect the canonical answer
                break
        for fut in futures:
            fut.cancel()

    # Canonical merge: walk prefixes in search order; the totals reproduce the
    # node count of the equivalent sequential search, including the exact
    # point at which a node budget would have cut that search off.
    max_nodes = budget.max_nodes
    subtree_sum = 0
    for idx, (status, nodes, cert) in enumerate(results):
        snap = prefixes[idx][3]
        total_here = snap + subtree_sum + nodes
        if status == BUDGET_EXCEEDED or (max_nodes is not None and total_here > max_nodes):
            capped = total_here if max_nodes is None else min(total_here, max_nodes)
            return FeasibleResult(BUDGET_EXCEEDED, None, capped, time.monotonic() - t0)
        if status == FEASIBLE:
            coloring = Coloring.from_colors(cert.tolist(), r)
            return FeasibleResult(FEASIBLE, coloring, total_here, time.monotonic() - t0)
        subtree_sum += nodes
    total = enum_nodes + subtree_sum
    if max_nodes is not None and total > max_nodes:
        return FeasibleResult(BUDGET_EXCEEDED, None, max_nodes, time.monotonic() - t0)
    return FeasibleResult(INFEASIBLE, None, total, time.monotonic() - t0)


def feasible(S: GapSet, k: int, r: int, n: int,
             budget: SearchBudget = UNLIMITED, workers: int = 1,
             engine: str = "auto") -> FeasibleResult:
    """Search for an r-coloring of [1, n] with no monochromatic k-term chain.

    Returns the lexicographically least avoiding coloring under canonical
    color order (position 1 is color 0, new colors appear in increasing
    order), or infeasible after complete exhaustion, or budget_exceeded.
    """
    if k < 1 or r < 1 or n < 1 or workers < 1:
        raise ValueError("k, r, n and workers must all be >= 1")
    gaps_list = S.enumerate(n - 1)
    gaps = np.asarray(gaps_list, dtype=np.int64)
    if workers > 1 and n >= 2:
        return _feasible_parallel(gaps, gaps_list, n, k, r, budget, workers, engine)
    t0 = time.monotonic()
    search = get_search(engine)
    slice_nodes = _NUMBA_SLICE if resolve_engine(engine) == "numba" else _PYTHON_SLICE
    tracker = _Tracker(budget, slice_nodes)
    frame = _Frame.fresh(n)
    status, nodes = _run_tree(search, frame, r, k, gaps, 0, tracker)
    coloring = Coloring.from_colors(frame.colors.tolist(), r) if status == FEASIBLE else None
    return FeasibleResult(status, coloring, nodes, time.monotonic() - t0)


def compute_f(S: GapSet, k: int, r: int, n_max: int = 1000,
              budget: SearchBudget = UNLIMITED, workers: int = 1,
              engine: str = "auto") -> SolveResult:
    """Least n such that every r-coloring of [1, n] has a k-term chain.

    Iterates n upward from max(k, best registered theorem lower bound); the
    first infeasible n is the value, certified by the avoiding coloring found
    at n - 1.  If the first probe is already infeasible, the run walks
    downward until feasibility is established, so the reported value never
    leans on a registered bound being correct.
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    t0 = time.monotonic()
    spec = S.spec
    total_nodes = 0

    def done(status, value, certificate, feasible_up_to=None) -> SolveResult:
        return SolveResult(
            set_spec=spec, k=k, r=r, status=status, value=value,
            certificate=certificate, nodes=total_nodes,
            elapsed=time.monotonic() - t0, feasible_up_to=feasible_up_to,
        )

    def probe(n: int) -> FeasibleResult:
        nonlocal total_nodes
        nodes_left = None
        if budget.max_nodes is not None:
            nodes_left = budget.max_nodes - total_nodes
            if nodes_left <= 0:
                return FeasibleResult(BUDGET_EXCEEDED, None, 0, 0.0)
        seconds_left = None
        if budget.max_seconds is not None:
            seconds_left = budget.max_seconds - (time.monotonic() - t0)
            if seconds_left <= 0:
                return FeasibleResult(BUDGET_EXCEEDED, None, 0, 0.0)
        sub_budget = SearchBudget(max_nodes=nodes_left, max_seconds=seconds_left)
        res = feasible(S, k, r, n, budget=sub_budget, workers=workers, engine=engine)
        total_nodes += res.nodes
        return res

    # Start at the best theorem-backed lower bound (never a conjecture); the
    # down-walk below keeps the result correct even if a bound were wrong.
    start = min(max(k, formulas.theorem_lower_bound(S, k, r) or 1, 1), n_max)

    last_feasible: Coloring | None = None
    last_feasible_n: int | None = None
    n = start
    while n <= n_max:
        res = probe(n)
        if res.status == BUDGET_EXCEEDED:
            return done(TIMEOUT, None, None, feasible_up_to=last_feasible_n)
        if res.status == FEASIBLE:
            last_feasible, last_feasible_n = res.coloring, n
            n += 1
            continue
        # Infeasible at n: certify by establishing feasibility at n - 1,
        # walking down when the start bound overshot the true value.
        while n > 1 and last_feasible_n != n - 1:
            down = probe(n - 1)
            if down.status == BUDGET_EXCEEDED:
                return done(TIMEOUT, None, None, feasible_up_to=last_feasible_n)
            if down.status == FEASIBLE:
                last_feasible, last_feasible_n = down.coloring, n - 1
                break
            n -= 1
        return done(EXACT, n, last_feasible if n > 1 else None)
    return done(NOT_FOUND_UP_TO, None, None, feasible_up_to=last_feasible_n)


def verify_certificate(result: SolveResult, S: GapSet, k: int, r: int,
                       engine: str = "auto") -> bool:
    """Re-check an exact result: certificate avoids, and n = value exhausts.

    Runs a fresh feasibility search at n = value, so cost matches the
    original exhaustion.
    """
    if result.status != EXACT:
        raise ValueError("verify_certificate requires an exact result")
    if result.value is None or result.value < 1:
        return False
    if result.value == 1:
        if result.certificate is not None:
            return False
    else:
        cert = result.certificate
        if cert is None or cert.n != result.value - 1 or cert.r != r:
            return False
        if has_k_term(cert, S, k):
            return False
    fresh = feasible(S, k, r, result.value, engine=engine)
    return fresh.status == INFEASIBLE
