"""Resumable depth-first search kernel over canonical colorings.

One implementation, two call paths: the function below is compiled with numba
when available and also kept callable as plain Python, so both engines share
semantics (branch order, pruning, node counting) by construction.

The search colors positions left to right.  Canonical color order breaks the
color-relabeling symmetry: a position may reuse any color already present or
introduce the single next unused color, which in particular pins position 1
to color 0.  A node is one attempted (position, color) assignment, counted
whether or not the resulting L-value prunes.
"""

from __future__ import annotations

SAT = 1
UNSAT = 0
PAUSED = 2


def _search_impl(n, r, k, gaps, colors, L, used, cand, pos0, i_start, max_new_nodes):
    """Run the DFS until SAT, exhaustion, or a node-slice limit.

    State lives in the caller's arrays so the search can pause and resume:
    colors/L/used hold per-position assignments, cand[i] is the next color to
    try at position i.  Positions below pos0 are a fixed prefix.  Returns
    (status, nodes_done, resume_position).
    """
    nodes = 0
    i = i_start
    while i >= pos0:
        if i == n:
            return SAT, nodes, i
        c = cand[i]
        u = used[i - 1] if i > 0 else 0
        maxc = u if u < r - 1 else r - 1
        if c > maxc:
            i -= 1
            continue
        if nodes >= max_new_nodes:
            return PAUSED, nodes, i
        cand[i] = c + 1
        nodes += 1
        best = 0
        for gi in range(gaps.shape[0]):
            j = i - gaps[gi]
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
    return UNSAT, nodes, i


search_python = _search_impl

try:
    from numba import njit

    search_numba = njit(cache=True, nogil=True)(_search_impl)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    search_numba = None
    HAVE_NUMBA = False


def resolve_engine(engine: str) -> str:
    """Map 'auto' to the best available engine; validate explicit choices."""
    if engine == "auto":
        return "numba" if HAVE_NUMBA else "python"
    if engine == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba engine requested but numba is not importable")
    if engine not in ("numba", "python"):
        raise ValueError(f"unknown engine {engine!r}")
    return engine


def get_search(engine: str):
    return search_numba if resolve_engine(engine) == "numba" else search_python
