"""Exact computation and verification toolkit for monochromatic diffsequence
thresholds f(S,k;r) over prescribed gap sets, with certificate colorings,
named blocking witnesses, formula bounds, and prime-chain search."""

__version__ = "0.1.0"

from .coloring import (
    ChainState,
    Coloring,
    DiffseqWitness,
    brute_force_longest,
    has_k_term,
    longest_mono_diffseq,
)
from .formulas import Bounds, bounds_for, fib, g, scaled_value, theorem_lower_bound
from .gapsets import GapSet, GapSetError, GapSpecError, make_set
from .primechain import (
    OffsetSystem,
    PrimeChain,
    find_chain,
    is_admissible_small_primes,
    is_p_admissible,
    is_prime,
    sieve,
    verify_chain,
)
from .solver import (
    BUDGET_EXCEEDED,
    EXACT,
    FEASIBLE,
    INFEASIBLE,
    NOT_FOUND_UP_TO,
    TIMEOUT,
    FeasibleResult,
    SearchBudget,
    SolveResult,
    compute_f,
    feasible,
    verify_certificate,
)
from .witnesses import (
    PatternColoring,
    RestrictedColoring,
    WitnessClaim,
    expand,
    named_witness,
    product_coloring,
    subset_elements_coloring,
)

__all__ = [
    "__version__",
    "BUDGET_EXCEEDED",
    "Bounds",
    "ChainState",
    "Coloring",
    "DiffseqWitness",
    "EXACT",
    "FEASIBLE",
    "FeasibleResult",
    "GapSet",
    "GapSetError",
    "GapSpecError",
    "INFEASIBLE",
    "NOT_FOUND_UP_TO",
    "OffsetSystem",
    "PatternColoring",
    "PrimeChain",
    "RestrictedColoring",
    "SearchBudget",
    "SolveResult",
    "TIMEOUT",
    "WitnessClaim",
    "bounds_for",
    "brute_force_longest",
    "compute_f",
    "expand",
    "feasible",
    "fib",
    "find_chain",
    "g",
    "has_k_term",
    "is_admissible_small_primes",
    "is_p_admissible",
    "is_prime",
    "longest_mono_diffseq",
    "make_set",
    "named_witness",
    "product_coloring",
    "scaled_value",
    "sieve",
    "subset_elements_coloring",
    "theorem_lower_bound",
    "verify_certificate",
    "verify_chain",
]
