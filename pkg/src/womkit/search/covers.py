"""Minimum covering-class sizes and the cardinality bounds they induce.

B(q,n,i) = floor(|E_q(n,i)| / min |Y|) bounds the number of disjoint
covering classes a weight slice can host, since classes must be disjoint
and each at least as large as the smallest covering class.  The binary
closed form replaces min |Y| by its density lower bound ceil(C(n,i-1)/i).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from ..core import State
from ..errors import BudgetExhausted, Infeasible
from . import kernel
from .slices import adjacency_masks, enumerate_slice, root_orbits

__all__ = ["CoverSearch", "min_cover_search", "min_class_size", "bound_B", "bound_closed_form"]


@dataclass(frozen=True)
class CoverSearch:
    """Outcome of one minimum-cover search over a weight slice."""

    q: int
    n: int
    i: int
    size: int
    witness: tuple[State, ...]
    exact: bool
    lower_bound: int
    nodes: int


# Budget for the recursive lower-bound chain; small and fixed so results
# never depend on what was searched before.
_CHAIN_BUDGET = 2_000_000

_chain_cache: dict[tuple[int, int], int] = {}


def _chain_lower_bound(n: int, i: int) -> int:
    """Certified binary lower bound from the next smaller slice.

    Every cell of a binary cover of E(n,i-1) lies in at least
    min|Y|(n-1,i-1) members once restricted to the states through it, so
    min|Y|(n,i) >= ceil(n/i * min|Y|(n-1,i-1)).  The inner instance runs
    under a fixed small budget; if it stays unproven its own certified
    lower bound is used instead, which keeps the inequality sound.
    """
    if i < 2 or n <= i:
        return 0
    key = (n - 1, i - 1)
    inner = _chain_cache.get(key)
    if inner is None:
        result = min_cover_search(2, n - 1, i - 1, _CHAIN_BUDGET)
        inner = result.size if result.exact else result.lower_bound
        _chain_cache[key] = inner
    return -(-n * inner // i)


def min_cover_search(q: int, n: int, i: int, budget: int | None = None) -> CoverSearch:
    """Smallest class of weight-i states covering the weight-(i-1) slice.

    When the budget runs out, ``size`` is the best cover found (an upper
    bound), ``lower_bound`` the best certified bound, and ``exact`` is
    False.
    """
    if not 1 <= i <= n * (q - 1):
        raise Infeasible(f"no covering class exists for q={q}, n={n}, i={i}")
    upper = enumerate_slice(q, n, i)
    lower = enumerate_slice(q, n, i - 1)
    masks = adjacency_masks(upper, lower)
    element_candidates: list[list[int]] = [[] for _ in lower.states]
    for v, m in enumerate(masks):
        rest = m
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            element_candidates[u].append(v)
    root_element, groups = root_orbits(upper, lower)
    assert root_element == 0
    known_lb = _chain_lower_bound(n, i) if q == 2 else 0
    lb, size, cover, proven, nodes = kernel.min_cover(
        masks,
        len(lower.states),
        element_candidates,
        kernel.cover_budget(budget),
        groups,
        known_lb,
    )
    if cover is None:
        raise Infeasible(f"slice E_{q}({n},{i}) cannot cover its predecessor")
    witness = tuple(sorted(upper.states[v] for v in cover))
    return CoverSearch(q, n, i, size, witness, proven, lb, nodes)


def min_class_size(q: int, n: int, i: int, budget: int | None = None) -> int:
    """Exact minimum covering-class cardinality."""
    result = min_cover_search(q, n, i, budget)
    if not result.exact:
        raise BudgetExhausted(
            f"min_class_size(q={q}, n={n}, i={i}) unsettled in "
            f"[{result.lower_bound}, {result.size}] after {result.nodes} nodes",
            best=result,
            nodes=result.nodes,
        )
    return result.size


def bound_B(q: int, n: int, i: int, budget: int | None = None) -> int:
    """floor(|E_q(n,i)| / min class size).

    An unfinished cover search still settles the bound when the floor is
    constant across the remaining [lower_bound, best_found] interval.
    """
    result = min_cover_search(q, n, i, budget)
    slice_size = len(enumerate_slice(q, n, i).states)
    hi = slice_size // result.lower_bound
    lo = slice_size // result.size
    if result.exact or hi == lo:
        return lo
    raise BudgetExhausted(
        f"bound_B(q={q}, n={n}, i={i}) unsettled in [{lo}, {hi}] after {result.nodes} nodes",
        best=result,
        nodes=result.nodes,
    )


def bound_closed_form(n: int, i: int) -> int:
    """Binary closed form: floor(C(n,i) / ceil(C(n,i-1)/i))."""
    if not 1 <= i <= n:
        raise Infeasible(f"closed-form bound needs 1 <= i <= n, got n={n}, i={i}")
    return comb(n, i) // -(-comb(n, i - 1) // i)
