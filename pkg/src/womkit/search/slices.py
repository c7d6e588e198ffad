"""Constant-weight state sets and their domination structure.

A weight slice E_q(n,i) is the set of q-ary length-n states of l1 weight
exactly i, kept in lexicographic order.  The searches over slices work on
bitmask encodings built here: for each state of weight i, the mask of
weight-(i-1) states it dominates.  A weight-i state dominates exactly the
states obtained by decrementing one of its nonzero cells, which keeps the
mask construction linear in n per state.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..core import State, leq

__all__ = ["WeightSlice", "enumerate_slice", "adjacency_masks", "domination_masks", "root_orbits"]


@dataclass(frozen=True)
class WeightSlice:
    """E_q(n,i): all q-ary length-n states of weight i, lex sorted."""

    q: int
    n: int
    i: int
    states: tuple[State, ...]

    def __len__(self) -> int:
        return len(self.states)

    def index_of(self) -> dict[State, int]:
        return {s: k for k, s in enumerate(self.states)}


def enumerate_slice(q: int, n: int, i: int) -> WeightSlice:
    """Build E_q(n,i). Empty when i exceeds the maximum weight n(q-1)."""
    if q < 2 or n < 1 or i < 0:
        raise ValueError(f"bad slice shape q={q}, n={n}, i={i}")
    states = tuple(s for s in product(range(q), repeat=n) if sum(s) == i)
    return WeightSlice(q, n, i, states)


def adjacency_masks(upper: WeightSlice, lower: WeightSlice) -> list[int]:
    """For consecutive slices, the mask of lower states each upper state covers.

    x <= y with weight(x) = weight(y) - 1 forces x = y minus one unit in a
    single cell, so the dominated set is enumerated directly.
    """
    assert upper.i == lower.i + 1 and upper.q == lower.q and upper.n == lower.n
    index = lower.index_of()
    masks = []
    for y in upper.states:
        m = 0
        for j, c in enumerate(y):
            if c > 0:
                x = y[:j] + (c - 1,) + y[j + 1 :]
                m |= 1 << index[x]
        masks.append(m)
    return masks


def domination_masks(states: tuple[State, ...], universe: tuple[State, ...]) -> list[int]:
    """Generic covering masks: which universe states each state dominates."""
    masks = []
    for y in states:
        m = 0
        for b, x in enumerate(universe):
            if leq(x, y):
                m |= 1 << b
        masks.append(m)
    return masks


def root_orbits(upper: WeightSlice, lower: WeightSlice) -> tuple[int, list[list[int]]]:
    """Symmetry orbits of the candidates covering the first lower state.

    Any cover must dominate the lex-least state x0 of the lower slice; its
    candidate dominators are x0 plus one unit in some cell j, and cells
    holding equal values in x0 are interchangeable by a coordinate
    permutation fixing both slices and x0.  Branching once per orbit at the
    root is therefore lossless.  Returns (root_element, orbit groups), each
    group a list of candidate indices sharing the incremented cell value.
    """
    x0 = lower.states[0]
    index = {s: k for k, s in enumerate(upper.states)}
    groups: dict[int, list[int]] = {}
    for j, c in enumerate(x0):
        if c <= upper.q - 2:
            y = x0[:j] + (c + 1,) + x0[j + 1 :]
            if y in index:
                groups.setdefault(c, []).append(index[y])
    ordered = [sorted(g) for _, g in sorted(groups.items())]
    return 0, ordered
