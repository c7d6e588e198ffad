"""Pure-Python search kernels.

Two exact branch-and-bound searches over bitmask-encoded covering problems:
the smallest covering class (set cover) and the existence of k disjoint
covering classes (partition search).  This module is the reference
semantics; ``_speedups.pyx`` is a transliteration that must traverse the
identical tree, so any change here must keep orderings, pruning rules, and
node accounting bit-for-bit compatible.

Masks are Python ints over universe bit positions.  A node is one committed
assignment (taking a candidate into the cover, or binding a state to a
class/new-class/unused choice); budget exhaustion aborts the search and is
reported through the ``proven`` flag.
"""

from __future__ import annotations

__all__ = ["greedy_cover", "min_cover", "partition_search"]


def greedy_cover(masks: list[int], universe_size: int) -> list[int] | None:
    """Deterministic greedy cover: max new coverage, ties to lowest index."""
    full = (1 << universe_size) - 1
    covered = 0
    chosen: list[int] = []
    while covered != full:
        best_gain = 0
        best_v = -1
        for v, m in enumerate(masks):
            gain = (m & ~covered & full).bit_count()
            if gain > best_gain:
                best_gain = gain
                best_v = v
        if best_v < 0:
            return None
        chosen.append(best_v)
        covered |= masks[best_v]
    return chosen


def min_cover(
    masks: list[int],
    universe_size: int,
    element_candidates: list[list[int]],
    budget: int,
    root_groups: list[list[int]] | None = None,
    known_lb: int = 0,
):
    """Exact minimum cover by element-branching branch and bound.

    Branches on the uncovered element with the fewest live candidates,
    trying candidates by descending fresh coverage (ties to lowest index)
    and excluding each tried candidate from its later siblings.  Prunes a
    node when depth + ceil(uncovered / best live gain) cannot beat the
    incumbent.  ``root_groups``, when given, are symmetry orbits of the
    candidates of element 0: the root branches once per orbit and excludes
    the whole orbit afterwards.  ``known_lb`` is a caller-certified lower
    bound; an incumbent reaching it ends the search with an optimality
    proof, which is what makes the dense instances tractable.

    Returns (lower_bound, best_size, best_cover, proven, nodes).  When
    proven, lower_bound == best_size and best_cover is optimal; otherwise
    lower_bound is the best certified bound and best_cover the incumbent.
    """
    V = len(masks)
    full = (1 << universe_size) - 1
    if universe_size == 0:
        return 0, 0, [], True, 0
    seed = greedy_cover(masks, universe_size)
    if seed is None:
        return 0, 0, None, True, 0
    best_size = len(seed)
    best_cover = list(seed)
    max_gain = max(m.bit_count() for m in masks)
    lb = max(-(-universe_size // max_gain), known_lb)
    if best_size == lb:
        return best_size, best_size, best_cover, True, 0

    excluded = bytearray(V)
    chosen: list[int] = []
    nodes = 0
    exhausted = False
    solved = False

    def expand(depth: int, covered: int):
        nonlocal best_size, best_cover, nodes, exhausted, solved
        if covered == full:
            if depth < best_size:
                best_size = depth
                best_cover = chosen.copy()
                if best_size == lb:
                    solved = True
            return
        uncov = full & ~covered
        uncount = uncov.bit_count()
        live_gain = 0
        for v in range(V):
            if not excluded[v]:
                g = (masks[v] & uncov).bit_count()
                if g > live_gain:
                    live_gain = g
        if live_gain == 0:
            return
        if depth + -(-uncount // live_gain) >= best_size:
            return
        pick = -1
        pick_cands: list[int] = []
        rest = uncov
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            cands = [v for v in element_candidates[u] if not excluded[v]]
            if not cands:
                return
            if pick < 0 or len(cands) < len(pick_cands):
                pick = u
                pick_cands = cands
        order = sorted(pick_cands, key=lambda v: (-(masks[v] & uncov).bit_count(), v))
        tried: list[int] = []
        for v in order:
            nodes += 1
            if nodes > budget:
                exhausted = True
                break
            chosen.append(v)
            expand(depth + 1, covered | masks[v])
            chosen.pop()
            if solved or exhausted:
                break
            excluded[v] = 1
            tried.append(v)
        for v in tried:
            excluded[v] = 0

    if root_groups:
        groups = sorted(
            (sorted(gr) for gr in root_groups),
            key=lambda g: (-masks[g[0]].bit_count(), g[0]),
        )
        done: list[int] = []
        for group in groups:
            rep = group[0]
            nodes += 1
            if nodes > budget:
                exhausted = True
                break
            chosen.append(rep)
            expand(1, masks[rep])
            chosen.pop()
            if solved or exhausted:
                break
            for v in group:
                excluded[v] = 1
                done.append(v)
        for v in done:
            excluded[v] = 0
    else:
        expand(0, 0)

    proven = solved or not exhausted
    out_lb = best_size if proven else lb
    return out_lb, best_size, best_cover, proven, nodes


def partition_search(dom_masks: list[int], universe_size: int, k: int, budget: int):
    """Search for exactly k disjoint covering classes over the given states.

    States are bound in index order to: an existing class (ascending), a new
    class while fewer than k are open, or unused.  A class is viable only
    while its mask joined with all remaining states' masks can still reach
    the full universe.  The first solution in this order is canonical:
    classes are numbered by their lex-least member.

    Returns (found, assignment, proven, nodes); assignment[v] is the class
    index or -1 for unused.  ``proven`` is False only when the budget ran
    out before either finding a solution or exhausting the tree.
    """
    V = len(dom_masks)
    full = (1 << universe_size) - 1
    if k < 1:
        raise ValueError("k must be at least 1")
    suffix = [0] * (V + 1)
    for v in range(V - 1, -1, -1):
        suffix[v] = suffix[v + 1] | dom_masks[v]
    if suffix[0] & full != full:
        return False, None, True, 0

    assignment = [-1] * V
    cls_mask = [0] * k
    nodes = 0
    exhausted = False
    solution: list[int] | None = None

    def place(v: int, opened: int):
        nonlocal nodes, exhausted, solution
        if opened + (V - v) < k:
            return
        for c in range(opened):
            if (cls_mask[c] | suffix[v]) & full != full:
                return
        if v == V:
            if opened == k:
                solution = assignment.copy()
            return
        m = dom_masks[v]
        for c in range(opened):
            nodes += 1
            if nodes > budget:
                exhausted = True
                return
            saved = cls_mask[c]
            cls_mask[c] = saved | m
            assignment[v] = c
            place(v + 1, opened)
            cls_mask[c] = saved
            assignment[v] = -1
            if solution is not None or exhausted:
                return
        if opened < k:
            nodes += 1
            if nodes > budget:
                exhausted = True
                return
            cls_mask[opened] = m
            assignment[v] = opened
            place(v + 1, opened + 1)
            cls_mask[opened] = 0
            assignment[v] = -1
            if solution is not None or exhausted:
                return
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        place(v + 1, opened)

    place(0, 0)
    found = solution is not None
    return found, solution, found or not exhausted, nodes
