"""Suitable partitions of weight slices and the codes they induce.

A suitable partition cuts part of a weight slice into disjoint classes
that each cover the whole previous slice.  Its cardinality is the number
of messages a generation can carry, so the searches here maximise it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain

from ..core import State, TableCode, leq, verify_wom
from ..errors import BudgetExhausted, Infeasible, NoSuchReorganization, TooManyWrites
from . import kernel
from .covers import min_cover_search
from .slices import WeightSlice, adjacency_masks, domination_masks, enumerate_slice

__all__ = [
    "Partition",
    "PartitionResult",
    "max_partition",
    "greedy_laminar",
    "reorganize_merged_generation",
]


@dataclass(frozen=True)
class Partition:
    """Disjoint classes drawn from one weight slice.

    The union may be a strict subset of the slice.  Covering is a
    property of each class against the previous slice and is checked by
    ``is_suitable``, not at construction, so partial search states can be
    represented too.
    """

    slice: WeightSlice
    classes: tuple[tuple[State, ...], ...]

    def __post_init__(self) -> None:
        member = set(self.slice.states)
        seen: set[State] = set()
        for c, states in enumerate(self.classes):
            if not states:
                raise ValueError(f"class {c} is empty")
            for s in states:
                if s not in member:
                    raise ValueError(f"class {c} contains {s}, not in the slice")
                if s in seen:
                    raise ValueError(f"state {s} appears in two classes")
                seen.add(s)

    @property
    def cardinality(self) -> int:
        return len(self.classes)

    def is_suitable(self) -> bool:
        """True when every class covers the whole previous slice."""
        prior = enumerate_slice(self.slice.q, self.slice.n, self.slice.i - 1)
        return all(
            any(leq(x, y) for y in states)
            for states in self.classes
            for x in prior.states
        )


@dataclass(frozen=True)
class PartitionResult:
    """Best suitable partition found, with its optimality status."""

    partition: Partition
    exact: bool
    nodes: int


def _classes_from_assignment(
    slice_: WeightSlice, assignment: list[int]
) -> tuple[tuple[State, ...], ...]:
    count = max(assignment) + 1
    grouped: list[list[State]] = [[] for _ in range(count)]
    for v, c in enumerate(assignment):
        if c >= 0:
            grouped[c].append(slice_.states[v])
    return tuple(tuple(g) for g in grouped)


def max_partition(q: int, n: int, i: int, budget: int | None = None) -> PartitionResult:
    """Largest suitable partition of E_q(n,i), searched top-down.

    The upper bound comes from the covering search: k disjoint classes
    need k * min|Y| states.  Binary slices also obey k <= n - i + 1.
    Cardinalities are tried descending from the bound, so the first
    success is the answer; it is exact when every refuted cardinality
    above it was proven infeasible rather than abandoned.
    """
    if not 1 <= i <= n * (q - 1):
        raise Infeasible(f"no suitable partition exists for q={q}, n={n}, i={i}")
    upper = enumerate_slice(q, n, i)
    lower = enumerate_slice(q, n, i - 1)
    cover = min_cover_search(q, n, i, budget)
    nodes = cover.nodes
    k_hi = len(upper.states) // cover.lower_bound
    if q == 2:
        k_hi = min(k_hi, n - i + 1)
    masks = adjacency_masks(upper, lower)
    exact = True
    for k in range(k_hi, 0, -1):
        found, assignment, proven, spent = kernel.partition_search(
            masks, len(lower.states), k, kernel.partition_budget(budget)
        )
        nodes += spent
        if found:
            partition = Partition(upper, _classes_from_assignment(upper, assignment))
            return PartitionResult(partition, exact, nodes)
        if not proven:
            exact = False
    raise BudgetExhausted(
        f"max_partition(q={q}, n={n}, i={i}) found no partition within budget",
        nodes=nodes,
    )


def greedy_laminar(q: int, n: int, t: int, budget: int | None = None) -> TableCode:
    """Laminar code from per-generation maximum suitable partitions.

    Generation i uses the largest suitable partition of E_q(n,i), so the
    construction is greedy in the write count: every generation is as
    wide as the slice allows, independent of the others.
    """
    if t < 1:
        raise ValueError(f"need at least one generation, got t={t}")
    if t > n * (q - 1):
        raise TooManyWrites(f"n={n} cells over alphabet q={q} support at most {n * (q - 1)} writes")
    generations = [max_partition(q, n, i, budget).partition.classes for i in range(1, t + 1)]
    return TableCode(q, n, generations)


def _iter_partitions(
    states: list[State],
    universe: list[State],
    k: int,
    counter: list[int],
    budget: int,
):
    """Yield every way to cut ``states`` into k disjoint covering classes.

    States are processed by descending coverage power so the scarce
    heavy states anchor classes before the light ones distribute, and a
    branch dies when the remaining states' total coverage cannot meet
    what the open and still-unopened classes need.  Choices follow the
    canonical order (existing classes ascending, then a new class, then
    leaving the state unused); all solutions are enumerated since a
    chained reorganization may reject a cut for reasons invisible here.
    Unassigned states are the yield's second component.
    """
    order = sorted(states, key=lambda s: (-sum(leq(x, s) for x in universe), s))
    masks = domination_masks(order, universe)
    bits = len(universe)
    full = (1 << bits) - 1
    V = len(order)
    suffix = [0] * (V + 1)
    supply = [0] * (V + 1)
    for v in range(V - 1, -1, -1):
        suffix[v] = suffix[v + 1] | masks[v]
        supply[v] = supply[v + 1] + masks[v].bit_count()
    assignment = [-1] * V
    covered: list[int] = []

    def assign(v: int, opened: int):
        counter[0] += 1
        if counter[0] > budget:
            raise BudgetExhausted("reorganization search budget exhausted", nodes=counter[0])
        if v == V:
            if opened == k and all(c == full for c in covered):
                classes = _classes_from_assignment_states(order, assignment, k)
                unused = sorted(order[u] for u in range(V) if assignment[u] < 0)
                yield classes, unused
            return
        if opened + (V - v) < k:
            return
        demand = sum((full & ~c).bit_count() for c in covered) + bits * (k - opened)
        if demand > supply[v]:
            return
        for c in range(opened):
            if (covered[c] | masks[v] | suffix[v + 1]) != full:
                continue
            assignment[v] = c
            saved = covered[c]
            covered[c] = saved | masks[v]
            yield from assign(v + 1, opened)
            covered[c] = saved
            assignment[v] = -1
        if opened < k:
            assignment[v] = opened
            covered.append(masks[v])
            yield from assign(v + 1, opened + 1)
            covered.pop()
            assignment[v] = -1
        feasible = all((covered[c] | suffix[v + 1]) == full for c in range(opened))
        if feasible:
            yield from assign(v + 1, opened)

    yield from assign(0, 0)


def _classes_from_assignment_states(
    states: list[State], assignment: list[int], k: int
) -> tuple[tuple[State, ...], ...]:
    grouped: list[list[State]] = [[] for _ in range(k)]
    for v, c in enumerate(assignment):
        if c >= 0:
            grouped[c].append(states[v])
    return tuple(tuple(sorted(g)) for g in grouped)


def _chain_stages(
    remaining: list[State],
    universe: list[State],
    targets: tuple[int, ...],
    counter: list[int],
    budget: int,
):
    """Yield chained stage cuts where stage s+1 must cover stage s."""
    k, rest = targets[0], targets[1:]
    for classes, unused in _iter_partitions(remaining, universe, k, counter, budget):
        if not rest:
            yield [classes]
            continue
        next_universe = sorted(chain.from_iterable(classes))
        for tail in _chain_stages(unused, next_universe, rest, counter, budget):
            yield [classes, *tail]


def reorganize_merged_generation(
    code: TableCode,
    i: int,
    target_classes: int | tuple[int, ...] | list[int],
    budget: int | None = None,
) -> TableCode:
    """Recut generation i (or a run starting there) into new classes.

    An integer target recuts the states of generation i alone; a sequence
    of length r recuts the pooled states of generations i..i+r-1 into r
    consecutive generations with the given class counts.  Each candidate
    is checked as part of the whole code, and must leave it valid and
    decodable, since a recut changes the image later generations must
    cover and can move a state into a conflicting generation.  States
    the recut leaves unused are dropped from the code.
    """
    targets = (target_classes,) if isinstance(target_classes, int) else tuple(target_classes)
    if not targets or any(k < 1 for k in targets):
        raise ValueError(f"class counts must be positive, got {target_classes}")
    span = len(targets)
    t = code.params.t
    if not 1 <= i <= t - span + 1:
        raise ValueError(f"generations {i}..{i + span - 1} out of range for t={t}")
    pooled = sorted(
        {s for g in range(i, i + span) for cls in code.classes(g) for s in cls}
    )
    universe = list(code.image(i - 1))
    counter = [0]
    limit = kernel.partition_budget(budget)
    found_any = False
    for stages in _chain_stages(pooled, universe, targets, counter, limit):
        found_any = True
        generations = (
            [code.classes(g) for g in range(1, i)]
            + stages
            + [code.classes(g) for g in range(i + span, t + 1)]
        )
        candidate = TableCode(code.params.q, code.params.n, generations)
        verdict = verify_wom(candidate).properties
        if verdict.is_valid and verdict.is_decodable:
            return candidate
    detail = "no recut found" if not found_any else "no recut keeps the code valid"
    raise NoSuchReorganization(
        f"cannot recut generations {i}..{i + span - 1} into {targets}: {detail}"
    )
