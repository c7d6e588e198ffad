"""Explicit suitable-partition constructions.

Each builder assembles a partition from smaller ones (or from nothing)
instead of searching, so cardinalities scale past what the exact search
can reach.  Outputs are plain ``Partition`` values and can be checked
with ``Partition.is_suitable`` like any searched result.
"""

from __future__ import annotations

from typing import Mapping, NamedTuple

from ..core import CodeParams, State, wom_rate
from ..errors import TooManyWrites
from .partitions import Partition, max_partition
from .slices import enumerate_slice

__all__ = [
    "build_singletons",
    "build_prop_recursive",
    "build_prop_doubling",
    "build_prop_qary_two",
    "SingleCellAssignment",
    "single_cell_assignment",
]


def _unit(n: int, j: int, value: int = 1) -> State:
    return tuple(value if p == j else 0 for p in range(n))


def build_singletons(q: int, n: int) -> Partition:
    """Partition E_q(n,1) into the n singleton classes {e_j}.

    Weight-1 states are exactly the unit vectors for every alphabet, so
    the cardinality n is alphabet-independent and is the exact maximum:
    classes must be disjoint and nonempty.
    """
    slice_ = enumerate_slice(q, n, 1)
    classes = tuple((_unit(n, j),) for j in range(n))
    return Partition(slice_, classes)


def _check_input(part: Partition, q: int, n: int, i: int, role: str) -> None:
    s = part.slice
    if (s.q, s.n, s.i) != (q, n, i):
        raise ValueError(
            f"{role} must partition E_{q}({n},{i}), got E_{s.q}({s.n},{s.i})"
        )
    if not part.is_suitable():
        raise ValueError(f"{role} is not a suitable partition")


def build_prop_recursive(
    q: int,
    n: int,
    i: int,
    part_same: Partition,
    part_down: Partition,
    extra: Mapping[int, Partition] | None = None,
) -> Partition:
    """Suitable partition of E_q(n,i) by appending one cell.

    Class k is the union over suffix symbols s of part(s)'s class k with
    s appended, where part(0) partitions E_q(n-1,i) and part(s) must
    partition E_q(n-1,i-s).  Binary codes need only the two positional
    inputs.  For q >= 3 and i >= 3 a new cell can also hold symbols
    above 1, and prior states ending in such a symbol are only dominated
    by members with a matching suffix, so every s up to min(q-1, i-1)
    whose prior slice is nonempty must be supplied through ``extra``.
    The result's cardinality is the minimum over all inputs used.
    """
    if i < 2:
        raise ValueError(f"the recursion needs i >= 2, got i={i}")
    if n < 2:
        raise ValueError(f"the recursion needs n >= 2, got n={n}")
    _check_input(part_same, q, n - 1, i, "part_same")
    _check_input(part_down, q, n - 1, i - 1, "part_down")
    parts: dict[int, Partition] = {0: part_same, 1: part_down}
    extra = dict(extra) if extra else {}
    for s in range(2, min(q - 1, i - 1) + 1):
        prior = enumerate_slice(q, n - 1, i - 1 - s)
        if not prior.states:
            continue
        if s not in extra:
            raise ValueError(
                f"suffix symbol {s} needs a suitable partition of "
                f"E_{q}({n - 1},{i - s}); pass it via extra"
            )
        _check_input(extra[s], q, n - 1, i - s, f"extra[{s}]")
        parts[s] = extra.pop(s)
    if extra:
        stray = sorted(extra)
        raise ValueError(f"extra partitions for unused suffix symbols: {stray}")
    k = min(p.cardinality for p in parts.values())
    classes = tuple(
        tuple(
            sorted(
                y + (s,)
                for s, part in sorted(parts.items())
                for y in part.classes[m]
            )
        )
        for m in range(k)
    )
    return Partition(enumerate_slice(q, n, i), classes)


def build_prop_doubling(n: int, base: Partition) -> Partition:
    """Suitable partition of E_2(2n,2) with 2|base|+1 classes.

    Each base class over the n-cell slice yields two classes over 2n
    cells, one keeping both ones in the same half, one crossing halves;
    the extra class pairs each cell with its opposite, so it exists even
    when the base is empty (n=1 has no weight-2 states at all).
    """
    _check_input(base, 2, n, 2, "base")
    same_half = []
    crossed = []
    for states in base.classes:
        pairs = [[j for j, v in enumerate(s) if v] for s in states]
        same_half.append(
            tuple(
                sorted(
                    [_pair(2 * n, j, k) for j, k in pairs]
                    + [_pair(2 * n, j + n, k + n) for j, k in pairs]
                )
            )
        )
        crossed.append(
            tuple(
                sorted(
                    [_pair(2 * n, j, k + n) for j, k in pairs]
                    + [_pair(2 * n, k, j + n) for j, k in pairs]
                )
            )
        )
    diagonal = tuple(sorted(_pair(2 * n, j, j + n) for j in range(n)))
    classes = tuple(same_half) + tuple(crossed) + (diagonal,)
    return Partition(enumerate_slice(2, 2 * n, 2), classes)


def _pair(n: int, j: int, k: int) -> State:
    return tuple(1 if p in (j, k) else 0 for p in range(n))


def build_prop_qary_two(
    q: int,
    n: int,
    variant: str = "even",
    budget: int | None = None,
) -> Partition:
    """Suitable partition of a q-ary weight-2 slice, q >= 3.

    The even variant takes the best binary partition of E_2(n,2) the
    search finds and appends the class of all states with a single cell
    at 2, which no binary class can contain.  The circular variant works
    on odd length 2n+1: class 0 pairs positions symmetric around the
    centre (the centre pairing with itself as a lone 2), and the other
    2n classes are its circular shifts.
    """
    if q < 3:
        raise ValueError(f"a weight-2 cell value of 2 needs q >= 3, got q={q}")
    if variant == "even":
        if n < 1:
            raise ValueError(f"need n >= 1, got n={n}")
        slice_ = enumerate_slice(q, n, 2)
        binary = max_partition(2, n, 2, budget).partition if n >= 2 else None
        classes = tuple(binary.classes) if binary else ()
        doubles = tuple(_unit(n, j, 2) for j in range(n))
        return Partition(slice_, classes + (doubles,))
    if variant == "circular":
        if n < 0:
            raise ValueError(f"need n >= 0, got n={n}")
        length = 2 * n + 1
        base = [_unit(length, n, 2)] + [
            _pair(length, n - k, n + k) for k in range(1, n + 1)
        ]
        classes = tuple(
            tuple(sorted(tuple(s[(p - shift) % length] for p in range(length)) for s in base))
            for shift in range(length)
        )
        return Partition(enumerate_slice(q, length, 2), classes)
    raise ValueError(f"unknown variant {variant!r}, expected 'even' or 'circular'")


class SingleCellAssignment(NamedTuple):
    """Value ranges splitting one q-level cell across t writes."""

    params: CodeParams
    rate: float
    ranges: tuple[range, ...]


def single_cell_assignment(q: int, t: int) -> SingleCellAssignment:
    """Split the q values of a single cell into t consecutive ranges.

    The product of range sizes is the message-count product, and an even
    split maximises a product of integers with a fixed sum, so sizes
    differ by at most one with the larger ones first.
    """
    if t < 1:
        raise ValueError(f"need at least one write, got t={t}")
    if t > q:
        raise TooManyWrites(f"one cell with q={q} levels supports at most {q} writes")
    small, bulge = divmod(q, t)
    sizes = tuple(small + 1 if w < bulge else small for w in range(t))
    ranges = []
    start = 0
    for size in sizes:
        ranges.append(range(start, start + size))
        start += size
    params = CodeParams(q=q, n=1, t=t, M=sizes)
    return SingleCellAssignment(params, wom_rate(params).total, tuple(ranges))
