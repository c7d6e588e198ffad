"""Data model for write-once memory codes given by explicit class tables.

A memory state is a plain tuple of ints, one per cell, each in ``0..q-1``.
Cell values only ever grow: a later state must dominate an earlier one
componentwise.  A t-write code assigns to each write index i (its
"generation", 1-based) an ordered list of codeword classes, one class per
message, and decoding maps a state back to the index of the class that
contains it.  This module holds the passive data types plus the property
checkers (validity, decodability, synchronicity, laminarity); the write and
read procedures live in :mod:`womkit.codec`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import SchemaError

State = tuple[int, ...]

__all__ = [
    "State",
    "CodeParams",
    "TableCode",
    "CodeProperties",
    "PropertyReport",
    "CoveringFailure",
    "ClassOverlap",
    "DecodeConflict",
    "ImageOverlap",
    "LaminarOverlap",
    "RateBreakdown",
    "verify_wom",
    "check_decodable",
    "check_synchronous",
    "check_laminar",
    "check_fixed_rate",
    "contains_all_zero",
    "wom_rate",
    "weight",
    "leq",
    "parse_state",
    "format_state",
    "zero_state",
]


# --- states ----------------------------------------------------------------


def weight(state: State) -> int:
    """Sum of cell values (the l1 weight; for q=2 the Hamming weight)."""
    return sum(state)


def leq(a: State, b: State) -> bool:
    """Componentwise a <= b. States of different lengths do not compare."""
    if len(a) != len(b):
        raise ValueError(f"cannot compare states of lengths {len(a)} and {len(b)}")
    return all(x <= y for x, y in zip(a, b))


def zero_state(n: int) -> State:
    return (0,) * n

def parse_state(text: str, q: int) -> State:
    """Parse a state from a digit string (q <= 10) or comma-separated ints.

    Cell 1 is the leftmost character / first entry.
    """
    text = text.strip()
    if not text:
        raise SchemaError("empty state string")
    if "," in text:
        parts = text.split(",")
    elif q <= 10:
        parts = list(text)
    else:
        raise SchemaError("states for q > 10 must be comma-separated")
    try:
        cells = tuple(int(p) for p in parts)
    except ValueError:
        raise SchemaError(f"state {text!r} contains a non-integer cell") from None
    for c in cells:
        if not 0 <= c < q:
            raise SchemaError(f"cell value {c} outside 0..{q - 1} in state {text!r}")
    return cells


def format_state(state: State, q: int) -> str:
    """Inverse of :func:`parse_state`: digit string for q <= 10, else CSV."""
    if q <= 10:
        return "".join(str(c) for c in state)
    return ",".join(str(c) for c in state)


def _check_state(cells: Iterable[int], q: int, n: int, where: str) -> State:
    state = tuple(cells)
    if len(state) != n:
        raise SchemaError(f"{where}: state {state} has length {len(state)}, expected {n}")
    for c in state:
        if not isinstance(c, int) or isinstance(c, bool):
            raise SchemaError(f"{where}: cell {c!r} is not an integer")
        if not 0 <= c < q:
            raise SchemaError(f"{where}: cell value {c} outside 0..{q - 1}")
    return state


# --- parameters ------------------------------------------------------------


@dataclass(frozen=True)
class CodeParams:
    """Shape of a t-write code: q-ary cells, block length n, class counts M."""

    q: int
    n: int
    t: int
    M: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise SchemaError(f"q must be at least 2, got {self.q}")
        if self.n < 1:
            raise SchemaError(f"n must be at least 1, got {self.n}")
        if self.t < 1:
            raise SchemaError(f"t must be at least 1, got {self.t}")
        object.__setattr__(self, "M", tuple(self.M))
        if len(self.M) != self.t:
            raise SchemaError(f"expected {self.t} generation sizes, got {len(self.M)}")
        for m in self.M:
            if not isinstance(m, int) or m < 1:
                raise SchemaError(f"generation sizes must be positive ints, got {m!r}")

    def __str__(self) -> str:
        body = f"[{self.n},{self.t}:{','.join(str(m) for m in self.M)}]"
        return body if self.q == 2 else f"{body}_{self.q}"


# --- class tables ----------------------------------------------------------


class TableCode:
    """A code given extensionally: one ordered class list per generation.

    ``generations[i-1][m-1]`` is the class (a lex-sorted tuple of states) of
    message m at write i.  Construction validates structure only (shapes,
    alphabet, nonemptiness); the covering condition and the property
    hierarchy are checked by :func:`verify_wom`, so deliberately broken
    tables can still be built and examined.
    """

    def __init__(self, q: int, n: int, generations: Sequence[Sequence[Iterable[int]]]):
        gens = []
        for gi, classes in enumerate(generations, start=1):
            norm = []
            for mi, cls in enumerate(classes, start=1):
                states = sorted({_check_state(s, q, n, f"generation {gi}, class {mi}") for s in cls})
                if not states:
                    raise SchemaError(f"generation {gi}, class {mi} is empty")
                norm.append(tuple(states))
            if not norm:
                raise SchemaError(f"generation {gi} has no classes")
            gens.append(tuple(norm))
        if not gens:
            raise SchemaError("a code needs at least one generation")
        self.q = q
        self.n = n
        self.generations: tuple[tuple[tuple[State, ...], ...], ...] = tuple(gens)

    @cached_property
    def params(self) -> CodeParams:
        return CodeParams(self.q, self.n, len(self.generations), tuple(len(g) for g in self.generations))

    @property
    def t(self) -> int:
        return len(self.generations)

    def classes(self, i: int) -> tuple[tuple[State, ...], ...]:
        """Ordered classes of generation i (1-based)."""
        if not 1 <= i <= self.t:
            raise ValueError(f"generation {i} outside 1..{self.t}")
        return self.generations[i - 1]

    def class_states(self, i: int, m: int) -> tuple[State, ...]:
        classes = self.classes(i)
        if not 1 <= m <= len(classes):
            raise ValueError(f"message {m} outside 1..{len(classes)} at generation {i}")
        return classes[m - 1]

    def image(self, i: int) -> tuple[State, ...]:
        """Union of generation-i classes, lex sorted. Image(E_i); i=0 is {0^n}."""
        if i == 0:
            return (zero_state(self.n),)
        return self._images[i - 1]

    @cached_property
    def _images(self) -> tuple[tuple[State, ...], ...]:
        return tuple(tuple(sorted({s for cls in gen for s in cls})) for gen in self.generations)

    @cached_property
    def _image_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(img) for img in self._images)

    def in_image(self, i: int, state: State) -> bool:
        if i == 0:
            return state == zero_state(self.n)
        return state in self._image_sets[i - 1]

    @cached_property
    def _message_maps(self) -> tuple[dict, ...]:
        maps = []
        for gen in self.generations:
            lookup: dict[State, int] = {}
            for mi, cls in enumerate(gen, start=1):
                for s in cls:
                    lookup.setdefault(s, mi)
            maps.append(lookup)
        return tuple(maps)

    def message_of(self, i: int, state: State) -> Optional[int]:
        """Message whose generation-i class contains the state, else None."""
        return self._message_maps[i - 1].get(tuple(state))

    def weight_set(self, i: int) -> frozenset:
        return frozenset(weight(s) for s in self.image(i))

    def _key(self):
        return (self.q, self.n, self.generations)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TableCode):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"TableCode({self.params})"


# --- properties ------------------------------------------------------------


@dataclass(frozen=True)
class CodeProperties:
    """Verdicts of the property hierarchy for one code.

    ``is_laminar`` implies ``is_synchronous`` implies ``is_decodable``;
    :func:`verify_wom` asserts the chain on every report it builds.
    """

    is_valid: bool
    is_decodable: bool
    is_synchronous: bool
    is_laminar: bool
    is_fixed_rate: bool
    contains_all_zero: bool


class CoveringFailure(NamedTuple):
    generation: int
    state: State
    message: int


class ClassOverlap(NamedTuple):
    generation: int
    message_a: int
    message_b: int
    state: State


class DecodeConflict(NamedTuple):
    state: State
    generation_a: int
    message_a: int
    generation_b: int
    message_b: int


class ImageOverlap(NamedTuple):
    state: State
    generation_a: int
    generation_b: int


class LaminarOverlap(NamedTuple):
    weight: int
    generation_a: int
    generation_b: int


@dataclass(frozen=True)
class PropertyReport:
    properties: CodeProperties
    covering_failure: Optional[CoveringFailure]
    class_overlap: Optional[ClassOverlap]
    decode_conflict: Optional[DecodeConflict]
    image_overlap: Optional[ImageOverlap]
    laminar_overlap: Optional[LaminarOverlap]


def _first_class_overlap(code: TableCode) -> Optional[ClassOverlap]:
    for i in range(1, code.t + 1):
        classes = code.classes(i)
        seen: dict[State, int] = {}
        for mi, cls in enumerate(classes, start=1):
            for s in cls:
                if s in seen:
                    return ClassOverlap(i, seen[s], mi, s)
            for s in cls:
                seen[s] = mi
    return None


def _first_covering_failure(code: TableCode) -> Optional[CoveringFailure]:
    # Prior states are tried largest first: the heaviest survivors are the
    # hardest to dominate, so failures surface at the top of the image.
    for i in range(2, code.t + 1):
        prior = sorted(code.image(i - 1), reverse=True)
        for b in prior:
            for m in range(1, len(code.classes(i)) + 1):
                if not any(leq(b, y) for y in code.class_states(i, m)):
                    return CoveringFailure(i, b, m)
    return None


def check_decodable(code: TableCode) -> tuple[bool, Optional[DecodeConflict]]:
    """A state reached in two different generations must carry one message."""
    seen: dict[State, list[tuple[int, int]]] = {}
    for i in range(1, code.t + 1):
        for mi, cls in enumerate(code.classes(i), start=1):
            for s in cls:
                for gi, gm in seen.get(s, ()):
                    if gi != i and gm != mi:
                        return False, DecodeConflict(s, gi, gm, i, mi)
                seen.setdefault(s, []).append((i, mi))
    return True, None


def check_synchronous(code: TableCode) -> tuple[bool, Optional[ImageOverlap]]:
    """Generation images must be pairwise disjoint."""
    seen: dict[State, int] = {}
    for i in range(1, code.t + 1):
        for s in code.image(i):
            if s in seen:
                return False, ImageOverlap(s, seen[s], i)
        for s in code.image(i):
            seen[s] = i
    return True, None


def check_laminar(code: TableCode) -> tuple[bool, Optional[LaminarOverlap]]:
    """Generation weight sets must be pairwise disjoint."""
    seen: dict[int, int] = {}
    for i in range(1, code.t + 1):
        for w in sorted(code.weight_set(i)):
            if w in seen:
                return False, LaminarOverlap(w, seen[w], i)
        for w in code.weight_set(i):
            seen.setdefault(w, i)
    return True, None


def check_fixed_rate(params: CodeParams) -> bool:
    """All generations carry the same number of messages."""
    return len(set(params.M)) == 1


def contains_all_zero(code: TableCode) -> bool:
    return any(code.in_image(i, zero_state(code.n)) for i in range(1, code.t + 1))


def verify_wom(code: TableCode) -> PropertyReport:
    """Full property check: validity plus the decodability hierarchy.

    The code is valid iff no two classes of one generation overlap and, for
    every write i >= 2, every class of generation i dominates every state in
    the previous generation's image (generation-1 classes cover the empty
    memory for free).  The report carries a first witness for each failed
    check.
    """
    class_overlap = _first_class_overlap(code)
    covering_failure = _first_covering_failure(code)
    is_valid = class_overlap is None and covering_failure is None
    is_decodable, decode_conflict = check_decodable(code)
    is_synchronous, image_overlap = check_synchronous(code)
    is_laminar, laminar_overlap = check_laminar(code)
    assert not is_laminar or is_synchronous
    assert not is_synchronous or is_decodable
    props = CodeProperties(
        is_valid=is_valid,
        is_decodable=is_decodable,
        is_synchronous=is_synchronous,
        is_laminar=is_laminar,
        is_fixed_rate=check_fixed_rate(code.params),
        contains_all_zero=contains_all_zero(code),
    )
    return PropertyReport(
        properties=props,
        covering_failure=covering_failure,
        class_overlap=class_overlap,
        decode_conflict=decode_conflict,
        image_overlap=image_overlap,
        laminar_overlap=laminar_overlap,
    )


# --- rate ------------------------------------------------------------------


class RateBreakdown(NamedTuple):
    total: float
    per_generation: tuple[float, ...]


def wom_rate(params: CodeParams) -> RateBreakdown:
    """Sum of per-write rates log2(M_i)/n."""
    per = tuple(math.log2(m) / params.n for m in params.M)
    return RateBreakdown(math.fsum(per), per)
