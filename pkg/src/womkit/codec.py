"""Write and read procedures for table codes, plus the sequence driver.

Encoding at write i picks, inside the class of the requested message, the
cheapest codeword dominating the current state (minimum weight, ties broken
lexicographically), so cell wear is deterministic and minimal for the given
class tables.  Decoding is a class-membership lookup.  The driver
:func:`run_write_sequence` plays a message sequence against any code-like
object, enforcing cell monotonicity and decode-after-write identity at every
step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .core import State, TableCode, leq, weight, zero_state
from .errors import (
    MessageOutOfRange,
    NoCoveringCodeword,
    NotInAnyImage,
    NotInImage,
    TooManyWrites,
)

__all__ = [
    "StageView",
    "GenerationView",
    "table_encode",
    "table_decode",
    "recover_generation_sync",
    "run_write_sequence",
    "encode_op",
    "decode_op",
    "generation_op",
]


class StageView(NamedTuple):
    """One reading of a composite memory: stage p, stage-local write count l,
    overall write count i = (p-1)t' + l, and the block-level state b'."""

    p: int
    l: int
    i: int
    b_prime: State


@dataclass(frozen=True)
class GenerationView:
    """Generation recovery result for stage-structured codes.

    ``read_view`` is the pre-rollover reading used for decoding the last
    written message; ``write_view`` is the post-rollover reading used for
    placing the next write.  Both agree on the overall write count i.
    ``rolled_over`` marks that the current stage is exhausted and the write
    view points at a fresh one.
    """

    read_view: StageView
    write_view: StageView
    rolled_over: bool


def table_encode(code: TableCode, i: int, m: int, b: State) -> State:
    """Write message m at generation i on top of state b."""
    classes = code.classes(i)
    if not 1 <= m <= len(classes):
        raise MessageOutOfRange(f"message {m} outside 1..{len(classes)} at generation {i}")
    b = tuple(b)
    best = None
    for y in classes[m - 1]:
        if leq(b, y):
            key = (weight(y), y)
            if best is None or key < best:
                best = key
    if best is None:
        raise NoCoveringCodeword(f"no codeword of generation {i}, message {m} dominates {b}")
    return best[1]


def table_decode(code: TableCode, i: int, b: State) -> int:
    """Message whose generation-i class contains b."""
    m = code.message_of(i, tuple(b))
    if m is None:
        raise NotInImage(f"state {b} is not a generation-{i} codeword")
    return m


def recover_generation_sync(code: TableCode, b: State) -> int:
    """Number of completed writes for a state of a synchronous code.

    Generation images are pairwise disjoint for synchronous codes, so the
    generation whose image contains b is unique.  The all-zero state reads
    as zero writes unless it is itself a codeword.
    """
    b = tuple(b)
    for i in range(1, code.t + 1):
        if code.in_image(i, b):
            return i
    if b == zero_state(code.n):
        return 0
    raise NotInAnyImage(f"state {b} is not a codeword of any generation")


# --- generic dispatch -------------------------------------------------------
#
# Composite codes implement encode/decode/generation_of as methods; table
# codes are passive, so the module functions above carry their behavior.


def encode_op(code, i: int, m: int, b: State) -> State:
    if isinstance(code, TableCode):
        return table_encode(code, i, m, b)
    return code.encode(i, m, b)


def decode_op(code, i: int, b: State) -> int:
    if isinstance(code, TableCode):
        return table_decode(code, i, b)
    return code.decode(i, b)


def generation_op(code, b: State) -> int:
    if isinstance(code, TableCode):
        return recover_generation_sync(code, b)
    return code.generation_of(b)


def run_write_sequence(code, messages: Sequence[int]) -> list[State]:
    """Play messages from the empty memory, returning the state after each.

    Accepts any prefix of the full write count.  Every step must grow the
    state componentwise and decode back to the message just written; a
    violation is a bug in the code's tables, so it fails hard.
    """
    params = code.params
    if len(messages) > params.t:
        raise TooManyWrites(f"{len(messages)} writes requested, code supports {params.t}")
    b = zero_state(params.n)
    trace: list[State] = []
    for j, m in enumerate(messages, start=1):
        y = encode_op(code, j, m, b)
        if not leq(b, y):
            raise AssertionError(f"write {j} shrank the state: {b} -> {y}")
        got = decode_op(code, j, y)
        if got != m:
            raise AssertionError(f"write {j} of message {m} decodes to {got}")
        trace.append(y)
        b = y
    return trace
