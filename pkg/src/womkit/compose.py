"""Concatenation of synchronous codes, plus the class-table transforms.

A composite memory is laid out as n' blocks of n cells.  An inner code
writes data inside blocks; an outer code over the blocks records which
of them were rewritten lately.  Writing proceeds in stages: during stage
p, each outer write rewrites some blocks from inner generation p-1 up to
generation p, and once the outer code is exhausted every block sits at
generation p, the block-level state resets, and stage p+1 begins.  The
stage and the position inside it are recoverable from the raw state, so
the composite of two synchronous codes is synchronous, with t*t' writes
over n*n' cells and write (p-1)t'+l offering M_p * M'_l messages.

Messages ride on the composite write as a pair: the outer message picks
the block pattern, and the inner message is spread over the rewritten
blocks so that their block-level decodes sum to it modulo M_p.  Blocks
rewritten as side effects of the pattern carry the neutral summand M_p.

The transforms at the bottom of the module (prepending a zero write,
merging and splitting writes, pairing with a synchronous code) are the
table surgeries used to fit a code to a wanted write count.
"""

from __future__ import annotations

from functools import cached_property
from typing import NamedTuple, Optional, Sequence, Union

from .codec import GenerationView, StageView, decode_op, encode_op, generation_op
from .core import (
    CodeParams,
    State,
    TableCode,
    check_fixed_rate,
    contains_all_zero,
    verify_wom,
    weight,
    zero_state,
)
from .errors import (
    AllZeroAlreadyPresent,
    BeyondLastGeneration,
    GenerationCountMismatch,
    InconsistentBlocks,
    MergedCodeInvalid,
    MessageOutOfRange,
    NotInAnyImage,
    NotInImage,
    NothingWritten,
    PreconditionViolation,
    SplitCodeInvalid,
)
from .rates import NdRate, RateReport, rate_report

__all__ = [
    "CompositeCode",
    "CompositeMessage",
    "compose",
    "composite_recover",
    "composite_encode",
    "composite_decode",
    "iterate_construction",
    "prepend_zero_generation",
    "merge_generations",
    "split_generation",
    "append_counter",
    "append_sync",
    "product_with_sync",
]

CodeLike = Union[TableCode, "CompositeCode"]


def _wrap(x: int, modulus: int) -> int:
    """1 + ((x - 1) mod modulus), the 1-based wrap; total for negative x."""
    return 1 + (x - 1) % modulus


class CompositeMessage(NamedTuple):
    """Decoded content of a composite state: the inner and outer halves
    and the combined message m1 = (m - 1) * M'_l + m'."""

    m: int
    m_prime: int
    m1: int


class CompositeCode:
    """The concatenation of an inner and an outer code, evaluated lazily.

    States are flat tuples of inner.n * outer.n cells, read as outer.n
    consecutive blocks.  Class tables are never materialized; encoding,
    decoding, and generation recovery run the stage algorithms against
    the component codes, so composites nest (a composite inner works the
    same as a table one).  Construct through :func:`compose`, which
    checks the preconditions.  Immutable; equality is componentwise.
    """

    def __init__(self, inner: CodeLike, outer: CodeLike):
        self.inner = inner
        self.outer = outer

    @cached_property
    def params(self) -> CodeParams:
        ip = self.inner.params
        op = self.outer.params
        sizes = tuple(mp * ml for mp in ip.M for ml in op.M)
        return CodeParams(ip.q, ip.n * op.n, ip.t * op.t, sizes)

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def t(self) -> int:
        return self.params.t

    def split_blocks(self, state: Sequence[int]) -> tuple[State, ...]:
        """Cut a flat state into the outer code's blocks."""
        n = self.inner.params.n
        count = self.outer.params.n
        state = tuple(state)
        if len(state) != n * count:
            raise ValueError(f"state length {len(state)} is not {count} blocks of {n} cells")
        return tuple(state[k * n : (k + 1) * n] for k in range(count))

    def recover_generation(self, state: Sequence[int]) -> GenerationView:
        """Both readings of a flat state; total, unlike composite_recover."""
        return _recover_views(self, self.split_blocks(state))

    def generation_of(self, state: Sequence[int]) -> int:
        return self.recover_generation(state).read_view.i

    def encode(self, i: int, m1: int, state: Sequence[int]) -> State:
        """Write message m1 as write i on a flat state."""
        blocks = self.split_blocks(state)
        view = _recover_views(self, blocks)
        if view.write_view.i + 1 != i:
            raise PreconditionViolation(
                f"state is after write {view.write_view.i}; the next write is "
                f"{view.write_view.i + 1}, not {i}"
            )
        updated = _encode_blocks(self, blocks, m1, view)
        return tuple(cell for block in updated for cell in block)

    def decode(self, i: int, state: Sequence[int]) -> int:
        """Message m1 stored by write i, which must be the last one made."""
        blocks = self.split_blocks(state)
        view = _recover_views(self, blocks)
        if view.read_view.i != i:
            raise NotInImage(f"state is at write {view.read_view.i}, not {i}")
        return _decode_blocks(self, blocks, view).m1

    def to_table(self, limit: int = 1_000_000) -> TableCode:
        """Materialize the class tables by walking every reachable state.

        Meant for short composites (serialization, cross-checks); the
        state count grows multiplicatively with the write count, so the
        limit guards against runaway expansion.
        """
        params = self.params
        frontier: list[State] = [zero_state(params.n)]
        generations = []
        total = 0
        for i in range(1, params.t + 1):
            size = params.M[i - 1]
            classes: list[set] = [set() for _ in range(size)]
            for b in frontier:
                for m in range(1, size + 1):
                    classes[m - 1].add(self.encode(i, m, b))
            reached = set().union(*classes)
            total += len(reached)
            if total > limit:
                raise PreconditionViolation(
                    f"materializing {params} exceeds the {limit}-state limit at write {i}"
                )
            generations.append(tuple(tuple(sorted(cls)) for cls in classes))
            frontier = sorted(reached)
        return TableCode(params.q, params.n, generations)

    def _key(self):
        return (self.inner, self.outer)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CompositeCode):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash((CompositeCode, self.inner, self.outer))

    def __repr__(self) -> str:
        return f"CompositeCode({self.params})"


# --- construction ------------------------------------------------------------


def _check_component(code: CodeLike, role: str) -> None:
    if isinstance(code, CompositeCode):
        return  # synchronous and free of the all-zero codeword by construction
    if not isinstance(code, TableCode):
        raise TypeError(f"{role} code must be a TableCode or CompositeCode, got {type(code).__name__}")
    report = verify_wom(code)
    if not report.properties.is_valid:
        detail = report.covering_failure or report.class_overlap
        raise PreconditionViolation(f"{role} code is not a valid write-once code: {detail}")
    if not report.properties.is_synchronous:
        raise PreconditionViolation(
            f"{role} code is nonsynchronous: generations {report.image_overlap.generation_a} "
            f"and {report.image_overlap.generation_b} share state {report.image_overlap.state}"
        )
    if report.properties.contains_all_zero:
        raise PreconditionViolation(f"{role} code contains the all-zero codeword")


def _unit_increment_writes(outer: CodeLike) -> bool:
    """Every write adds exactly one to the cell sum, whatever the message.

    Holds iff every generation-l codeword has weight l, so each write
    moves from weight l-1 to weight l.  Composite outers report False:
    their writes can touch several blocks at once.
    """
    if not isinstance(outer, TableCode):
        return False
    return all(weight(s) == l for l in range(1, outer.t + 1) for s in outer.image(l))


def compose(inner: CodeLike, outer: CodeLike) -> CompositeCode:
    """Concatenate two synchronous codes into one over n*n' cells.

    Both components must be synchronous and must not contain the
    all-zero codeword.  A nonbinary outer is accepted only when every
    outer write raises the cell sum by exactly one or the inner code is
    fixed-rate; other nonbinary outers are rejected because the write
    arithmetic is not pinned down for them.

    The stage algorithms additionally assume the outer code fills every
    block by its last write, so that a finished stage reads as all-ones
    and rolls over.  Composites over an outer whose final image is not
    the all-ones state still report correct parameters and rate, but
    their encode/decode/recover operations are not usable.
    """
    _check_component(inner, "inner")
    _check_component(outer, "outer")
    if outer.params.q != 2:
        if not (check_fixed_rate(inner.params) or _unit_increment_writes(outer)):
            raise PreconditionViolation(
                "unsupported nonbinary outer: its writes can raise the cell sum "
                "by more than one and the inner code is not fixed-rate"
            )
    return CompositeCode(inner, outer)


def iterate_construction(base: CodeLike, outer: CodeLike, m: int) -> CodeLike:
    """Feed the construction its own output m times over the same outer."""
    if m < 0:
        raise ValueError(f"iteration count must be nonnegative, got {m}")
    code = base
    for _ in range(m):
        code = compose(code, outer)
    return code


# --- the stage algorithms ----------------------------------------------------


def _recover_views(code: CompositeCode, blocks: Sequence[State]) -> GenerationView:
    """Stage, local write count, and block-level state from raw blocks.

    The stage is the highest block generation p; blocks then read as a
    block-level state with 1 marking generation-p blocks.  If that state
    completes the outer code (all ones, or its final generation), the
    stage is exhausted: the read view keeps the completed stage and the
    write view starts the next one.  Total: exhausted memories are
    reported with a write view past the last stage, not an error.
    """
    inner = code.inner
    outer = code.outer
    n_prime = outer.params.n
    t_prime = outer.params.t
    blocks = tuple(tuple(block) for block in blocks)
    if len(blocks) != n_prime:
        raise InconsistentBlocks(f"expected {n_prime} blocks, got {len(blocks)}")
    gens = [generation_op(inner, block) for block in blocks]
    p = max(gens)
    if p == 0:
        # Fresh memory: no stage is open yet.
        read = StageView(0, t_prime, 0, (1,) * n_prime)
        write = StageView(1, 0, 0, zero_state(n_prime))
        return GenerationView(read_view=read, write_view=write, rolled_over=True)
    b_prime = tuple(g + 1 - p for g in gens)
    if any(v not in (0, 1) for v in b_prime):
        raise InconsistentBlocks(
            f"block generations {gens} span more than two consecutive values"
        )
    if b_prime == (1,) * n_prime:
        # A full block-level state need not be an outer codeword; either
        # way it means the stage is complete.
        try:
            l = generation_op(outer, b_prime)
        except NotInAnyImage:
            l = t_prime
        read = StageView(p, l, (p - 1) * t_prime + l, b_prime)
        write = StageView(p + 1, 0, p * t_prime, zero_state(n_prime))
        return GenerationView(read_view=read, write_view=write, rolled_over=True)
    try:
        l = generation_op(outer, b_prime)
    except NotInAnyImage as exc:
        raise InconsistentBlocks(
            f"block-level state {b_prime} is not an outer codeword"
        ) from exc
    read = StageView(p, l, (p - 1) * t_prime + l, b_prime)
    if l == t_prime:
        write = StageView(p + 1, 0, p * t_prime, zero_state(n_prime))
        return GenerationView(read_view=read, write_view=write, rolled_over=True)
    return GenerationView(read_view=read, write_view=read, rolled_over=False)


def composite_recover(code: CompositeCode, blocks: Sequence[State]) -> GenerationView:
    """Both readings of the memory given as blocks.

    Raises BeyondLastGeneration once the write view points past the last
    stage (the memory is fully written); decoding such a memory still
    works through :func:`composite_decode`, which reads the pre-rollover
    view.
    """
    view = _recover_views(code, blocks)
    if view.write_view.p > code.inner.params.t:
        raise BeyondLastGeneration(
            f"all {code.params.t} writes are used; no stage {view.write_view.p} exists"
        )
    return view


def _encode_blocks(
    code: CompositeCode, blocks: tuple[State, ...], m1: int, view: GenerationView
) -> tuple[State, ...]:
    inner = code.inner
    outer = code.outer
    wv = view.write_view
    if wv.p > inner.params.t:
        raise BeyondLastGeneration(f"all {code.params.t} writes are used")
    p, l, b_prime = wv.p, wv.l, wv.b_prime
    M_p = inner.params.M[p - 1]
    M_next = outer.params.M[l]
    limit = M_p * M_next
    if not 1 <= m1 <= limit:
        raise MessageOutOfRange(f"message {m1} outside 1..{limit} at write {wv.i + 1}")
    m = 1 + (m1 - 1) // M_next
    m_prime = 1 + (m1 - 1) % M_next
    b_hat = encode_op(outer, l + 1, m_prime, b_prime)
    k0 = None
    for k, block in enumerate(blocks):
        if b_prime[k] == 1:
            m -= decode_op(inner, p, block)
        elif b_hat[k] == 1:
            k0 = k
    if k0 is None:
        raise InconsistentBlocks(f"outer write {l + 1} switched no block")
    m = _wrap(m, M_p)
    updated = list(blocks)
    for k in range(len(blocks)):
        if b_prime[k] == 0 and b_hat[k] == 1 and k != k0:
            updated[k] = encode_op(inner, p, M_p, blocks[k])
    updated[k0] = encode_op(inner, p, m, blocks[k0])
    return tuple(updated)


def composite_encode(code: CompositeCode, blocks: Sequence[State], m1: int) -> tuple[State, ...]:
    """Write message m1 at the next write, returning the updated blocks.

    The write position comes from the blocks themselves.  The outer
    message picks the block pattern; blocks newly switched by it are
    written at the stage's inner generation, the last of them carrying
    the summand that completes the inner message modulo M_p and the
    others the neutral M_p.
    """
    blocks = tuple(tuple(block) for block in blocks)
    view = _recover_views(code, blocks)
    return _encode_blocks(code, blocks, m1, view)


def _decode_blocks(
    code: CompositeCode, blocks: tuple[State, ...], view: GenerationView
) -> CompositeMessage:
    inner = code.inner
    outer = code.outer
    rv = view.read_view
    if rv.p == 0:
        raise NothingWritten("the memory has no completed writes")
    p, l, b_prime = rv.p, rv.l, rv.b_prime
    m_prime = decode_op(outer, l, b_prime)
    total = sum(decode_op(inner, p, block) for k, block in enumerate(blocks) if b_prime[k] == 1)
    m = _wrap(total, inner.params.M[p - 1])
    m1 = (m - 1) * outer.params.M[l - 1] + m_prime
    return CompositeMessage(m=m, m_prime=m_prime, m1=m1)


def composite_decode(code: CompositeCode, blocks: Sequence[State]) -> CompositeMessage:
    """Read the last written message from the blocks.

    The outer half is the block pattern's message; the inner half is the
    sum of the current-generation blocks' decodes, wrapped to M_p.
    """
    blocks = tuple(tuple(block) for block in blocks)
    view = _recover_views(code, blocks)
    return _decode_blocks(code, blocks, view)


# --- table transforms --------------------------------------------------------


def prepend_zero_generation(code: TableCode) -> TableCode:
    """Add a first write that stores nothing: its one class is {0^n}.

    The first write leaves the memory untouched and every other write
    shifts up by one; the rate is unchanged (log2 1 = 0).
    """
    if contains_all_zero(code):
        raise AllZeroAlreadyPresent(f"{code.params} already decodes the all-zero state")
    zero_gen = ((zero_state(code.n),),)
    return TableCode(code.q, code.n, (zero_gen,) + code.generations)


def merge_generations(code: TableCode, first: int, last: int) -> TableCode:
    """Replace writes first..last by one write offering all their classes.

    Classes keep their concatenation order.  Every merged class must now
    cover from generation first-1 directly, which is re-verified.
    """
    if not 1 <= first <= last <= code.t:
        raise ValueError(f"range {first}..{last} outside 1..{code.t}")
    if first == last:
        return code
    merged = tuple(cls for i in range(first, last + 1) for cls in code.classes(i))
    generations = code.generations[: first - 1] + (merged,) + code.generations[last:]
    result = TableCode(code.q, code.n, generations)
    report = verify_wom(result)
    if not report.properties.is_valid:
        detail = report.covering_failure or report.class_overlap
        raise MergedCodeInvalid(f"merging writes {first}..{last} of {code.params} fails: {detail}")
    return result


def split_generation(code: TableCode, i: int, grouping: Sequence[Sequence[int]]) -> TableCode:
    """Split write i into consecutive writes, one per group of messages.

    Groups list 1-based message indices of generation i in the intended
    write order; each group's classes must cover the previous group's
    image, which is re-verified.
    """
    classes = code.classes(i)
    flat = [m for group in grouping for m in group]
    if sorted(flat) != list(range(1, len(classes) + 1)):
        raise ValueError(f"grouping must partition messages 1..{len(classes)}, got {grouping}")
    if any(not group for group in grouping):
        raise ValueError("grouping contains an empty group")
    pieces = tuple(tuple(classes[m - 1] for m in group) for group in grouping)
    generations = code.generations[: i - 1] + pieces + code.generations[i:]
    result = TableCode(code.q, code.n, generations)
    report = verify_wom(result)
    if not report.properties.is_valid:
        detail = report.covering_failure or report.class_overlap
        raise SplitCodeInvalid(f"splitting write {i} of {code.params} fails: {detail}")
    return result


# --- completions of nondecodable codes ----------------------------------------


def append_counter(nd: NdRate, target_n: int) -> RateReport:
    """Counter-cell completion at the target length (no data in the counter)."""
    return rate_report(nd, target_n)


def append_sync(
    nd: NdRate, sync_code: Union[TableCode, CodeParams], target_n: int
) -> RateReport:
    """Synchronous-code completion at the target length.

    The appended code must make exactly nd.t writes, one per write of
    the nondecodable code.  A TableCode argument is checked for
    synchrony; bare CodeParams skip that (accounting only).
    """
    if isinstance(sync_code, TableCode):
        report = verify_wom(sync_code)
        if not (report.properties.is_valid and report.properties.is_synchronous):
            raise PreconditionViolation(f"appended code {sync_code.params} is not synchronous")
        sync = sync_code.params
    else:
        sync = sync_code
    if sync.t != nd.t:
        raise GenerationCountMismatch(
            f"synchronous code makes {sync.t} writes, nondecodable code {nd.t}"
        )
    return rate_report(nd, target_n, sync)


def product_with_sync(code: TableCode, sync_code: TableCode) -> TableCode:
    """Extensional completion: juxtapose a code with a synchronous one.

    Both halves are written simultaneously, so write i offers
    M_i * M_i_sync messages (message order: data-major).  The appended
    half's images are pairwise disjoint, which makes the product
    synchronous no matter what the data half does.
    """
    if sync_code.t != code.t:
        raise GenerationCountMismatch(
            f"synchronous code makes {sync_code.t} writes, data code {code.t}"
        )
    report = verify_wom(sync_code)
    if not (report.properties.is_valid and report.properties.is_synchronous):
        raise PreconditionViolation(f"appended code {sync_code.params} is not synchronous")
    generations = []
    for i in range(1, code.t + 1):
        gen = tuple(
            tuple(x + y for x in cls_a for y in cls_b)
            for cls_a in code.classes(i)
            for cls_b in sync_code.classes(i)
        )
        generations.append(gen)
    return TableCode(max(code.q, sync_code.q), code.n + sync_code.n, generations)
