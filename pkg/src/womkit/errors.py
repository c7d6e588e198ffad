"""Exception types shared across the package.

Every domain error raised by womkit derives from :class:`WomError`, so
callers (and the CLI) can distinguish domain failures from programming
errors with a single except clause.
"""


class WomError(Exception):
    """Base class for all domain errors raised by womkit."""


# --- encode/decode ---------------------------------------------------------


class NoCoveringCodeword(WomError):
    """No codeword of the requested class dominates the current state."""


class NotInImage(WomError):
    """The state is not a codeword of the requested generation."""


class NotInAnyImage(WomError):
    """The state is not a codeword of any generation."""


class MessageOutOfRange(WomError):
    """The message index is outside 1..M for the generation being written."""


class TooManyWrites(WomError):
    """More writes were requested than the code supports."""


# --- composite codes -------------------------------------------------------


class PreconditionViolation(WomError):
    """A construction was invoked on codes that do not qualify for it."""


class InconsistentBlocks(WomError):
    """Block generations do not fit any reachable composite write state."""


class BeyondLastGeneration(WomError):
    """The memory is exhausted: the next write stage exceeds the inner code."""


class NothingWritten(WomError):
    """Decode was attempted on a memory with no completed writes."""


# --- code transforms -------------------------------------------------------


class AllZeroAlreadyPresent(WomError):
    """The all-zero state is already a codeword, so it cannot be prepended."""


class MergedCodeInvalid(WomError):
    """Merging the requested generations breaks the covering condition."""


class SplitCodeInvalid(WomError):
    """The requested split does not yield chained covering generations."""


class GenerationCountMismatch(WomError):
    """The synchronous code's write count does not match the target code."""


class NoSuchReorganization(WomError):
    """No re-partition of the merged states meets the requested class counts."""


# --- search ----------------------------------------------------------------


class Infeasible(WomError):
    """The search space is empty: no object with the requested shape exists."""


class BudgetExhausted(WomError):
    """The search ran out of node budget before settling the question."""

    def __init__(self, message: str, best=None, nodes: int = 0):
        super().__init__(message)
        self.best = best
        self.nodes = nodes


# --- serialization ---------------------------------------------------------


class ParseError(WomError):
    """The input is not syntactically well formed."""


class SchemaError(WomError):
    """The input parses but violates the code-file schema or its invariants."""


class CatalogCorrupt(WomError):
    """A bundled catalog entry failed validation at load time."""
