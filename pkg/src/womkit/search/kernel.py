"""Kernel engine selection and search budgets.

The compiled engine (``_speedups``, Cython) is preferred when importable;
``WOMKIT_FORCE_PURE=1`` forces the pure-Python reference engine.  Both
traverse identical search trees, so results and node counts never depend on
the engine, only wall time does.

Budgets are node counts.  ``WOMKIT_BUDGET`` overrides both defaults at call
time; an explicit budget argument wins over everything.
"""

from __future__ import annotations

import os

__all__ = [
    "ENGINE",
    "min_cover",
    "partition_search",
    "greedy_cover",
    "cover_budget",
    "partition_budget",
    "DEFAULT_COVER_BUDGET",
    "DEFAULT_PARTITION_BUDGET",
]


def _load():
    if os.environ.get("WOMKIT_FORCE_PURE") == "1":
        from . import _pure

        return _pure, "pure"
    try:
        from . import _speedups  # type: ignore[attr-defined]

        return _speedups, "compiled"
    except ImportError:
        from . import _pure

        return _pure, "pure"


_impl, ENGINE = _load()

min_cover = _impl.min_cover
partition_search = _impl.partition_search

from ._pure import greedy_cover  # noqa: E402  (helper, never hot)

DEFAULT_COVER_BUDGET = 200_000_000
DEFAULT_PARTITION_BUDGET = 20_000_000


def _env_budget() -> int | None:
    raw = os.environ.get("WOMKIT_BUDGET")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"WOMKIT_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"WOMKIT_BUDGET must be positive, got {value}")
    return value


def cover_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    return _env_budget() or DEFAULT_COVER_BUDGET


def partition_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    return _env_budget() or DEFAULT_PARTITION_BUDGET
