"""Bound bookkeeping: one record per slice, exportable as CSV.

A record gathers the three quantities that bracket a slice's best
partition cardinality: the closed-form bound, the covering-based bound
B, and the searched A, each absent when its computation was skipped or
ran out of budget.  Witnesses can be written alongside the CSV so an
exact claim is always accompanied by something checkable.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

from ..core import State, format_state
from ..errors import BudgetExhausted
from .covers import bound_closed_form, min_cover_search
from .partitions import max_partition
from .slices import enumerate_slice

__all__ = ["BoundRecord", "bound_record", "bound_table", "write_bounds_csv"]

# Slices above this size are not searched for exact A by default; the
# partition search degrades much faster than the cover search.
DEFAULT_EXACT_LIMIT = 70


@dataclass(frozen=True)
class BoundRecord:
    """Known bounds for one (q, n, i) slice.

    ``A`` is exact when ``exact`` is set and otherwise the best found;
    ``provenance`` says which computation produced it.  Unknown values
    are None.  Whenever all three are known, A <= B <= closed_form.
    """

    q: int
    n: int
    i: int
    closed_form: int | None
    B: int | None
    A: int | None
    exact: bool
    provenance: str
    cover_witness: tuple[State, ...] | None
    partition_witness: tuple[tuple[State, ...], ...] | None
    nodes: int


def bound_record(
    q: int,
    n: int,
    i: int,
    budget: int | None = None,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
) -> BoundRecord:
    """Compute every bound for one slice that fits the given limits."""
    closed = bound_closed_form(n, i) if q == 2 else None
    nodes = 0
    cover = min_cover_search(q, n, i, budget)
    nodes += cover.nodes
    slice_size = len(enumerate_slice(q, n, i).states)
    # Same interval argument as bound_B, on the one search already run:
    # the floor settles whenever it is constant over [lower_bound, size].
    hi = slice_size // cover.lower_bound
    lo = slice_size // cover.size
    b_value: int | None = lo if (cover.exact or hi == lo) else None
    a_value: int | None = None
    a_exact = False
    partition_witness = None
    if slice_size <= exact_limit:
        try:
            result = max_partition(q, n, i, budget)
        except BudgetExhausted as stop:
            nodes += stop.nodes
            provenance = "search found no partition within budget"
        else:
            nodes += result.nodes
            a_value = result.partition.cardinality
            a_exact = result.exact
            partition_witness = result.partition.classes
            provenance = "search (exact)" if result.exact else "search (best found)"
    else:
        provenance = f"not searched (slice size {slice_size} exceeds {exact_limit})"
    return BoundRecord(
        q=q,
        n=n,
        i=i,
        closed_form=closed,
        B=b_value,
        A=a_value,
        exact=a_exact,
        provenance=provenance,
        cover_witness=cover.witness if cover.exact else None,
        partition_witness=partition_witness,
        nodes=nodes,
    )


def bound_table(
    q: int,
    n_max: int,
    budget: int | None = None,
    exact_limit: int = DEFAULT_EXACT_LIMIT,
    i_max: int | None = None,
) -> list[BoundRecord]:
    """Records for every slice with n <= n_max, smallest instances first.

    Ascending order pays: each cover search reuses the certified bounds
    of the smaller slices it recurses into, so a whole table costs little
    more than its largest entries.
    """
    records = []
    for n in range(1, n_max + 1):
        top = n * (q - 1) if i_max is None else min(i_max, n * (q - 1))
        for i in range(1, top + 1):
            records.append(bound_record(q, n, i, budget, exact_limit))
    return records


def _witness_payload(record: BoundRecord) -> dict:
    payload: dict = {"q": record.q, "n": record.n, "i": record.i}
    if record.cover_witness is not None:
        payload["min_cover"] = [format_state(s, record.q) for s in record.cover_witness]
    if record.partition_witness is not None:
        payload["partition"] = [
            [format_state(s, record.q) for s in cls] for cls in record.partition_witness
        ]
    return payload


def write_bounds_csv(
    records: Iterable[BoundRecord],
    out: IO[str],
    witness_dir: str | Path | None = None,
) -> None:
    """Write records as CSV; optionally drop witness JSONs next to it.

    Witness files are emitted only for records that actually carry a
    witness, and the CSV cell names the file so rows stay self-checking.
    """
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["q", "n", "i", "closed_form", "B", "A", "exact_flag", "witness_file"])
    for record in records:
        witness_file = ""
        if witness_dir is not None and (
            record.cover_witness is not None or record.partition_witness is not None
        ):
            directory = Path(witness_dir)
            directory.mkdir(parents=True, exist_ok=True)
            name = f"bound_q{record.q}_n{record.n}_i{record.i}.json"
            path = directory / name
            path.write_text(json.dumps(_witness_payload(record), indent=2) + "\n")
            witness_file = name
        writer.writerow(
            [
                record.q,
                record.n,
                record.i,
                "" if record.closed_form is None else record.closed_form,
                "" if record.B is None else record.B,
                "" if record.A is None else record.A,
                "1" if record.exact else "0",
                witness_file,
            ]
        )
