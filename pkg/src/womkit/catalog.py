"""Built-in named code tables, plus the JSON file format for user codes.

Every table the library ships is embedded here as digit-string literals
and revalidated on load: an entry whose measured properties or rate
drift from the expected ones raises instead of loading.  Entries that
the publications state only by parameters carry tables frozen from the
canonical search output, and derived entries (prepended, merged, split)
are rebuilt through the public transforms on every load so the catalog
also exercises them.

The file format is a small JSON document; see :func:`read_code_file`.
Structural problems with the document itself raise ParseError, while
well-formed documents describing a broken code raise SchemaError.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .compose import merge_generations, prepend_zero_generation, split_generation
from .core import (
    CodeParams,
    CodeProperties,
    TableCode,
    format_state,
    parse_state,
    verify_wom,
    wom_rate,
)
from .errors import CatalogCorrupt, ParseError, SchemaError, WomError

__all__ = [
    "CatalogEntry",
    "load_catalog",
    "catalog_entry",
    "catalog_ids",
    "read_code_file",
    "write_code_file",
    "code_document",
]


def _code(q: int, n: int, rows: Sequence[Sequence[Sequence[str]]]) -> TableCode:
    return TableCode(q, n, [[{parse_state(s, q) for s in cls} for cls in gen] for gen in rows])


# --- embedded tables ---------------------------------------------------------

# Four-write laminar code on four binary cells.  The source diagram pins
# the parameters [4,4:4,2,2,1] and laminarity but not every edge style,
# so generations 2 and 3 are a covering-valid reconstruction.
FIG1_LAMINAR = [
    [["0001"], ["0010"], ["0100"], ["1000"]],
    [["1100", "0011"], ["1010", "0101"]],
    [["1110", "0111"], ["1101", "1011"]],
    [["1111"]],
]

# Two-write code on three cells with four messages per write.  The
# second-write class of each message keeps the first-write codeword, so
# an unchanged state decodes to the same message at either write; that
# reuse is what makes the code nonsynchronous.
TABLE1_NONSYNC = [
    [["000"], ["100"], ["010"], ["001"]],
    [["000", "111"], ["100", "011"], ["010", "101"], ["001", "110"]],
]

# Three-write code on four cells (4, 3, 2 messages): the greedy
# [4,4:4,3,1,1] table with its last two generations merged.
EX5_INNER = [
    [["0001"], ["0010"], ["0100"], ["1000"]],
    [["1100", "0011"], ["1010", "0101"], ["1001", "0110"]],
    [["0111", "1011", "1101", "1110"], ["1111"]],
]

# Two-write code on two cells (2 then 1 messages).
C2_WRITES2 = [
    [["01"], ["10"]],
    [["11"]],
]

# Canonical greedy outputs for n = t, frozen.  The publications state
# parameters only; these tables are reproduced by greedy_laminar and
# checked against the frozen form in the test suite.
GREEDY_33 = [
    [["001"], ["010"], ["100"]],
    [["011", "101", "110"]],
    [["111"]],
]

GREEDY_44 = [
    [["0001"], ["0010"], ["0100"], ["1000"]],
    [["0011", "1100"], ["0101", "1010"], ["0110", "1001"]],
    [["0111", "1011", "1101", "1110"]],
    [["1111"]],
]

GREEDY_55 = [
    [["00001"], ["00010"], ["00100"], ["01000"], ["10000"]],
    [["00011", "00101", "00110", "11000"], ["01001", "01010", "10100"], ["01100", "10001", "10010"]],
    [["00111", "01011", "10101", "11010", "11100"], ["01101", "01110", "10011", "10110", "11001"]],
    [["01111", "10111", "11011", "11101", "11110"]],
    [["11111"]],
]

GREEDY_66 = [
    [["000001"], ["000010"], ["000100"], ["001000"], ["010000"], ["100000"]],
    [
        ["000011", "010100", "101000"],
        ["000101", "011000", "100010"],
        ["000110", "001001", "110000"],
        ["001010", "010001", "100100"],
        ["001100", "010010", "100001"],
    ],
    [
        ["000111", "001011", "010101", "011010", "101001", "101100", "110010", "110100"],
        ["001101", "010011", "011100", "100110", "101010", "110001"],
        ["001110", "010110", "011001", "100011", "100101", "111000"],
    ],
    [
        [
            "001111", "010111", "011011", "011101", "011110",
            "100111", "101011", "101101", "101110", "110011",
            "110101", "110110", "111001", "111010", "111100",
        ]
    ],
    [["011111", "101111", "110111", "111011", "111101", "111110"]],
    [["111111"]],
]

# Published six-class listing for the third generation of a [5,3:5,3,6]
# code; generations 1 and 2 are the greedy five-cell base.
W1_THIRD_GENERATION = [
    ["01111", "11001", "10110"],
    ["10111", "11100", "01011"],
    ["11011", "01110", "10101"],
    ["11101", "00111", "11010"],
    ["11110", "10011", "01101"],
    ["11111"],
]

# Published four-class listing for the third generation of a [5,3:5,3,4]
# code.  Class for class it equals merging the last three generations of
# GREEDY_55, and the test suite asserts that identity.
W1BIS_THIRD_GENERATION = [
    ["11100", "11010", "10101", "01011", "00111"],
    ["11001", "10110", "10011", "01110", "01101"],
    ["11110", "11101", "11011", "10111", "01111"],
    ["11111"],
]

# Fixed-rate two-write code on three cells, two messages per write.
FIXEDRATE_32 = [
    [["001"], ["010"]],
    [["110", "101"], ["011"]],
]

# Fixed-rate three-write code on five cells, four messages per write.
# Its third generation is the four-class listing above.
FIXEDRATE_53 = [
    [["00001"], ["00010"], ["00100"], ["01000"]],
    [["11000", "10100", "10010", "10001"], ["01100", "00011"], ["01010", "00101"], ["01001", "00110"]],
    W1BIS_THIRD_GENERATION,
]

# Published six-write laminar code on two quaternary cells.
Q4_LAMINAR_26 = [
    [["01"], ["10"]],
    [["11"], ["20", "02"]],
    [["21", "03"], ["12", "30"]],
    [["13", "31", "22"]],
    [["23", "32"]],
    [["33"]],
]

# Published four-write code on two quaternary cells: the six-write table
# above with its last three generations reorganized into two generations
# of three classes each (the singleton {22} joins the third write).
Q4_SYNC_24 = [
    [["01"], ["10"]],
    [["11"], ["20", "02"]],
    [["21", "03"], ["12", "30"], ["22"]],
    [["13", "32"], ["31", "23"], ["33"]],
]

# Canonical greedy ternary base for the merged two-cell entry below.
Q3_LAMINAR_24 = [
    [["01"], ["10"]],
    [["02", "20"], ["11"]],
    [["12", "21"]],
    [["22"]],
]

# Canonical greedy nine-write code on three quaternary cells, frozen.
Q4_LAMINAR_39 = [
    [["001"], ["010"], ["100"]],
    [["002", "110"], ["011", "200"], ["020", "101"]],
    [["003", "030", "111", "300"], ["012", "120", "201"], ["021", "102", "210"]],
    [["013", "022", "121", "130", "202", "211", "310"], ["031", "103", "112", "220", "301"]],
    [["023", "032", "113", "122", "131", "203", "212", "221", "230", "302", "311", "320"]],
    [["033", "123", "132", "213", "222", "231", "303", "312", "321", "330"]],
    [["133", "223", "232", "313", "322", "331"]],
    [["233", "323", "332"]],
    [["333"]],
]


# --- the catalog -------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """One named built-in code with its expected verdicts and rate."""

    id: str
    params: CodeParams
    table: TableCode
    expected: CodeProperties
    expected_rate: float
    provenance: str


def _props(valid=True, decodable=True, synchronous=True, laminar=True, fixed=False, zero=False):
    return CodeProperties(
        is_valid=valid,
        is_decodable=decodable,
        is_synchronous=synchronous,
        is_laminar=laminar,
        is_fixed_rate=fixed,
        contains_all_zero=zero,
    )


def _build_tables() -> list[tuple[str, TableCode, CodeProperties, float, str]]:
    fig1 = _code(2, 4, FIG1_LAMINAR)
    ex5_inner = _code(2, 4, EX5_INNER)
    greedy_55 = _code(2, 5, GREEDY_55)
    q4_sync = _code(4, 2, Q4_SYNC_24)
    return [
        (
            "fig1_laminar",
            fig1,
            _props(),
            1.0,
            "four-write laminar code from a published state diagram; the diagram pins "
            "parameters and laminarity but not every edge, so generations 2 and 3 are "
            "a covering-valid reconstruction",
        ),
        (
            "fig1_prepended",
            prepend_zero_generation(fig1),
            _props(zero=True),
            1.0,
            "fig1_laminar with an all-zero generation prepended, as published alongside it",
        ),
        (
            "table1_nonsync",
            _code(2, 3, TABLE1_NONSYNC),
            _props(synchronous=False, laminar=False, fixed=True, zero=True),
            1.3333,
            "published two-write encoding table; decodable but not synchronous because "
            "second-write classes reuse the first-write codewords",
        ),
        (
            "ex5_inner",
            ex5_inner,
            _props(),
            1.1462,
            "published three-write table; equals greedy_44 with the last two generations merged",
        ),
        (
            "c2_writes2",
            _code(2, 2, C2_WRITES2),
            _props(),
            0.5,
            "published two-write table on two cells",
        ),
        (
            "greedy_33",
            _code(2, 3, GREEDY_33),
            _props(),
            0.5283,
            "canonical greedy output for n=t=3, frozen; stated by parameters only",
        ),
        (
            "greedy_44",
            _code(2, 4, GREEDY_44),
            _props(),
            0.8962,
            "canonical greedy output for n=t=4, frozen; stated by parameters only",
        ),
        (
            "greedy_55",
            greedy_55,
            _props(),
            0.9814,
            "canonical greedy output for n=t=5, frozen; stated by parameters only",
        ),
        (
            "greedy_66",
            _code(2, 6, GREEDY_66),
            _props(),
            1.0820,
            "canonical greedy output for n=t=6, frozen; stated by parameters only",
        ),
        (
            "w1_5356",
            TableCode(2, 5, greedy_55.generations[:2] + (_code(2, 5, [W1_THIRD_GENERATION]).generations[0],)),
            _props(),
            1.2984,
            "published six-class third generation over the greedy five-cell base",
        ),
        (
            "w1bis_5354",
            TableCode(2, 5, greedy_55.generations[:2] + (_code(2, 5, [W1BIS_THIRD_GENERATION]).generations[0],)),
            _props(),
            1.1814,
            "published four-class third generation; identical to merging the last three "
            "generations of greedy_55",
        ),
        (
            "fixedrate_32",
            _code(2, 3, FIXEDRATE_32),
            _props(fixed=True),
            0.6667,
            "published fixed-rate table, two messages per write",
        ),
        (
            "fixedrate_53",
            _code(2, 5, FIXEDRATE_53),
            _props(fixed=True),
            1.2,
            "published fixed-rate table, four messages per write",
        ),
        (
            "q4_laminar_26",
            _code(4, 2, Q4_LAMINAR_26),
            _props(),
            1.5,
            "published six-write quaternary class table",
        ),
        (
            "q4_sync_24",
            q4_sync,
            _props(laminar=False),
            2.5850,
            "published reorganization of q4_laminar_26's last three generations",
        ),
        (
            "q4_split_25",
            split_generation(q4_sync, 4, ((1, 2), (3,))),
            _props(laminar=False),
            2.2925,
            "q4_sync_24 with its fourth generation split as published",
        ),
        (
            "q3_merged_23",
            merge_generations(_code(3, 2, Q3_LAMINAR_24), 3, 4),
            _props(fixed=True),
            1.5,
            "canonical greedy ternary output with the last two generations merged; "
            "stated by parameters and the absence of an all-zero codeword",
        ),
        (
            "q4_laminar_39",
            _code(4, 3, Q4_LAMINAR_39),
            _props(),
            1.9183,
            "canonical greedy output for three quaternary cells, frozen; stated by "
            "parameters only",
        ),
    ]


def load_catalog() -> list[CatalogEntry]:
    """All built-in entries, each revalidated against its expected verdicts."""
    entries = []
    for entry_id, table, expected, expected_rate, provenance in _build_tables():
        try:
            report = verify_wom(table)
        except WomError as err:
            raise CatalogCorrupt(f"catalog entry {entry_id}: verification failed: {err}") from err
        if report.properties != expected:
            raise CatalogCorrupt(
                f"catalog entry {entry_id}: measured properties {report.properties} "
                f"do not match expected {expected}"
            )
        rate = wom_rate(table.params).total
        if abs(rate - expected_rate) > 1e-4:
            raise CatalogCorrupt(
                f"catalog entry {entry_id}: rate {rate:.6f} drifts from expected {expected_rate}"
            )
        entries.append(
            CatalogEntry(
                id=entry_id,
                params=table.params,
                table=table,
                expected=expected,
                expected_rate=expected_rate,
                provenance=provenance,
            )
        )
    return entries


def catalog_ids() -> list[str]:
    return [entry_id for entry_id, *_ in _build_tables()]


def catalog_entry(entry_id: str) -> CatalogEntry:
    """Look up one entry by id; KeyError names the id when absent."""
    for entry in load_catalog():
        if entry.id == entry_id:
            return entry
    raise KeyError(f"no catalog entry named {entry_id!r}")


# --- code files --------------------------------------------------------------

_FILE_FIELDS = {"q", "n", "t", "generations"}


def _require_int(doc: dict, field: str) -> int:
    value = doc[field]
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"field {field!r} must be an integer, got {value!r}")
    return value


def _parse_file_state(raw, q: int, where: str):
    if isinstance(raw, str):
        try:
            return parse_state(raw, q)
        except SchemaError as err:
            raise ParseError(f"{where}: {err}") from None
    if isinstance(raw, list):
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in raw):
            raise ParseError(f"{where}: state array {raw!r} has non-integer cells")
        return tuple(raw)
    raise ParseError(f"{where}: state must be a digit string or an array, got {raw!r}")


def read_code_file(path) -> TableCode:
    """Load a code from a JSON document.

    The document is ``{"q", "n", "t", "generations"}`` with
    ``generations[i-1][m-1]`` the class of message m at write i, each
    state either an array of n integers or, when q <= 10, a string of n
    digits (cell 1 leftmost).  Unknown fields are rejected.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{path}: invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    unknown = set(doc) - _FILE_FIELDS
    if unknown:
        raise ParseError(f"{path}: unknown fields {sorted(unknown)}")
    missing = _FILE_FIELDS - set(doc)
    if missing:
        raise ParseError(f"{path}: missing fields {sorted(missing)}")
    q = _require_int(doc, "q")
    n = _require_int(doc, "n")
    t = _require_int(doc, "t")
    raw_gens = doc["generations"]
    if not isinstance(raw_gens, list):
        raise ParseError(f"{path}: 'generations' must be a list")
    gens = []
    for gi, raw_gen in enumerate(raw_gens, start=1):
        if not isinstance(raw_gen, list):
            raise ParseError(f"{path}: generation {gi} must be a list of classes")
        classes = []
        for mi, raw_cls in enumerate(raw_gen, start=1):
            if not isinstance(raw_cls, list):
                raise ParseError(f"{path}: generation {gi}, class {mi} must be a list of states")
            where = f"{path}: generation {gi}, class {mi}"
            classes.append([_parse_file_state(s, q, where) for s in raw_cls])
        gens.append(classes)
    code = TableCode(q, n, gens)
    if code.t != t:
        raise SchemaError(f"{path}: document says t={t} but lists {code.t} generations")
    for gi, gen in enumerate(code.generations, start=1):
        seen: dict = {}
        for mi, cls in enumerate(gen, start=1):
            for s in cls:
                if s in seen:
                    raise SchemaError(
                        f"{path}: generation {gi}: state {format_state(s, q)} appears "
                        f"in classes {seen[s]} and {mi}"
                    )
                seen[s] = mi
    return code


def write_code_file(code: TableCode, path) -> None:
    """Inverse of :func:`read_code_file`; digit strings when q <= 10."""
    Path(path).write_text(json.dumps(code_document(code), indent=1) + "\n", encoding="utf-8")


def code_document(code: TableCode) -> dict:
    """The code in file format, as a JSON-ready document."""
    if code.q <= 10:
        dump = lambda s: format_state(s, code.q)  # noqa: E731
    else:
        dump = list
    return {
        "q": code.q,
        "n": code.n,
        "t": code.t,
        "generations": [[[dump(s) for s in cls] for cls in gen] for gen in code.generations],
    }
