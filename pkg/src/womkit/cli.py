"""Command-line front end: every operation scriptable through one entry point.

Exit codes: 0 on success, 1 on domain failures (broken code files,
infeasible searches, states outside the code), 2 on usage errors.  Data
goes to stdout or the file named by ``-o``; diagnostics go to stderr.
Outputs carry no timestamps, so identical invocations produce identical
bytes; the one randomized subcommand (``fuzz``) is seeded.
"""

import argparse
import io
import json
import random
import sys
from pathlib import Path

from .catalog import (
    catalog_entry,
    code_document,
    load_catalog,
    read_code_file,
    write_code_file,
)
from .codec import run_write_sequence
from .compose import (
    composite_decode,
    iterate_construction,
    merge_generations,
    prepend_zero_generation,
    split_generation,
)
from .core import TableCode, format_state, parse_state, verify_wom, wom_rate
from .errors import NotInImage, WomError
from .rates import PRESETS, emit_rate_table, preset_rows
from .search import DEFAULT_EXACT_LIMIT, bound_record, bound_table, greedy_laminar, write_bounds_csv


def _load_code(ref: str) -> TableCode:
    """A code from ``catalog:id`` or a JSON file path."""
    if ref.startswith("catalog:"):
        entry_id = ref[len("catalog:") :]
        try:
            return catalog_entry(entry_id).table
        except KeyError as err:
            raise WomError(str(err)) from None
    return read_code_file(ref)


def _emit_code(code: TableCode, out: str | None) -> None:
    if out is None:
        print(json.dumps(code_document(code), indent=1))
    else:
        write_code_file(code, out)


def _emit_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _parse_blocks(text: str, comp) -> tuple:
    """Blocks from the command line: ';'-separated states, ','-separated
    digit strings of the inner length, or one flat state."""
    inner_n = comp.inner.params.n
    if ";" in text:
        return tuple(parse_state(part, comp.q) for part in text.split(";"))
    parts = text.split(",")
    if len(parts) > 1 and all(len(p) == inner_n and p.isdigit() for p in parts):
        return tuple(parse_state(part, comp.q) for part in parts)
    return comp.split_blocks(parse_state(text, comp.q))


# --- subcommands ---------------------------------------------------------------


_FLAGS = [
    ("valid", "is_valid"),
    ("decodable", "is_decodable"),
    ("synchronous", "is_synchronous"),
    ("laminar", "is_laminar"),
    ("fixed-rate", "is_fixed_rate"),
    ("all-zero", "contains_all_zero"),
]


def cmd_verify(args) -> int:
    code = _load_code(args.code)
    report = verify_wom(code)
    print(f"code: {code.params}")
    for label, attr in _FLAGS:
        print(f"{label}: {'yes' if getattr(report.properties, attr) else 'no'}")
    if report.covering_failure:
        f = report.covering_failure
        print(
            f"covering failure: generation {f.generation}, message {f.message}, "
            f"state {format_state(f.state, code.q)} has no larger codeword"
        )
    if report.class_overlap:
        f = report.class_overlap
        print(
            f"class overlap: generation {f.generation}, state "
            f"{format_state(f.state, code.q)} in classes {f.message_a} and {f.message_b}"
        )
    if report.decode_conflict:
        f = report.decode_conflict
        print(
            f"decode conflict: state {format_state(f.state, code.q)} reads m={f.message_a} "
            f"at write {f.generation_a} but m={f.message_b} at write {f.generation_b}"
        )
    if report.image_overlap:
        f = report.image_overlap
        print(
            f"image overlap: state {format_state(f.state, code.q)} in generations "
            f"{f.generation_a} and {f.generation_b}"
        )
    if report.laminar_overlap:
        f = report.laminar_overlap
        print(
            f"weight overlap: weight {f.weight} in generations "
            f"{f.generation_a} and {f.generation_b}"
        )
    print(f"rate: {wom_rate(code.params).total:.6f}")
    return 0


def cmd_encode(args) -> int:
    code = _load_code(args.code)
    messages = [int(m) for m in args.messages.split(",")]
    states = run_write_sequence(code, messages)
    print(f"code: {code.params}")
    for i, (m, state) in enumerate(zip(messages, states), start=1):
        print(f"i={i} m={m} state={format_state(state, code.q)}")
    return 0


def cmd_decode(args) -> int:
    code = _load_code(args.code)
    state = parse_state(args.state, code.q)
    hits = [
        (i, code.message_of(i, state))
        for i in range(1, code.t + 1)
        if code.in_image(i, state)
    ]
    if not hits:
        raise NotInImage(f"state {args.state} is not a codeword of any generation")
    for i, m in hits:
        print(f"i={i} m={m}")
    return 0


def cmd_compose(args) -> int:
    inner = _load_code(args.inner)
    outer = _load_code(args.outer)
    comp = iterate_construction(inner, outer, args.iterate)
    print(f"composite: {comp.params}")
    print(f"rate: {wom_rate(comp.params).total:.6f}")
    if args.trace:
        if args.state is None:
            raise WomError("--trace needs --state")
        if args.iterate < 1:
            raise WomError("--trace needs at least one composition")
        blocks = _parse_blocks(args.state, comp)
        view = comp.recover_generation([c for b in blocks for c in b])
        read = view.read_view
        print(f"stage p={read.p} l={read.l} i={read.i} b'={format_state(read.b_prime, 2)}")
        if read.i > 0:
            msg = composite_decode(comp, blocks)
            print(f"m={msg.m} m'={msg.m_prime} m1={msg.m1}")
        if view.write_view.p > comp.inner.params.t:
            print(f"memory full: all {comp.params.t} writes used")
        else:
            print(f"next write: i={view.write_view.i + 1} stage p={view.write_view.p}")
    return 0


def cmd_search_bound(args) -> int:
    if args.exact_A:
        exact_limit = 10**9
    elif args.exact_limit is not None:
        exact_limit = args.exact_limit
    else:
        exact_limit = DEFAULT_EXACT_LIMIT
    record = bound_record(args.q, args.n, args.i, args.budget, exact_limit)
    print(f"q={record.q} n={record.n} i={record.i}")
    if record.closed_form is not None:
        print(f"closed_form={record.closed_form}")
    if record.B is not None:
        print(f"B={record.B}")
    if record.A is not None:
        print(f"A={record.A}")
    print(f"exact={'yes' if record.exact else 'no'}")
    print(f"nodes={record.nodes}")
    print(f"provenance: {record.provenance}")
    return 0


def cmd_search_table(args) -> int:
    exact_limit = args.exact_limit if args.exact_limit is not None else DEFAULT_EXACT_LIMIT
    records = bound_table(args.q, args.n_max, args.budget, exact_limit, args.i_max)
    buffer = io.StringIO()
    write_bounds_csv(records, buffer, witness_dir=args.witness_dir)
    _emit_text(buffer.getvalue(), args.output)
    return 0


def cmd_search_greedy(args) -> int:
    code = greedy_laminar(args.q, args.n, args.t, args.budget)
    _emit_code(code, args.output)
    return 0


def cmd_transform(args) -> int:
    code = _load_code(args.code)
    if args.kind == "prepend-zero":
        out = prepend_zero_generation(code)
    elif args.kind == "merge":
        first, last = args.range
        out = merge_generations(code, first, last)
    else:
        out = split_generation(code, args.gen, args.groups)
    _emit_code(out, args.output)
    return 0


def cmd_rates_table(args) -> int:
    _emit_text(emit_rate_table(preset_rows(args.preset)), args.output)
    return 0


def cmd_catalog_list(args) -> int:
    for entry in load_catalog():
        props = entry.expected
        if props.is_laminar:
            label = "laminar"
        elif props.is_synchronous:
            label = "synchronous"
        elif props.is_decodable:
            label = "decodable"
        else:
            label = "valid"
        marks = []
        if props.is_fixed_rate:
            marks.append("fixed-rate")
        if props.contains_all_zero:
            marks.append("all-zero")
        suffix = f" ({', '.join(marks)})" if marks else ""
        print(f"{entry.id}: {entry.params} rate={entry.expected_rate:.4f} {label}{suffix}")
    return 0


def cmd_catalog_show(args) -> int:
    entry = catalog_entry(args.id)
    print(f"id: {entry.id}")
    print(f"params: {entry.params}")
    print(f"rate: {wom_rate(entry.params).total:.6f}")
    print(f"source: {entry.provenance}")
    for label, attr in _FLAGS:
        print(f"{label}: {'yes' if getattr(entry.expected, attr) else 'no'}")
    for i in range(1, entry.table.t + 1):
        classes = " ".join(
            "{" + ",".join(format_state(s, entry.table.q) for s in cls) + "}"
            for cls in entry.table.classes(i)
        )
        print(f"write {i}: {classes}")
    return 0


def cmd_catalog_export(args) -> int:
    entry = catalog_entry(args.id)
    _emit_code(entry.table, args.output)
    return 0


def cmd_fuzz(args) -> int:
    code = _load_code(args.code)
    rng = random.Random(args.seed)
    params = code.params
    for _ in range(args.sequences):
        messages = [rng.randint(1, params.M[i]) for i in range(params.t)]
        run_write_sequence(code, messages)
    print(f"ok: {args.sequences} sequences x {params.t} writes on {params}")
    return 0


# --- parser --------------------------------------------------------------------


def _range_pair(text: str) -> tuple[int, int]:
    first, sep, last = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected i:j, got {text!r}")
    try:
        return int(first), int(last)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers in i:j, got {text!r}") from None


def _grouping(text: str) -> tuple[tuple[int, ...], ...]:
    try:
        return tuple(
            tuple(int(m) for m in group.split(",")) for group in text.split("|")
        )
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected groups like 1,2|3, got {text!r}"
        ) from None


CODE_HELP = "code file (JSON) or catalog:<id>"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="womkit",
        description="Build, verify, compose, and measure write-once memory codes.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="reserved; searches currently run on one thread",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check one code and print its property report")
    p.add_argument("code", help=CODE_HELP)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("encode", help="play a message sequence from the empty memory")
    p.add_argument("code", help=CODE_HELP)
    p.add_argument("--messages", required=True, help="comma-separated messages, first write first")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="read the write count and message off a state")
    p.add_argument("code", help=CODE_HELP)
    p.add_argument("--state", required=True, help="digit string (q <= 10) or comma-separated cells")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("compose", help="concatenate two codes and report the composite")
    p.add_argument("inner", help=CODE_HELP)
    p.add_argument("outer", help=CODE_HELP)
    p.add_argument("--iterate", type=int, default=1, help="number of compositions (default 1)")
    p.add_argument("--trace", action="store_true", help="replay stage recovery for --state")
    p.add_argument(
        "--state",
        help="memory to trace: blocks joined with ',' (digit strings) or ';', or one flat state",
    )
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("search", help="slice searches and bounds")
    search_sub = p.add_subparsers(dest="search_command", required=True)

    b = search_sub.add_parser("bound", help="bounds for one weight slice")
    b.add_argument("--q", type=int, required=True)
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--i", type=int, required=True)
    b.add_argument("--budget", type=int, default=None, help="node budget override")
    b.add_argument(
        "--exact-limit",
        type=int,
        default=None,
        help="largest slice size searched for exact A",
    )
    b.add_argument(
        "--exact-A",
        action="store_true",
        help="search for exact A whatever the slice size",
    )
    b.set_defaults(func=cmd_search_bound)

    tb = search_sub.add_parser("table", help="bounds for every slice up to a length")
    tb.add_argument("--q", type=int, required=True)
    tb.add_argument("--n-max", type=int, required=True)
    tb.add_argument("--i-max", type=int, default=None)
    tb.add_argument("--budget", type=int, default=None)
    tb.add_argument("--exact-limit", type=int, default=None)
    tb.add_argument("--witness-dir", default=None, help="directory for witness JSON files")
    tb.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    tb.set_defaults(func=cmd_search_table)

    g = search_sub.add_parser("greedy", help="laminar code from maximum suitable partitions")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--t", type=int, required=True)
    g.add_argument("--budget", type=int, default=None)
    g.add_argument("-o", "--output", default=None, help="JSON path (default stdout)")
    g.set_defaults(func=cmd_search_greedy)

    p = sub.add_parser("transform", help="rewrite a code's generations")
    transform_sub = p.add_subparsers(dest="kind", required=True)

    tp = transform_sub.add_parser("prepend-zero", help="add the all-zero write up front")
    tp.add_argument("code", help=CODE_HELP)
    tp.add_argument("-o", "--output", default=None)
    tp.set_defaults(func=cmd_transform)

    tm = transform_sub.add_parser("merge", help="merge consecutive generations")
    tm.add_argument("code", help=CODE_HELP)
    tm.add_argument("--range", type=_range_pair, required=True, metavar="i:j")
    tm.add_argument("-o", "--output", default=None)
    tm.set_defaults(func=cmd_transform)

    ts = transform_sub.add_parser("split", help="split one generation into consecutive writes")
    ts.add_argument("code", help=CODE_HELP)
    ts.add_argument("--gen", type=int, required=True)
    ts.add_argument("--groups", type=_grouping, required=True, metavar="1,2|3")
    ts.add_argument("-o", "--output", default=None)
    ts.set_defaults(func=cmd_transform)

    p = sub.add_parser("rates", help="rate-loss accounting")
    rates_sub = p.add_subparsers(dest="rates_command", required=True)
    rt = rates_sub.add_parser("table", help="emit one comparison table as CSV")
    rt.add_argument("--preset", required=True, choices=sorted(PRESETS))
    rt.add_argument("-o", "--output", default=None, help="CSV path (default stdout)")
    rt.set_defaults(func=cmd_rates_table)

    p = sub.add_parser("catalog", help="built-in code tables")
    catalog_sub = p.add_subparsers(dest="catalog_command", required=True)
    cl = catalog_sub.add_parser("list", help="one line per entry")
    cl.set_defaults(func=cmd_catalog_list)
    cs = catalog_sub.add_parser("show", help="full report and class table for one entry")
    cs.add_argument("id")
    cs.set_defaults(func=cmd_catalog_show)
    ce = catalog_sub.add_parser("export", help="write one entry in the code file format")
    ce.add_argument("id")
    ce.add_argument("-o", "--output", default=None)
    ce.set_defaults(func=cmd_catalog_export)

    p = sub.add_parser("fuzz", help="seeded random write sequences with decode-back checks")
    p.add_argument("code", help=CODE_HELP)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--sequences", type=int, default=100)
    p.set_defaults(func=cmd_fuzz)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WomError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
