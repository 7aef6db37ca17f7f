"""Command-line front end: ``dngroups analyze|distinguish|verify|reduce|tables``.

Exit codes: 0 ok, 1 verification failed (or a table contradiction),
2 input error, 3 budget exhausted, 4 precondition not met.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .catalog import builtin_catalog, format_record, load_catalog, parse_group_record, record_from_group
from .chain import is_transitive
from .cycles import format_cycles
from .distinguish import (
    DEFAULT_BUDGET,
    DEFAULT_TRIALS,
    Coloring,
    Limits,
    distinguishing_number,
    exhaustive_refute,
    extend_partition,
    graded_subset,
    random_search,
    stabilizer_is_trivial,
)
from .errors import BudgetExceeded, GroupError, OrderExceedsCap, PreconditionFailed
from .structure import (
    DEFAULT_CAP,
    is_primitive,
    is_quasiprimitive,
    is_semiprimitive,
    is_semiregular,
    kernel_of_block_action,
    quotient_action,
    some_maximal_block_system,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_BUDGET, EXIT_PRECONDITION = 0, 1, 2, 3, 4
TABLE_COLUMNS = ("name", "degree", "order", "expected_D", "computed_D", "status", "colorings_examined")
TABLES_BUDGET = 1 << 20


class InputError(Exception):
    pass


def _read_record(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_group_record(text)
    except GroupError as exc:
        raise InputError(f"{path}: {exc}") from None


def _limits(args):
    return Limits(trials=args.trials, seed=args.seed or 0, budget=args.budget, workers=args.workers)


def _render_coloring(coloring, as_partition):
    if coloring is None:
        return None
    if as_partition:
        return [[x + 1 for x in part] for part in coloring.parts()]
    return str(coloring)


def _emit(payload, as_json, out=None):
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    width = max(len(k) for k in payload)
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        out.write(f"{key.ljust(width)}  {value}\n")


def _flag(fn, group, cap):
    try:
        return {"value": bool(fn(group, cap)), "reason": None}
    except OrderExceedsCap as exc:
        return {"value": None, "reason": str(exc)}


def _d_payload(result, as_partition):
    d = result.as_dict()
    d["certificate"] = _render_coloring(result.certificate, as_partition)
    return d


def _analyze_text(report):
    lines = {k: report[k] for k in ("name", "degree", "order")}
    for flag, v in report["flags"].items():
        lines[flag] = {True: "yes", False: "no"}.get(v["value"], f"unknown ({v['reason']})")
    d = report["D"]
    lines["D"] = f"{d['D']} (exact)" if d["status"] == "exact" else f"{d['lo']}..{d['hi']} ({d['note']})"
    lines["certificate"] = d["certificate"]
    lines["refuted"] = ", ".join(f"k={r['k']} ({r['examined']} colorings, {r['mode']})" for r in d["refutations"]) or "-"
    lines["seed"] = report["seed"]
    lines["seconds"] = report["timing"]["seconds"]
    return lines


# -- commands ------------------------------------------------------------------


def cmd_analyze(args):
    entry = _read_record(args.file)
    G = entry.group()
    t0 = time.perf_counter()
    flags = {"transitive": {"value": is_transitive(G), "reason": None}}
    flags["primitive"] = {"value": is_primitive(G), "reason": None}
    flags["quasiprimitive"] = _flag(is_quasiprimitive, G, args.cap)
    flags["semiprimitive"] = _flag(is_semiprimitive, G, args.cap)
    result = distinguishing_number(G, _limits(args))
    report = {
        "name": entry.name,
        "degree": G.degree,
        "order": G.order,
        "flags": flags,
        "D": _d_payload(result, args.as_partition),
        "seed": args.seed or 0,
        "budget": args.budget,
        "cap": args.cap,
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
    }
    if args.json:
        _emit(report, True)
    else:
        _emit(_analyze_text(report), False)
    undecided = not result.exact or any(f["value"] is None for f in flags.values())
    return EXIT_BUDGET if undecided else EXIT_OK


def cmd_distinguish(args):
    entry = _read_record(args.file)
    G = entry.group()
    limits = _limits(args)
    payload = {"name": entry.name, "degree": G.degree, "order": G.order, "mode": args.mode, "seed": limits.seed}
    code = EXIT_OK
    if args.k is not None:
        if args.k < 1:
            raise InputError("--k must be positive")
        payload["k"] = args.k
        cert = random_search(G.chain, args.k, limits.trials, limits.seed, limits.workers)
        payload.update(exists=None, certificate=None, examined=0)
        if cert is not None:
            payload.update(exists=True, certificate=_render_coloring(cert, args.as_partition))
        elif args.mode == "exact":
            try:
                r = exhaustive_refute(G.chain, args.k, limits.budget, limits.element_cap)
            except BudgetExceeded as exc:
                payload["note"] = f"refutation needs {exc.needed} colorings, budget {exc.budget}"
                code = EXIT_BUDGET
            else:
                payload.update(
                    exists=not r.refuted,
                    certificate=_render_coloring(r.coloring, args.as_partition),
                    examined=r.examined,
                )
    elif args.mode == "exact":
        result = distinguishing_number(G, limits)
        payload.update(_d_payload(result, args.as_partition))
        if not result.exact:
            code = EXIT_BUDGET
    else:
        # random mode only ever proves upper bounds
        cert = Coloring((0,) * G.degree) if G.order == 1 else None
        for k in range(2, G.degree):
            if cert is not None:
                break
            cert = random_search(G.chain, k, limits.trials, limits.seed, limits.workers)
        if cert is None:
            cert = Coloring(tuple(range(G.degree)))
        payload.update(status="upper-bound", hi=cert.k, certificate=_render_coloring(cert, args.as_partition))
    _emit(payload, True)
    return code


def _parse_coloring(text, n):
    try:
        labels = [int(x) for x in text.replace(" ", "").split(",")]
    except ValueError:
        raise InputError(f"coloring must be comma-separated integers, got {text!r}") from None
    if len(labels) != n:
        raise InputError(f"coloring has length {len(labels)}, group degree is {n}")
    if any(x < 0 for x in labels):
        raise InputError("colors must be non-negative")
    return Coloring.from_labels(labels)


def cmd_verify(args):
    entry = _read_record(args.file)
    G = entry.group()
    coloring = _parse_coloring(args.coloring, G.degree)
    ok, witness = stabilizer_is_trivial(G.chain, coloring)
    if ok:
        print("distinguishing")
        return EXIT_OK
    print(f"not distinguishing; fixed by {format_cycles(witness)}")
    return EXIT_FAILED


def _lifted_certificate(G, blocks, limits):
    """``(certificate, method, quotient_result)``; the certificate is None
    when the kernel is not semiregular."""
    kernel = kernel_of_block_action(G, blocks)
    if not is_semiregular(kernel):
        return None, "kernel of the block action is not semiregular", None
    m = len(blocks)
    if all(len(c) >= m - 1 for c in blocks.cells):
        return graded_subset(G, blocks), "graded subset", None
    image = quotient_action(G, blocks).image
    result = distinguishing_number(image, limits)
    return extend_partition(G, blocks, result.certificate), "lifted quotient certificate", result


def cmd_reduce(args):
    entry = _read_record(args.file)
    G = entry.group()
    if not is_transitive(G):
        print("group is not transitive; nothing to reduce", file=sys.stderr)
        return EXIT_PRECONDITION
    if is_primitive(G):
        print("group is primitive; nothing to reduce", file=sys.stderr)
        return EXIT_PRECONDITION
    blocks = some_maximal_block_system(G)
    q = quotient_action(G, blocks)
    kernel = kernel_of_block_action(G, blocks)
    quotient = record_from_group(q.image, f"{entry.name} on blocks", expected_order=q.image.order)
    record = format_record(quotient)
    if args.quotient_out:
        with open(args.quotient_out, "w", encoding="utf-8") as fh:
            fh.write(record)
    cert, method, qres = _lifted_certificate(G, blocks, _limits(args))
    verified = stabilizer_is_trivial(G.chain, cert)[0] if cert is not None else None
    payload = {
        "name": entry.name,
        "degree": G.degree,
        "order": G.order,
        "blocks": [[x + 1 for x in c] for c in blocks.cells],
        "block_count": len(blocks),
        "kernel_order": kernel.order,
        "quotient_order": q.image.order,
        "quotient_record": record,
        "certificate": _render_coloring(cert, args.as_partition),
        "certificate_method": method,
        "certificate_verified": verified,
    }
    if qres is not None:
        payload["quotient_D"] = qres.as_dict()
    _emit(payload, args.json)
    return EXIT_OK


def _table_row(entry, limits):
    G = entry.group()
    row = dict.fromkeys(TABLE_COLUMNS, "")
    row.update(name=entry.name, degree=entry.degree, order=G.order, expected_D=entry.expected_D)
    result = distinguishing_number(G, limits)
    examined = sum(r.examined for r in result.refutations)
    contradiction = False
    if result.exact:
        row.update(computed_D=result.lo, status="exact")
        contradiction = entry.expected_D is not None and result.lo != entry.expected_D
    else:
        row.update(computed_D=f"{result.lo}..{result.hi}", status="upper-bound-only")
        if entry.expected_D is not None:
            contradiction = not result.lo <= entry.expected_D <= result.hi
        row["note"] = result.note
    if contradiction:
        row["status"] = "contradiction"
    row["colorings_examined"] = examined
    row["certificate"] = str(result.certificate)
    return row, contradiction


def cmd_tables(args):
    if args.catalog:
        try:
            entries = load_catalog(args.catalog)
        except OSError as exc:
            raise InputError(f"cannot read {args.catalog}: {exc.strerror}") from None
        except GroupError as exc:
            raise InputError(f"{args.catalog}: {exc}") from None
    else:
        entries = builtin_catalog()
    limits = _limits(args)
    rows, bad = [], False
    for e in entries:
        if args.max_degree is not None and e.degree > args.max_degree:
            row = dict.fromkeys(TABLE_COLUMNS, "")
            row.update(name=e.name, degree=e.degree, order=e.expected_order, expected_D=e.expected_D)
            row.update(status="skipped", note=f"degree above --max-degree {args.max_degree}", colorings_examined=0)
            rows.append(row)
            continue
        row, contradiction = _table_row(e, limits)
        bad |= contradiction
        rows.append(row)
    if args.out == "json":
        _emit({"columns": list(TABLE_COLUMNS), "budget": args.budget, "rows": rows}, True)
    else:
        print("\t".join(TABLE_COLUMNS))
        for r in rows:
            print("\t".join("" if r[c] is None else str(r[c]) for c in TABLE_COLUMNS))
    return EXIT_FAILED if bad else EXIT_OK


# -- argument parsing ------------------------------------------------------------


def _common(p, budget=DEFAULT_BUDGET):
    p.add_argument("--seed", type=int, default=None, help="random seed (required when CI_DETERMINISTIC=1)")
    p.add_argument("--budget", type=int, default=budget, help="max colorings examined by a refutation")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="random colorings tried per k")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--as-partition", action="store_true", help="print certificates as lists of parts")


def build_parser():
    parser = argparse.ArgumentParser(prog="dngroups", description="Distinguishing numbers of permutation groups.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify a group and compute D")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="element-scan cap for the predicates")
    p.add_argument("--json", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_analyze, randomized=True)

    p = sub.add_parser("distinguish", help="D, or a verdict for one k")
    p.add_argument("file")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--mode", choices=("random", "exact"), default="exact")
    _common(p)
    p.set_defaults(func=cmd_distinguish, randomized=True)

    p = sub.add_parser("verify", help="check that a coloring is distinguishing")
    p.add_argument("file")
    p.add_argument("coloring", help="comma-separated colors, one per point")
    p.set_defaults(func=cmd_verify, randomized=False)

    p = sub.add_parser("reduce", help="maximal block system, quotient and lifted certificate")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--quotient-out", default=None, help="write the quotient record to this path")
    _common(p)
    p.set_defaults(func=cmd_reduce, randomized=True)

    p = sub.add_parser("tables", help="recompute D over a catalog")
    p.add_argument("--catalog", default=None, help="catalog file (default: bundled)")
    p.add_argument("--out", choices=("tsv", "json"), default="tsv")
    p.add_argument("--max-degree", type=int, default=None)
    _common(p, budget=TABLES_BUDGET)
    p.set_defaults(func=cmd_tables, randomized=True)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.randomized and os.environ.get("CI_DETERMINISTIC") == "1" and args.seed is None:
        print("CI_DETERMINISTIC=1: --seed is required", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionFailed as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
