"""Command-line front end.

Commands
  tgroup    enumerate the normal regular subgroups and their quotient group
  verify    run the structural condition suite over every entry
  screen    run the necessary-condition filter for centerless groups
  oracle    brute-force cross-check inside the full symmetric group
  catalog   list the built-in corpus

Exit codes: 0 success, 2 input error, 3 enumeration budget exceeded,
4 internal consistency failure, 5 condition-suite failure on a centerless
group (reproducible failures of the last kind are significant, never silent).
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional

from .catalog import CATALOG, resolve_group
from .conditions import report_violations, run_condition_suite
from .errors import (
    BudgetExceededError,
    CapExceededError,
    GroupConstructionError,
    GroupFileError,
    InternalConsistencyError,
)
from .holomorph import HOL_ORDER_CAP, build_holomorph
from .morphisms import (
    AUT_ORDER_CAP,
    DEFAULT_SEARCH_BUDGET,
    automorphism_group,
    enumerate_homomorphisms,
)
from .oracle import brute_holomorph, brute_normalizer, oracle_T_order
from .regular import enumerate_regular_triplets, normal_regular_subgroups, t_group
from .reports import (
    RunReport,
    conditions_payload,
    screen_payload,
    tgroup_payload,
    write_report,
)
from .screen import screen_group

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4
EXIT_CONDITIONS = 5

_SLOW_HINT = "this catalog entry is gated behind --slow (long-running)"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="multiholo",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("tgroup", "normal regular subgroups and their quotient group"),
        ("verify", "structural condition suite over all entries"),
        ("screen", "necessary-condition filter for centerless groups"),
        ("oracle", "brute-force symmetric-group cross-check"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("group", help="catalog name, file path, or builtin expression")
        sp.add_argument("--format", choices=("text", "structured"), default="text")
        sp.add_argument("--out", metavar="PATH", help="write the structured report here")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--max-aut", type=int, default=AUT_ORDER_CAP)
        sp.add_argument("--max-hol", type=int, default=HOL_ORDER_CAP)
        sp.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
        sp.add_argument("--slow", action="store_true", help="allow long-running entries")
    sub.add_parser("catalog", help="list the built-in corpus")
    return p


def _load_group(args):
    name = args.group
    entry = CATALOG.get(name)
    if entry is not None and entry.slow and not args.slow:
        raise GroupFileError(f"{name}: {_SLOW_HINT}")
    return resolve_group(name)


def _triplets_parallel(group, aut, threads: int, budget: int):
    f_maps = enumerate_homomorphisms(group, aut.carrier, budget=budget)
    if threads <= 1 or len(f_maps) < 2 * threads:
        return enumerate_regular_triplets(group, aut, f_maps=f_maps, budget=budget)
    import multiprocessing as mp

    shards = [list(range(i, len(f_maps), threads)) for i in range(threads)]
    ctx = mp.get_context("fork")
    with ctx.Pool(threads) as pool:
        parts = pool.starmap(
            _triplet_shard,
            [(group, aut, shard, budget) for shard in shards],
        )
    merged = [t for part in parts for t in part]
    merged.sort(key=lambda t: (t.f.images, t.g.images))
    return merged


def _triplet_shard(group, aut, indices, budget):
    return enumerate_regular_triplets(group, aut, f_indices=indices, budget=budget)


def _emit(args, report: RunReport, text_lines: list[str], elapsed: float) -> None:
    if args.out:
        write_report(report, args.out)
    if args.format == "structured":
        sys.stdout.write(report.to_text())
    else:
        for line in text_lines:
            print(line)
        print(f"elapsed: {elapsed:.2f}s")


def _cmd_tgroup(args) -> int:
    group = _load_group(args)
    start = time.monotonic()
    aut = automorphism_group(group, max_order=args.max_aut, budget=args.budget)
    hol = build_holomorph(group, aut, max_order=args.max_hol)
    trips = _triplets_parallel(group, aut, args.threads, args.budget)
    entries = normal_regular_subgroups(group, aut, hol, trips, budget=args.budget)
    result = t_group(group, aut, hol, entries, budget=args.budget)
    elapsed = time.monotonic() - start
    report = RunReport(
        command="tgroup",
        group_name=group.name,
        group_order=group.order,
        payload=tgroup_payload(result),
        counters={"triplets": len(trips), "automorphisms": aut.order},
    )
    lines = [
        f"group {group.name} of order {group.order}",
        f"automorphisms: {aut.order}; holomorph order: {hol.order}",
        f"normal regular subgroups: {result.order}",
        f"quotient group: order {result.order}, abelian={result.is_abelian}, "
        f"exponent={result.exponent}, elementary_2_abelian={result.is_elementary_2_abelian}",
        f"identity entry {result.identity_id}; inversion-class entry {result.iota_id}",
    ]
    for e in result.entries:
        lines.append(f"  entry {e.entry_id}: g={list(e.g_array)}")
    _emit(args, report, lines, elapsed)
    return EXIT_OK


def _cmd_verify(args) -> int:
    group = _load_group(args)
    start = time.monotonic()
    aut = automorphism_group(group, max_order=args.max_aut, budget=args.budget)
    hol = build_holomorph(group, aut, max_order=args.max_hol)
    trips = _triplets_parallel(group, aut, args.threads, args.budget)
    entries = normal_regular_subgroups(group, aut, hol, trips, budget=args.budget)
    reports = run_condition_suite(group, aut, hol, entries)
    violations = {r.entry_id: report_violations(r) for r in reports}
    bad = {k: v for k, v in violations.items() if v}
    elapsed = time.monotonic() - start
    report = RunReport(
        command="verify",
        group_name=group.name,
        group_order=group.order,
        payload=conditions_payload(reports, violations),
        counters={"entries": len(entries)},
    )
    lines = [f"group {group.name}: {len(entries)} entries"]
    for r in reports:
        status = "ok" if not violations[r.entry_id] else "FAIL"
        scope = "checked" if r.hypothesis_met else "informative (center non-trivial)"
        lines.append(
            f"  entry {r.entry_id}: {status} [{scope}] structure={sum(r.structure)}/16 "
            f"square={r.square_in_hol} inner={r.inner_coincide}"
        )
    if bad:
        lines.append(f"condition failures on centerless group: {sorted(bad)}")
    _emit(args, report, lines, elapsed)
    return EXIT_CONDITIONS if bad else EXIT_OK


def _cmd_screen(args) -> int:
    group = _load_group(args)
    start = time.monotonic()
    aut = automorphism_group(group, max_order=args.max_aut, budget=args.budget)
    result = screen_group(group, aut)
    elapsed = time.monotonic() - start
    report = RunReport(
        command="screen",
        group_name=group.name,
        group_order=group.order,
        payload=screen_payload(result),
        counters=dict(result.counters),
    )
    lines = [
        f"group {group.name} of order {group.order}",
        f"centerless: {'yes' if result.centerless else 'no'}",
    ]
    if result.witnesses:
        lines.append(f"witnesses: {len(result.witnesses)}")
        for w in result.witnesses:
            lines.append(f"  K1={list(w.k1)} K2={list(w.k2)} |Q1|={len(w.q1)} |Q2|={len(w.q2)}")
    else:
        lines.append("witnesses: none")
    _emit(args, report, lines, elapsed)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    group = _load_group(args)
    cap = 8 if args.slow else 7
    if group.order > cap:
        raise GroupFileError(
            f"oracle degree {group.order} needs {'a bigger cap' if args.slow else '--slow'}"
        )
    start = time.monotonic()
    aut = automorphism_group(group, max_order=args.max_aut)
    hol = build_holomorph(group, aut, max_order=args.max_hol)
    brute = brute_holomorph(group, cap=cap)
    built = sorted(hol.realized(i) for i in range(hol.order))
    hol_match = built == sorted(brute.elements)
    nhol = brute_normalizer(group.order, brute.elements, cap=cap)
    t_order = nhol.order // brute.order
    entries = normal_regular_subgroups(group, aut, hol, budget=args.budget)
    agrees = len(entries) == t_order
    elapsed = time.monotonic() - start
    report = RunReport(
        command="oracle",
        group_name=group.name,
        group_order=group.order,
        payload={
            "hol_order": brute.order,
            "nhol_order": nhol.order,
            "t_order": t_order,
            "hol_sets_equal": hol_match,
            "main_path_entries": len(entries),
            "main_path_agrees": agrees,
        },
    )
    lines = [
        f"group {group.name}: Hol order {brute.order}, NHol order {nhol.order}, "
        f"T order {t_order}",
        f"built holomorph equals brute normalizer: {'yes' if hol_match else 'NO'}",
        f"main-path agreement: {'yes' if agrees else 'NO'}",
    ]
    _emit(args, report, lines, elapsed)
    if not (hol_match and agrees):
        raise InternalConsistencyError("oracle disagreement")
    return EXIT_OK


def _cmd_catalog(args) -> int:
    print(f"{'name':<14} {'order':>6}  flags  description")
    for entry in CATALOG.values():
        flags = "slow" if entry.slow else ""
        print(f"{entry.name:<14} {entry.order:>6}  {flags:<5}  {entry.description}")
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = _parser().parse_args(argv)
    handlers = {
        "tgroup": _cmd_tgroup,
        "verify": _cmd_verify,
        "screen": _cmd_screen,
        "oracle": _cmd_oracle,
        "catalog": _cmd_catalog,
    }
    try:
        return handlers[args.command](args)
    except (GroupFileError, GroupConstructionError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BudgetExceededError, CapExceededError) as exc:
        print(f"budget/cap exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
