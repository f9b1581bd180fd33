"""Command-line driver: ``gen``, ``run``, ``compare`` and ``select``.

Every command verifies its results against the brute-force oracle and
exits non-zero when anything disagrees. Reports are comma-separated with
a header row; ``--out`` writes them to a file, standard output always
gets an aligned table.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Callable, Iterable, Sequence

from . import cost, events, oracle
from .candidates import SelectorStats, oracle_candidates, run_step2
from .mergetree import run_tree
from .spatial import DEFAULT_BUFFERING_CYCLES, N_SEEDS, run_chain, run_pair_chain

RUNNERS: dict[str, Callable] = {
    "spatial": run_chain,
    "modified": run_pair_chain,
    "mergetree": run_tree,
}


def _pmap(fn, items: Sequence, jobs: int) -> list:
    """Map in input order, optionally across worker processes."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [",".join(header)]
    lines += [",".join(str(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _join(*sections: str) -> str:
    return "\n".join(s for s in sections if s)


def _table(text: str) -> str:
    """Align blank-line separated CSV tables for the terminal."""
    sections: list[list[list[str]]] = []
    for block in text.split("\n\n"):
        rows = [line.split(",") for line in block.splitlines() if line]
        if rows:
            sections.append(rows)
    out = []
    for rows in sections:
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        for r in rows:
            out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        out.append("")
    return "\n".join(out)


def _emit(report: str, args) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report)
    if report:
        sys.stdout.write(_table(report))


def _load(args) -> list[events.Event]:
    return events.read_events(args.input)


def _seed_pts(seeds) -> str:
    return ";".join(str(t.pt) for t in seeds)


# --- commands -----------------------------------------------------------------


def cmd_gen(args) -> int:
    evs = (events.generate_event(args.seed, i) for i in range(args.events))
    if args.out:
        events.write_events(args.out, evs)
    else:
        for e in evs:
            sys.stdout.write(events.format_event(e))
    return 0


def _run_one(event, arch: str, buffering: int):
    seeds, lat = RUNNERS[arch](event, buffering_cycles=buffering)
    expected = oracle.top_k(events.seed_candidates(event), N_SEEDS)
    return seeds, lat, oracle.same_ranking(seeds, expected)


def cmd_run(args) -> int:
    evs = _load(args)
    results = _pmap(partial(_run_one, arch=args.arch, buffering=args.buffering_cycles), evs, args.jobs)
    rows = []
    failed = []
    for e, (seeds, lat, ok) in zip(evs, results):
        rows.append((e.id, args.arch, lat.sorting_cycles, lat.step1_cycles, "ok" if ok else "MISMATCH", _seed_pts(seeds)))
        if not ok:
            failed.append(e.id)
    report = _csv(("event", "arch", "S", "step1", "oracle", "seed_pts"), rows)
    if results:
        s_max = max(lat.sorting_cycles for _, lat, _ in results)
        step1 = max(lat.step1_cycles for _, lat, _ in results)
        report = _join(report, _csv(("arch", "S", "step1"), [(args.arch, s_max, step1)]))
    _emit(report, args)
    for eid in failed:
        print(f"error: event {eid}: {args.arch} seeds differ from oracle", file=sys.stderr)
    return 1 if failed else 0


def _compare_one(event, buffering: int):
    expected = oracle.top_k(events.seed_candidates(event), N_SEEDS)
    out = {}
    for arch, fn in RUNNERS.items():
        seeds, lat = fn(event, buffering_cycles=buffering)
        out[arch] = (lat, oracle.same_ranking(seeds, expected))
    return out


def latency_delta_pct(reference: float, sorting_cycles: float) -> int:
    """Percentage reduction of sorting latency against a reference value."""
    return round(100 * (reference - sorting_cycles) / reference)


def cmd_compare(args) -> int:
    evs = _load(args)
    results = _pmap(partial(_compare_one, buffering=args.buffering_cycles), evs, args.jobs)
    failed = [
        (e.id, arch) for e, res in zip(evs, results) for arch, (_, ok) in res.items() if not ok
    ]
    report = ""
    if results:
        header = ["arch", "S_min", "S_max", "step1_max", "events"]
        if args.reference_s is not None:
            header.append("delta_vs_reference_pct")
        rows = []
        for arch in RUNNERS:
            s = [res[arch][0].sorting_cycles for res in results]
            row = [arch, min(s), max(s), max(res[arch][0].step1_cycles for res in results), len(s)]
            if args.reference_s is not None:
                row.append(latency_delta_pct(args.reference_s, max(s)))
            rows.append(row)
        costs = cost.cost_report([cost.measure(arch, evs[0]) for arch in RUNNERS])
        report = _join(_csv(header, rows), costs)
    _emit(report, args)
    for eid, arch in failed:
        print(f"error: event {eid}: {arch} seeds differ from oracle", file=sys.stderr)
    return 1 if failed else 0


def _select_one(event, addressing: str, verify: bool):
    seeds, _ = run_chain(event)
    stats = SelectorStats()
    lists, _ = run_step2(event, seeds, addressing, stats)
    problems = []
    for rank, (seed, cands) in enumerate(zip(seeds, lists)):
        if cands != oracle_candidates(event, seed):
            problems.append(f"seed {rank}: candidates differ from oracle")
    other = None
    if verify:
        other = SelectorStats()
        alt = "naive" if addressing == "parity" else "parity"
        alt_lists, _ = run_step2(event, seeds, alt, other)
        if alt_lists != lists:
            problems.append(f"{addressing} and {alt} addressing disagree")
    counts = [(rank, seed.origin.region, len(c)) for rank, (seed, c) in enumerate(zip(seeds, lists))]
    return counts, stats, other, problems


def cmd_select(args) -> int:
    evs = _load(args)
    results = _pmap(partial(_select_one, addressing=args.addressing, verify=args.verify), evs, args.jobs)
    stats = SelectorStats()
    other = SelectorStats()
    rows = []
    errors = []
    for e, (counts, s, o, problems) in zip(evs, results):
        stats.merge(s)
        if o is not None:
            other.merge(o)
        rows += [(e.id, rank, region, n) for rank, region, n in counts]
        errors += [f"event {e.id}: {p}" for p in problems]
    report = ""
    if results:
        report = _join(stats.to_csv(), _csv(("event", "seed", "region", "candidates"), rows))
        if args.verify:
            alt = "naive" if args.addressing == "parity" else "parity"
            report = _join(report, cost.cost_report(selectors=[(args.addressing, stats), (alt, other)]))
        if args.addressing == "parity" and stats.max_fan_in > 4:
            errors.append(f"parity addressing used a {stats.max_fan_in}-way selection")
    _emit(report, args)
    for msg in errors:
        print(f"error: {msg}", file=sys.stderr)
    return 1 if errors or not cost.claims_pass(report) else 0


# --- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tautrig", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--in", dest="input", required=True, metavar="PATH", help="event file")
        sp.add_argument("--out", metavar="PATH", help="write the report (or events) here")
        sp.add_argument("--buffering-cycles", type=int, default=DEFAULT_BUFFERING_CYCLES, metavar="B")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    g = sub.add_parser("gen", help="write deterministic synthetic events")
    g.add_argument("--events", type=int, default=1, metavar="N")
    g.add_argument("--seed", type=int, default=0, metavar="S")
    common(g, needs_input=False)
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("run", help="run one sorter architecture")
    r.add_argument("--arch", choices=sorted(RUNNERS), default="spatial")
    common(r)
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("compare", help="run every architecture and compare latencies")
    c.add_argument("--reference-s", type=float, metavar="X", help="reference sorting latency")
    common(c)
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("select", help="seed selection followed by candidate selection")
    s.add_argument("--addressing", choices=("naive", "parity"), default="parity")
    s.add_argument("--verify", action="store_true", help="cross-check against the other addressing")
    common(s)
    s.set_defaults(func=cmd_select)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "gen" and args.events < 0:
        print("error: --events must be non-negative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except events.EventFormatError as exc:
        print(f"error: {getattr(args, 'input', '')}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
