"""Comparator and selector accounting for the sorter architectures.

Static counts are read off the implemented networks (the comparison sites
each cell declares or uses), never typed in by hand. Dynamic counts come
from running the record-level models under a ``CompareProbe``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

from . import spatial
from .candidates import SelectorStats
from .events import Event, seed_blocks
from .mergetree import ARRAY_CAPACITY, N_ARRAYS, MergeTree

ARCHITECTURES = ("spatial", "modified", "mergetree")


class CompareProbe:
    def __init__(self):
        self.hits: Counter = Counter()

    def hit(self, site) -> None:
        self.hits[site] += 1

    @property
    def total(self) -> int:
        return sum(self.hits.values())

    @property
    def sites(self) -> set:
        return set(self.hits)


@dataclass(frozen=True)
class CompareStats:
    architecture: str
    comparators_per_cell: int
    cells: int
    total_comparators: int
    cycles: Optional[int] = None
    dynamic_comparisons: Optional[int] = None


def _mergetree_parts(n_arrays: int = N_ARRAYS, capacity: int = ARRAY_CAPACITY):
    # inserting the last element of a full array compares it with the others
    fill_sites = capacity - 1
    nodes = n_arrays - 1
    return fill_sites, nodes


def static_costs(architecture: str, cells: Optional[int] = None) -> CompareStats:
    if architecture == "spatial":
        n = cells or spatial.N_CELLS
        per = len(spatial.CELL_SITES)
        return CompareStats("spatial", per, n, per * n)
    if architecture == "modified":
        n = cells or spatial.N_PAIR_CELLS
        per = len(spatial.SORT6_SITES)
        return CompareStats("modified", per, n, per * n)
    if architecture == "mergetree":
        fill_sites, nodes = _mergetree_parts()
        # cells counts fill arrays and merge nodes; each node has one comparator
        total = N_ARRAYS * fill_sites + nodes
        return CompareStats("mergetree", fill_sites, N_ARRAYS + nodes, total)
    raise ValueError(f"unknown architecture {architecture!r}")


def measure(architecture: str, event: Event) -> CompareStats:
    """Static counts plus cycles and comparisons from one record-level run."""
    probe = CompareProbe()
    blocks = seed_blocks(event)
    if architecture == "spatial":
        cycles = spatial.SorterChain().run(blocks, probe)
    elif architecture == "modified":
        cycles = spatial.PairChain().run(blocks, probe)
    elif architecture == "mergetree":
        tree = MergeTree()
        tree.run(blocks, probe)
        cycles = tree.fill_cycles + tree.merge_cycles
    else:
        raise ValueError(f"unknown architecture {architecture!r}")
    base = static_costs(architecture)
    return CompareStats(
        base.architecture,
        base.comparators_per_cell,
        base.cells,
        base.total_comparators,
        cycles,
        probe.total,
    )


def _fmt(v) -> str:
    return "" if v is None else str(v)


def cost_report(
    compare: Sequence[CompareStats] = (), selectors: Sequence[tuple[str, SelectorStats]] = ()
) -> str:
    """Comparator table, selector table and the ordering claims they support.

    Tables are separated by a blank line; no input gives an empty report.
    """
    sections = []
    if compare:
        rows = ["architecture,comparators_per_cell,cells,total_comparators,cycles,dynamic_comparisons"]
        for c in sorted(compare, key=lambda c: ARCHITECTURES.index(c.architecture)):
            rows.append(
                f"{c.architecture},{c.comparators_per_cell},{c.cells},{c.total_comparators},"
                f"{_fmt(c.cycles)},{_fmt(c.dynamic_comparisons)}"
            )
        sections.append(rows)
    if selectors:
        rows = ["addressing,site,fan_in,count"]
        for name, stats in sorted(selectors, key=lambda s: s[0]):
            rows += [f"{name},{site},{fan_in},{n}" for (site, fan_in), n in stats.rows()]
        sections.append(rows)
    claims = _claims(compare, selectors)
    if claims:
        rows = ["claim,lhs,rhs,status"]
        rows += [f"{name},{lhs},{rhs},{'PASS' if ok else 'FAIL'}" for name, lhs, rhs, ok in claims]
        sections.append(rows)
    return "\n".join("\n".join(rows) + "\n" for rows in sections)


def _claims(compare, selectors):
    out = []
    by_arch = {c.architecture: c for c in compare}
    if "spatial" in by_arch and "modified" in by_arch:
        lhs, rhs = by_arch["modified"].cells, by_arch["spatial"].cells
        out.append(("modified_cells_lt_spatial_cells", lhs, rhs, lhs < rhs))
    by_mode = dict(selectors)
    if "parity" in by_mode and "naive" in by_mode:
        lhs, rhs = by_mode["parity"].max_fan_in, by_mode["naive"].max_fan_in
        out.append(("parity_max_fan_in_lt_naive", lhs, rhs, lhs < rhs))
    return out


def claims_pass(report: str) -> bool:
    return not any(line.endswith(",FAIL") for line in report.splitlines())
