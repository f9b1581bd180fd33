"""Per-seed candidate gathering from a 2x2 region neighbourhood.

Two ways of fetching the four regions are provided:

* naive: index the 36-region buffer directly with four region numbers,
  i.e. four 36-way selections;
* parity: keep rows 0-7 in a 4x8 array (even rows in the left half, odd
  rows in the right half) plus a separate last-row array, and address a
  neighbourhood by one even row, one odd row, an optional last-row
  substitution and one even plus one odd column.

Every data-dependent selection records its fan-in in a ``SelectorStats``
so the width of the implied multiplexers can be compared.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Literal, NamedTuple, Sequence

from .events import (
    N_COLS,
    N_REGIONS,
    N_ROWS,
    Event,
    Quadrant,
    Region,
    Track,
    coord_of,
    index_of,
    neighborhood,
)
from .oracle import top_k

CANDIDATE_CAP = 30
LAST_ROW = N_ROWS - 1
HALF = N_COLS  # width of one half of a paired row


class SelectorStats:
    """Fan-in of every selection site, with invocation counts.

    Safe to share between threads.
    """

    def __init__(self):
        self._counts: Counter = Counter()
        self._lock = threading.Lock()

    def record(self, site: str, fan_in: int, times: int = 1) -> None:
        with self._lock:
            self._counts[(site, fan_in)] += times

    def merge(self, other: "SelectorStats") -> "SelectorStats":
        for (site, fan_in), n in other.rows():
            self.record(site, fan_in, n)
        return self

    def rows(self) -> list[tuple[tuple[str, int], int]]:
        with self._lock:
            return sorted(self._counts.items())

    @property
    def fan_ins(self) -> set[int]:
        return {f for (_, f), _ in self.rows()}

    @property
    def max_fan_in(self) -> int:
        return max(self.fan_ins, default=0)

    def to_csv(self) -> str:
        lines = ["site,fan_in,count"]
        lines += [f"{site},{fan_in},{n}" for (site, fan_in), n in self.rows()]
        return "\n".join(lines) + "\n"


# --- storage -----------------------------------------------------------------


@dataclass(frozen=True)
class TrackGrid:
    paired: tuple[tuple[Region, ...], ...]  # 4 x 8
    last_row: tuple[Region, ...]  # 4

    def regions(self) -> list[Region]:
        out = []
        for p in self.paired:
            out.extend(p[:HALF])
            out.extend(p[HALF:])
        out.extend(self.last_row)
        return out


def grid_slot(index: int) -> tuple:
    """Where region ``index`` lives: ``("paired", p, j)`` or ``("last", j)``."""
    row, col = coord_of(index)
    if row == LAST_ROW:
        return ("last", col)
    return ("paired", row // 2, col + HALF * (row % 2))


def build_grid(event: Event) -> TrackGrid:
    paired = [[None] * (2 * HALF) for _ in range(LAST_ROW // 2)]
    last = [None] * N_COLS
    for region in event.regions:
        slot = grid_slot(region.index)
        if slot[0] == "last":
            last[slot[1]] = region
        else:
            paired[slot[1]][slot[2]] = region
    return TrackGrid(tuple(map(tuple, paired)), tuple(last))


# --- addressing --------------------------------------------------------------


@dataclass(frozen=True)
class RegionSelector:
    even_row_sel: int  # rows 0, 2, 4, 6
    odd_row_sel: int  # rows 1, 3, 5, 7
    use_last_row: bool
    last_row_role: Literal["even", "odd"]
    even_col_sel: int  # cols 0, 2
    odd_col_sel: int  # cols 1, 3

    def rows(self) -> tuple[int, int]:
        """(row in the even role, row in the odd role)."""
        even = 2 * self.even_row_sel
        odd = 2 * self.odd_row_sel + 1
        if self.use_last_row:
            if self.last_row_role == "even":
                even = LAST_ROW
            else:
                odd = LAST_ROW
        return even, odd

    def cols(self) -> tuple[int, int]:
        return 2 * self.even_col_sel, 2 * self.odd_col_sel + 1

    def decode(self) -> frozenset[int]:
        rows, cols = self.rows(), self.cols()
        return frozenset(r * N_COLS + c for r in rows for c in cols)


def _row_roles(rows: set[int]) -> tuple[int, int]:
    """Split a pair of adjacent rows into (even role, odd role).

    Row 8 is even by number but pairs with both row 7 and row 0; it takes
    whichever role its partner leaves free.
    """
    if len(rows) != 2:
        raise ValueError(f"expected two distinct rows, got {sorted(rows)}")
    a, b = sorted(rows)
    if (a, b) == (0, LAST_ROW):
        return 0, LAST_ROW
    if b - a != 1:
        raise ValueError(f"rows {a} and {b} are not adjacent")
    return (a, b) if a % 2 == 0 else (b, a)


def _col_roles(cols: set[int]) -> tuple[int, int]:
    if len(cols) != 2:
        raise ValueError(f"expected two distinct columns, got {sorted(cols)}")
    a, b = sorted(cols)
    if b - a != 1:
        raise ValueError(f"columns {a} and {b} are not adjacent")
    return (a, b) if a % 2 == 0 else (b, a)


def _split(regions: Iterable[int]) -> tuple[tuple[int, int], tuple[int, int]]:
    regions = set(regions)
    for r in regions:
        if not 0 <= r < N_REGIONS:
            raise ValueError(f"region index {r} out of range")
    coords = [coord_of(r) for r in regions]
    rows = {c.row for c in coords}
    cols = {c.col for c in coords}
    if len(regions) != 4 or len(rows) != 2 or len(cols) != 2:
        raise ValueError(f"{sorted(regions)} is not a 2x2 neighbourhood")
    return _row_roles(rows), _col_roles(cols)


def selector_from_neighborhood(regions: Iterable[int]) -> RegionSelector:
    (even_row, odd_row), (even_col, odd_col) = _split(regions)
    use_last = LAST_ROW in (even_row, odd_row)
    role = "even" if even_row == LAST_ROW else "odd"
    return RegionSelector(
        even_row_sel=0 if even_row == LAST_ROW else even_row // 2,
        odd_row_sel=0 if odd_row == LAST_ROW else odd_row // 2,
        use_last_row=use_last,
        last_row_role=role,
        even_col_sel=even_col // 2,
        odd_col_sel=odd_col // 2,
    )


class Block2x2(NamedTuple):
    row_even: tuple[Region, Region]  # (even col, odd col)
    row_odd: tuple[Region, Region]

    def indices(self) -> list[int]:
        return [r.index for r in self.row_even + self.row_odd]


def _select(options: Sequence, sel: int, site: str, stats: SelectorStats):
    stats.record(site, len(options))
    return options[sel]


def select_parity(g: TrackGrid, s: RegionSelector, stats: SelectorStats) -> Block2x2:
    """Fetch a neighbourhood with 4-way row and 2-way last-row/column muxes."""
    left = tuple(p[:HALF] for p in g.paired)
    right = tuple(p[HALF:] for p in g.paired)
    even_row = _select(left, s.even_row_sel, "row_even", stats)
    odd_row = _select(right, s.odd_row_sel, "row_odd", stats)
    # one 2:1 mux swaps the last row into the slot its role names
    if s.last_row_role == "even":
        even_row = _select((even_row, g.last_row), int(s.use_last_row), "last_row", stats)
    else:
        odd_row = _select((odd_row, g.last_row), int(s.use_last_row), "last_row", stats)
    even_col = _select((0, 2), s.even_col_sel, "col_even", stats)
    odd_col = _select((1, 3), s.odd_col_sel, "col_odd", stats)
    return Block2x2((even_row[even_col], even_row[odd_col]), (odd_row[even_col], odd_row[odd_col]))


def select_naive(buffer: Sequence[Region], regions: Iterable[int], stats: SelectorStats) -> Block2x2:
    """Fetch a neighbourhood by four direct region-index lookups."""
    (even_row, odd_row), (even_col, odd_col) = _split(regions)

    def fetch(row, col):
        return _select(buffer, index_of((row, col)), "region_index", stats)

    return Block2x2(
        (fetch(even_row, even_col), fetch(even_row, odd_col)),
        (fetch(odd_row, even_col), fetch(odd_row, odd_col)),
    )


# --- candidates ----------------------------------------------------------------


def neighborhood_tracks(block: Block2x2, seed: Track | None = None) -> list[Track]:
    """All tracks of the four regions in region/slot order, minus the seed."""
    regions = sorted(block.row_even + block.row_odd, key=lambda r: r.index)
    skip = seed.origin if seed is not None else None
    return [t for r in regions for t in r.tracks if t.origin != skip]


def gather_candidates(block: Block2x2, seed: Track, cap: int = CANDIDATE_CAP) -> list[Track]:
    """Highest-pT neighbourhood tracks, at most ``cap``, seed excluded."""
    tracks = neighborhood_tracks(block, seed)
    return sorted(tracks, key=lambda t: t.pt, reverse=True)[:cap]


Addressing = Literal["naive", "parity"]


def seed_neighborhood(seed: Track) -> frozenset[int]:
    return neighborhood(seed.origin.region, Quadrant.of(seed))


def run_step2(
    event: Event,
    seeds: Sequence[Track],
    addressing: Addressing = "parity",
    stats: SelectorStats | None = None,
    cap: int = CANDIDATE_CAP,
) -> tuple[list[list[Track]], SelectorStats]:
    if stats is None:
        stats = SelectorStats()
    if addressing == "parity":
        grid = build_grid(event)
    elif addressing != "naive":
        raise ValueError(f"unknown addressing mode {addressing!r}")
    out = []
    for seed in seeds:
        hood = seed_neighborhood(seed)
        if addressing == "parity":
            block = select_parity(grid, selector_from_neighborhood(hood), stats)
        else:
            block = select_naive(event.regions, hood, stats)
        out.append(gather_candidates(block, seed, cap))
    return out, stats


def oracle_candidates(event: Event, seed: Track, cap: int = CANDIDATE_CAP) -> list[Track]:
    """Reference: top-``cap`` of the neighbourhood's non-seed tracks."""
    hood = sorted(seed_neighborhood(seed))
    tracks = [t for r in hood for t in event.regions[r].tracks if t.origin != seed.origin]
    return top_k(tracks, min(cap, len(tracks)))
