"""Tracks, regions, events and the 9x4 detector grid.

Events stream one region at a time. Each region carries fixed blocks of
22 charged, 13 photon and 10 neutral tracks; the first four charged
tracks of every region are the seed candidates and arrive sorted by
descending pT.

The grid is row-major (``index = 4 * row + col``). Rows wrap around
(row 8 touches row 0), columns do not.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

import numpy as np

N_ROWS = 9
N_COLS = 4
N_REGIONS = N_ROWS * N_COLS
N_CHARGED = 22
N_PHOTON = 13
N_NEUTRAL = 10
TRACKS_PER_REGION = N_CHARGED + N_PHOTON + N_NEUTRAL
SEEDS_PER_REGION = 4
N_SEED_CANDIDATES = N_REGIONS * SEEDS_PER_REGION
PT_MAX = 0xFFFF
QUALITY_MAX = 0xFF


class Kind(str, enum.Enum):
    CHARGED = "c"
    PHOTON = "p"
    NEUTRAL = "n"


_BLOCK_KINDS = (
    (Kind.CHARGED, N_CHARGED),
    (Kind.PHOTON, N_PHOTON),
    (Kind.NEUTRAL, N_NEUTRAL),
)


class Origin(NamedTuple):
    region: int
    slot: int  # 0-44 across charged, photon, neutral


@dataclass(frozen=True, slots=True)
class Track:
    pt: int
    sub_row: int
    sub_col: int
    kind: Kind
    quality: int
    origin: Origin

    @property
    def stream_pos(self) -> int:
        return self.origin.region * TRACKS_PER_REGION + self.origin.slot


@dataclass(frozen=True, slots=True)
class Region:
    index: int
    charged: tuple[Track, ...]
    photon: tuple[Track, ...]
    neutral: tuple[Track, ...]

    def __post_init__(self):
        if not 0 <= self.index < N_REGIONS:
            raise ValueError(f"region index {self.index} out of range")
        sizes = (len(self.charged), len(self.photon), len(self.neutral))
        if sizes != (N_CHARGED, N_PHOTON, N_NEUTRAL):
            raise ValueError(f"region {self.index}: block sizes {sizes}")
        head = self.charged[:SEEDS_PER_REGION]
        if any(a.pt < b.pt for a, b in zip(head, head[1:])):
            raise ValueError(f"region {self.index}: seed block not sorted")

    @property
    def tracks(self) -> tuple[Track, ...]:
        return self.charged + self.photon + self.neutral


@dataclass(frozen=True, slots=True)
class Event:
    id: int
    regions: tuple[Region, ...]

    def __post_init__(self):
        if len(self.regions) != N_REGIONS:
            raise ValueError(f"event {self.id}: {len(self.regions)} regions")
        for i, r in enumerate(self.regions):
            if r.index != i:
                raise ValueError(f"event {self.id}: region {r.index} at slot {i}")


class GridCoord(NamedTuple):
    row: int
    col: int


class Quadrant(NamedTuple):
    row_dir: int
    col_dir: int

    @classmethod
    def of(cls, track: Track) -> "Quadrant":
        return cls(1 if track.sub_row else -1, 1 if track.sub_col else -1)


ALL_QUADRANTS = tuple(Quadrant(r, c) for r in (-1, 1) for c in (-1, 1))


def _check_index(index: int) -> None:
    if not 0 <= index < N_REGIONS:
        raise ValueError(f"region index {index} not in 0..{N_REGIONS - 1}")


def coord_of(index: int) -> GridCoord:
    _check_index(index)
    return GridCoord(*divmod(index, N_COLS))


def index_of(coord: GridCoord) -> int:
    row, col = coord
    if not (0 <= row < N_ROWS and 0 <= col < N_COLS):
        raise ValueError(f"grid coordinate {coord} out of range")
    return row * N_COLS + col


def neighbor_rows(row: int, row_dir: int) -> tuple[int, int]:
    return row, (row + row_dir) % N_ROWS


def neighbor_cols(col: int, col_dir: int) -> tuple[int, int]:
    other = col + col_dir
    if not 0 <= other < N_COLS:
        other = col - col_dir
    return col, other


def neighborhood(index: int, q: Quadrant) -> frozenset[int]:
    """The 2x2 block of regions around ``index`` opened toward ``q``."""
    row, col = coord_of(index)
    rows = neighbor_rows(row, q.row_dir)
    cols = neighbor_cols(col, q.col_dir)
    return frozenset(index_of(GridCoord(r, c)) for r in rows for c in cols)


def seed_candidates(event: Event) -> list[Track]:
    return [t for r in event.regions for t in r.charged[:SEEDS_PER_REGION]]


def seed_blocks(event: Event) -> list[tuple[Track, ...]]:
    return [r.charged[:SEEDS_PER_REGION] for r in event.regions]


def _make_region(index: int, rows: Iterable[tuple[int, int, int, Kind, int]]) -> Region:
    tracks = [
        Track(pt, sr, sc, kind, q, Origin(index, slot))
        for slot, (pt, sr, sc, kind, q) in enumerate(rows)
    ]
    blocks = []
    start = 0
    for _, n in _BLOCK_KINDS:
        blocks.append(tuple(tracks[start:start + n]))
        start += n
    return Region(index, *blocks)


def generate_event(rng_seed: int, event_id: int) -> Event:
    """Deterministic synthetic event with uniform 16-bit pT."""
    rng = np.random.default_rng([rng_seed, event_id])
    shape = (N_REGIONS, TRACKS_PER_REGION)
    pt = rng.integers(0, PT_MAX + 1, size=shape)
    sub_row = rng.integers(0, 2, size=shape)
    sub_col = rng.integers(0, 2, size=shape)
    quality = rng.integers(0, QUALITY_MAX + 1, size=shape)
    kinds = [k for k, n in _BLOCK_KINDS for _ in range(n)]

    head = slice(0, SEEDS_PER_REGION)
    order = np.argsort(-pt[:, head], axis=1, kind="stable")
    for arr in (pt, sub_row, sub_col, quality):
        arr[:, head] = np.take_along_axis(arr[:, head], order, axis=1)

    regions = []
    for r in range(N_REGIONS):
        rows = zip(
            pt[r].tolist(), sub_row[r].tolist(), sub_col[r].tolist(), kinds, quality[r].tolist()
        )
        regions.append(_make_region(r, rows))
    return Event(event_id, tuple(regions))


def generate_events(rng_seed: int, count: int) -> list[Event]:
    return [generate_event(rng_seed, i) for i in range(count)]


# --- text format -----------------------------------------------------------


class EventFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def format_event(event: Event) -> str:
    lines = [f"event {event.id}"]
    for region in event.regions:
        tuples = " ".join(
            f"{t.pt}:{t.sub_row}:{t.sub_col}:{t.kind.value}:{t.quality}" for t in region.tracks
        )
        lines.append(f"region {region.index} {tuples}")
    return "\n".join(lines) + "\n\n"


def write_events(path: str | Path, events: Iterable[Event]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for event in events:
            fh.write(format_event(event))


def _parse_int(token: str, lineno: int, what: str, hi: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise EventFormatError(lineno, f"{what} {token!r} is not an integer") from None
    if not 0 <= value <= hi:
        raise EventFormatError(lineno, f"{what} {value} out of range 0..{hi}")
    return value


_KINDS = {k.value: k for k in Kind}
_EXPECTED_KINDS = [k for k, n in _BLOCK_KINDS for _ in range(n)]


def _parse_region(tokens: list[str], lineno: int) -> Region:
    if len(tokens) < 2:
        raise EventFormatError(lineno, "region line without index")
    index = _parse_int(tokens[1], lineno, "region index", N_REGIONS - 1)
    fields = tokens[2:]
    if len(fields) != TRACKS_PER_REGION:
        raise EventFormatError(
            lineno, f"region {index} has {len(fields)} tracks, expected {TRACKS_PER_REGION}"
        )
    rows = []
    for slot, field in enumerate(fields):
        parts = field.split(":")
        if len(parts) != 5:
            raise EventFormatError(lineno, f"malformed track {field!r}")
        pt = _parse_int(parts[0], lineno, "pt", PT_MAX)
        sub_row = _parse_int(parts[1], lineno, "sub_row", 1)
        sub_col = _parse_int(parts[2], lineno, "sub_col", 1)
        kind = _KINDS.get(parts[3])
        if kind is None:
            raise EventFormatError(lineno, f"unknown track kind {parts[3]!r}")
        if kind is not _EXPECTED_KINDS[slot]:
            raise EventFormatError(lineno, f"slot {slot} holds kind {kind.value!r}")
        quality = _parse_int(parts[4], lineno, "quality", QUALITY_MAX)
        rows.append((pt, sub_row, sub_col, kind, quality))
    try:
        return _make_region(index, rows)
    except ValueError as exc:
        raise EventFormatError(lineno, str(exc)) from None


def iter_events(lines: Iterable[str]) -> Iterator[Event]:
    event_id = None
    header_line = 0
    regions: list[Region] = []

    def finish(lineno: int) -> Event:
        try:
            return Event(event_id, tuple(regions))
        except ValueError as exc:
            raise EventFormatError(header_line, f"{exc} (ended at line {lineno})") from None

    lineno = 0
    for lineno, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens:
            if event_id is not None:
                yield finish(lineno)
                event_id = None
            continue
        if tokens[0] == "event":
            if event_id is not None:
                raise EventFormatError(lineno, f"event {event_id} not terminated by a blank line")
            if len(tokens) != 2:
                raise EventFormatError(lineno, "malformed event header")
            event_id = _parse_int(tokens[1], lineno, "event id", 2**64 - 1)
            header_line = lineno
            regions = []
        elif tokens[0] == "region":
            if event_id is None:
                raise EventFormatError(lineno, "region line outside an event")
            region = _parse_region(tokens, lineno)
            if region.index != len(regions):
                raise EventFormatError(
                    lineno, f"event {event_id}: region {region.index} out of order"
                )
            regions.append(region)
        else:
            raise EventFormatError(lineno, f"unexpected record {tokens[0]!r}")
    if event_id is not None:
        yield finish(lineno + 1)


def read_events(path: str | Path) -> list[Event]:
    with open(path, encoding="utf-8") as fh:
        return list(iter_events(fh))
