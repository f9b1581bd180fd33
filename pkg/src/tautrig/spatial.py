"""Spatial insertion sorters for streaming top-16 seed selection.

Seed candidates arrive as presorted blocks of four, one region per clock.
Two chain architectures are modelled:

* ``SorterChain``: 16 insertion cells, each keeping the running maximum
  of everything it has seen in a single register and forwarding the
  other four elements, still sorted, to the next cell.
* ``PairChain``: 8 cells holding two registers each. Every cell merges its
  sorted register pair with the incoming sorted 4-block in one comparison
  stage (``sort6``), keeps the top two and forwards the other four.

Both chains are stepped one clock at a time. A block is read from the
region stream, latched into the input register on the following cycle
and then spends one cycle in each cell, so ``regions + 1 + cells`` clock
cycles elapse before the last cell has seen the last block.

Cells compare on the rank key (pT, then earlier stream position), not on
pT alone: an element pushed out of an upstream cell late can meet an
equal-pT element from a later region already sitting downstream, and only
the position tiebreak keeps the result stable.

Absent entries are ``None``; pT 0 is a legitimate value and never means
"empty".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import kernels
from .events import SEEDS_PER_REGION, Event, Track, seed_blocks

N_CELLS = 16
N_PAIR_CELLS = 8
N_SEEDS = 16
DEFAULT_BUFFERING_CYCLES = 56

Block4 = tuple[Optional[Track], ...]

# comparison sites of one insertion cell, in evaluation order
CELL_SITES = ("head", "ins1", "ins2", "ins3")


@dataclass(frozen=True)
class LatencyReport:
    architecture: str
    buffering_cycles: int
    sorting_cycles: int

    @property
    def step1_cycles(self) -> int:
        return max(self.buffering_cycles, self.sorting_cycles)


def check_block4(block: Sequence[Optional[Track]]) -> Block4:
    """Validate a 4-block: descending rank, present entries packed first."""
    block = tuple(block)
    if len(block) != SEEDS_PER_REGION:
        raise ValueError(f"block of {len(block)} entries, expected 4")
    present = [t for t in block if t is not None]
    if any(t is None for t in block[: len(present)]):
        raise ValueError("absent entries must follow present ones")
    if any(rank_key(a) < rank_key(b) for a, b in zip(present, present[1:])):
        raise ValueError("block not sorted by descending pt")
    return block


def rank_key(t: Track) -> tuple[int, int]:
    return t.pt, -t.stream_pos


def _above(a: Track, b: Track) -> bool:
    return rank_key(a) > rank_key(b)


def _hit(probe, site):
    if probe is not None:
        probe.hit(site)


# --- single-register insertion cell -----------------------------------------


@dataclass
class InsertionCell:
    curr: Optional[Track] = None


def cell_step(cell: InsertionCell, inp: Sequence[Optional[Track]], probe=None) -> Block4:
    """Keep the larger of CURR_REG and IN[0]; forward the other four sorted.

    Because ``inp`` is sorted, only IN[0] can beat the register. When it
    does, the old register value drops into the tail IN[1..3] at its rank.
    """
    inp = check_block4(inp)
    head = inp[0]
    if head is None:
        return inp
    curr = cell.curr
    if curr is None:
        cell.curr = head
        return inp[1:] + (None,)
    _hit(probe, CELL_SITES[0])
    if not _above(head, curr):
        return inp
    tail = inp[1:]
    pos = 0
    for site, t in zip(CELL_SITES[1:], tail):
        if t is None:
            break
        _hit(probe, site)
        if _above(t, curr):
            pos += 1
    cell.curr = head
    return tail[:pos] + (curr,) + tail[pos:]


# --- two-register cell and its 6-input network ------------------------------


def _build_sort6_rules():
    """Selection rules for merging a sorted pair A with a sorted 4-block B.

    ``c[i][j]`` means A[i] ranks above B[j]. A[i] lands in
    output position k when exactly k - i elements of B outrank it, which
    is pinned down by at most two neighbouring comparisons; likewise for
    B[j] with k - j elements of A. Each rule is ``(source, literals)``
    with literals ``(i, j, expected)``.
    """
    rules = []
    for k in range(6):
        options = []
        for i in range(2):
            n_b = k - i
            if 0 <= n_b <= 4:
                lits = []
                if n_b >= 1:
                    lits.append((i, n_b - 1, False))
                if n_b <= 3:
                    lits.append((i, n_b, True))
                options.append((("reg", i), tuple(lits)))
        for j in range(4):
            n_a = k - j
            if 0 <= n_a <= 2:
                lits = []
                if n_a >= 1:
                    lits.append((n_a - 1, j, True))
                if n_a <= 1:
                    lits.append((n_a, j, False))
                options.append((("inp", j), tuple(lits)))
        rules.append(tuple(options))
    return tuple(rules)


SORT6_RULES = _build_sort6_rules()
SORT6_SITES = tuple(sorted({(i, j) for out in SORT6_RULES for _, lits in out for i, j, _ in lits}))


def _reg_beats(a: Optional[Track], b: Optional[Track]) -> bool:
    if b is None:
        return True
    return a is not None and rank_key(a) >= rank_key(b)


def sort6(reg0, reg1, inp, probe=None) -> tuple[Optional[Track], ...]:
    """Merge a sorted register pair with a sorted 4-block in one stage.

    All eight register-vs-input comparisons are evaluated side by side,
    then every output position picks the single source whose rule holds.
    No ranks are counted.
    """
    reg = (reg0, reg1)
    if reg0 is None and reg1 is not None:
        raise ValueError("register pair must be packed")
    if reg1 is not None and rank_key(reg0) < rank_key(reg1):
        raise ValueError("register pair not sorted")
    inp = check_block4(inp)
    c = [[False] * 4 for _ in range(2)]
    for i, j in SORT6_SITES:
        _hit(probe, (i, j))
        c[i][j] = _reg_beats(reg[i], inp[j])
    out = []
    for options in SORT6_RULES:
        for (src, idx), lits in options:
            if all(c[i][j] is want for i, j, want in lits):
                out.append(reg[idx] if src == "reg" else inp[idx])
                break
        else:  # pragma: no cover - the rule set is exhaustive
            raise AssertionError("no sort6 rule matched")
    return tuple(out)


@dataclass
class PairCell:
    reg0: Optional[Track] = None
    reg1: Optional[Track] = None


def pair_cell_step(cell: PairCell, inp: Sequence[Optional[Track]], probe=None) -> Block4:
    out = sort6(cell.reg0, cell.reg1, inp, probe)
    cell.reg0, cell.reg1 = out[0], out[1]
    return out[2:]


# --- cycle-stepped chains ----------------------------------------------------


@dataclass
class _Chain:
    cells: list
    step: Callable
    cycles: int = 0
    discarded: list = field(default_factory=list)

    def run(self, blocks: Sequence[Sequence[Optional[Track]]], probe=None) -> int:
        """Stream ``blocks`` through the chain; returns elapsed cycles.

        Register 0 holds the block read from the stream this cycle,
        register 1 the latched input, register 2 + i the output of cell i.
        """
        n = len(self.cells)
        regs: list = [None] * (n + 2)
        feed = iter(blocks)
        remaining = len(blocks)
        cycles = 0
        while remaining or any(r is not None for r in regs[:-1]):
            nxt = [None] * (n + 2)
            for i in range(n):
                if regs[i + 1] is not None:
                    nxt[i + 2] = self.step(self.cells[i], regs[i + 1], probe)
            nxt[1] = regs[0]
            if remaining:
                nxt[0] = tuple(next(feed))
                remaining -= 1
            if regs[-1] is not None:
                self.discarded.extend(t for t in regs[-1] if t is not None)
            regs = nxt
            cycles += 1
        if regs[-1] is not None:
            self.discarded.extend(t for t in regs[-1] if t is not None)
        self.cycles += cycles
        return cycles


class SorterChain(_Chain):
    def __init__(self, num_cells: int = N_CELLS):
        super().__init__([InsertionCell() for _ in range(num_cells)], cell_step)

    def seeds(self) -> list[Track]:
        return [c.curr for c in self.cells if c.curr is not None]


class PairChain(_Chain):
    def __init__(self, num_cells: int = N_PAIR_CELLS):
        super().__init__([PairCell() for _ in range(num_cells)], pair_cell_step)

    def seeds(self) -> list[Track]:
        out = []
        for c in self.cells:
            out.extend(t for t in (c.reg0, c.reg1) if t is not None)
        return out


def sorting_cycles(n_blocks: int, num_cells: int) -> int:
    """Closed form of the chain latency: stream + input register + cells."""
    return n_blocks + 1 + num_cells


def _candidates(blocks: Sequence[Sequence[Track]]) -> list[Track]:
    return [t for b in blocks for t in b]


def _check_stream_order(cands: Sequence[Track]) -> None:
    # kernels break ties by list index, which must agree with stream_pos
    pos = [t.stream_pos for t in cands]
    if any(a >= b for a, b in zip(pos, pos[1:])):
        raise ValueError("candidates must be in increasing stream order")


def select_with_chain(
    blocks: Sequence[Sequence[Track]], num_cells: int = N_CELLS, backend: str | None = None
) -> tuple[list[Track], int]:
    """Top-``num_cells`` of presorted 4-blocks via the single-register chain."""
    cands = _candidates(blocks)
    _check_stream_order(cands)
    idx, cycles = kernels.get(backend).chain_select([t.pt for t in cands], num_cells)
    return [cands[i] for i in idx if i >= 0], cycles


def select_with_pair_chain(
    blocks: Sequence[Sequence[Track]], num_cells: int = N_PAIR_CELLS, backend: str | None = None
) -> tuple[list[Track], int]:
    """Top-``2 * num_cells`` of presorted 4-blocks via the two-register chain."""
    cands = _candidates(blocks)
    _check_stream_order(cands)
    idx, cycles = kernels.get(backend).pair_chain_select([t.pt for t in cands], num_cells)
    return [cands[i] for i in idx if i >= 0], cycles


def run_chain(
    event: Event,
    num_cells: int = N_CELLS,
    buffering_cycles: int = DEFAULT_BUFFERING_CYCLES,
    backend: str | None = None,
) -> tuple[tuple[Track, ...], LatencyReport]:
    seeds, cycles = select_with_chain(seed_blocks(event), num_cells, backend)
    return tuple(seeds), LatencyReport("spatial", buffering_cycles, cycles)


def run_pair_chain(
    event: Event,
    num_cells: int = N_PAIR_CELLS,
    buffering_cycles: int = DEFAULT_BUFFERING_CYCLES,
    backend: str | None = None,
) -> tuple[tuple[Track, ...], LatencyReport]:
    seeds, cycles = select_with_pair_chain(seed_blocks(event), num_cells, backend)
    return tuple(seeds), LatencyReport("modified", buffering_cycles, cycles)
