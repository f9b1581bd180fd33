"""Streaming merge-sort tree that keeps only the best 16 at every level.

Level 1 is sixteen insertion-sorted arrays of nine candidates each, filled
round-robin while the event streams in (the four candidates of a region
go to four different arrays). Four merge levels follow (16 -> 8 -> 4 -> 2
-> 1 streams). A merge node passes at most 16 elements upward, but it
still has to read every element its children send it; the surplus is
read and dropped.

The merge levels cannot overlap the buffering stage, so they start only
once buffering is done. From then on every node reads one element per
cycle, all nodes run concurrently, and an element written in one cycle is
visible to the parent on the next.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Sequence

from .events import SEEDS_PER_REGION, Event, Track, seed_blocks
from .spatial import DEFAULT_BUFFERING_CYCLES, LatencyReport, rank_key

N_ARRAYS = 16
ARRAY_CAPACITY = 9
KEEP = 16


def distribute(t: int, candidates: Sequence[Track], n_arrays: int = N_ARRAYS):
    """Array assignment for the candidates of region ``t``."""
    if t < 0:
        raise ValueError(f"region index {t} is negative")
    return [((SEEDS_PER_REGION * t + c) % n_arrays, x) for c, x in enumerate(candidates)]


@dataclass
class FillArray:
    capacity: int = ARRAY_CAPACITY
    slots: list = field(default_factory=list)

    def __len__(self):
        return len(self.slots)


def insert_sorted(a: FillArray, x: Track, key: Callable = rank_key, probe=None) -> FillArray:
    """Walk ``x`` down to its place; bigger elements stay in front.

    Elements equal to ``x`` stay in front of it as well, since they
    arrived earlier.
    """
    if len(a.slots) >= a.capacity:
        raise OverflowError(f"fill array already holds {a.capacity} elements")
    kx = key(x)
    pos = 0
    for site, s in enumerate(a.slots):
        if probe is not None:
            probe.hit(f"slot{site}")
        if key(s) >= kx:
            pos = site + 1
    a.slots.insert(pos, x)
    return a


class MergeResult(NamedTuple):
    kept: list
    read: int
    discarded: int


def merge_keep_top(a: Sequence, b: Sequence, cap: int = KEEP, key: Callable = rank_key) -> MergeResult:
    """Merge two descending sequences, keeping at most ``cap``.

    Every input element is read; on equal keys ``a`` goes first.
    """
    for seq in (a, b):
        if any(key(x) < key(y) for x, y in zip(seq, seq[1:])):
            raise ValueError("merge_keep_top inputs must be sorted descending")
    kept = []
    i = j = 0
    while len(kept) < cap and (i < len(a) or j < len(b)):
        if j >= len(b) or (i < len(a) and key(a[i]) >= key(b[j])):
            kept.append(a[i])
            i += 1
        else:
            kept.append(b[j])
            j += 1
    read = len(a) + len(b)
    return MergeResult(kept, read, read - len(kept))


class _Source:
    """A filled level-1 array seen as an already complete stream."""

    def __init__(self, items: Sequence):
        self.out = deque(items)
        self.finished = True


class MergeNode:
    def __init__(self, left, right, cap: int = KEEP, key: Callable = rank_key):
        self.left = left
        self.right = right
        self.cap = cap
        self.key = key
        self.out: deque = deque()
        self.finished = False
        self.kept: list = []
        self.read = 0
        self.discarded = 0
        self.received: list = []

    def step(self, probe=None):
        """One clock: read at most one element; returns (emitted, finishing)."""
        qa, qb = self.left.out, self.right.out
        a_end = self.left.finished and not qa
        b_end = self.right.finished and not qb
        emitted = None
        if len(self.kept) < self.cap:
            src = None
            if qa and qb:
                if probe is not None:
                    probe.hit("head")
                src = qa if self.key(qa[0]) >= self.key(qb[0]) else qb
            elif qa and b_end:
                src = qa
            elif qb and a_end:
                src = qb
            if src is not None:
                emitted = src.popleft()
                self.kept.append(emitted)
                self.received.append(emitted)
                self.read += 1
        elif qa or qb:
            x = (qa or qb).popleft()
            self.received.append(x)
            self.read += 1
            self.discarded += 1
        finishing = (
            self.left.finished and self.right.finished and not self.left.out and not self.right.out
        )
        return emitted, finishing


@dataclass
class MergeTree:
    n_arrays: int = N_ARRAYS
    capacity: int = ARRAY_CAPACITY
    keep: int = KEEP
    buffering_cycles: int = DEFAULT_BUFFERING_CYCLES
    fill_interval: Optional[int] = None
    arrays: list = field(init=False)
    levels: list = field(init=False, default_factory=list)
    fill_cycles: int = field(init=False, default=0)
    merge_cycles: int = field(init=False, default=0)

    def __post_init__(self):
        if self.n_arrays < 2 or self.n_arrays & (self.n_arrays - 1):
            raise ValueError("n_arrays must be a power of two >= 2")
        # each array receives a new element every n_arrays / 4 cycles
        period = self.n_arrays // SEEDS_PER_REGION
        if self.fill_interval is None:
            self.fill_interval = period
        if not 1 <= self.fill_interval <= period:
            raise ValueError(
                f"insertion taking {self.fill_interval} cycles cannot keep up "
                f"with one arrival every {period} cycles"
            )
        self.arrays = [FillArray(self.capacity) for _ in range(self.n_arrays)]

    def fill(self, blocks: Sequence[Sequence[Track]], probe=None) -> int:
        for t, block in enumerate(blocks):
            for idx, x in distribute(t, block, self.n_arrays):
                insert_sorted(self.arrays[idx], x, probe=probe)
        # the last region is read on cycle len(blocks); its insertions then
        # need fill_interval cycles
        self.fill_cycles = len(blocks) + self.fill_interval
        return self.fill_cycles

    def merge(self, probe=None) -> list:
        level = [_Source(a.slots) for a in self.arrays]
        self.levels = []
        while len(level) > 1:
            level = [MergeNode(level[i], level[i + 1], self.keep) for i in range(0, len(level), 2)]
            self.levels.append(level)
        nodes = [n for lvl in self.levels for n in lvl]
        root = self.levels[-1][0]
        cycles = 0
        while not root.finished:
            staged = [n.step(probe) for n in nodes]
            for node, (emitted, finishing) in zip(nodes, staged):
                if emitted is not None:
                    node.out.append(emitted)
                if finishing:
                    node.finished = True
            cycles += 1
        self.merge_cycles = cycles
        return list(root.out)

    @property
    def sorting_cycles(self) -> int:
        return max(self.buffering_cycles, self.fill_cycles) + self.merge_cycles

    def run(self, blocks: Sequence[Sequence[Track]], probe=None) -> list:
        self.fill(blocks, probe)
        return self.merge(probe)


def run_tree(
    event: Event, buffering_cycles: int = DEFAULT_BUFFERING_CYCLES, fill_interval: Optional[int] = None
) -> tuple[tuple[Track, ...], LatencyReport]:
    tree = MergeTree(buffering_cycles=buffering_cycles, fill_interval=fill_interval)
    seeds = tree.run(seed_blocks(event))
    return tuple(seeds), LatencyReport("mergetree", buffering_cycles, tree.sorting_cycles)
