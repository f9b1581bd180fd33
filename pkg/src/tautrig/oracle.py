"""Brute-force references that every sorter architecture is checked against.

Nothing here tries to be fast. Ties are always broken by stream order:
among equal pT, the element seen earlier ranks higher.
"""

from __future__ import annotations

from operator import attrgetter
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

pt_key = attrgetter("pt")


def _identity(x):
    return x


def top_k(candidates: Sequence[T], k: int, key: Callable[[T], int] = pt_key) -> list[T]:
    """The ``k`` highest-key items, descending, stable in input order."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if k > len(candidates):
        raise ValueError(f"k={k} exceeds {len(candidates)} candidates")
    # reverse=True keeps equal keys in input order
    return sorted(candidates, key=key, reverse=True)[:k]


def is_descending(seq: Sequence[T], key: Callable[[T], int] = _identity) -> bool:
    return all(key(a) >= key(b) for a, b in zip(seq, seq[1:]))


def merge_desc(
    a: Sequence[T], b: Sequence[T], key: Callable[[T], int] = _identity, check: bool = True
) -> list[T]:
    """Stable merge of two descending sequences; on ties ``a`` goes first."""
    if check and not (is_descending(a, key) and is_descending(b, key)):
        raise ValueError("merge_desc inputs must be sorted descending")
    out: list[T] = []
    i = j = 0
    while i < len(a) and j < len(b):
        if key(a[i]) >= key(b[j]):
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def sort6_oracle(reg: Sequence[T], inp: Sequence[T], key: Callable[[T], int] = _identity) -> list[T]:
    if len(reg) != 2 or len(inp) != 4:
        raise ValueError("sort6 expects a register pair and a 4-block")
    return merge_desc(reg, inp, key)


def same_ranking(got: Sequence, expected: Sequence) -> bool:
    """Equal pT sequences, and equal origins within every run of equal pT."""
    if [t.pt for t in got] != [t.pt for t in expected]:
        return False
    runs_got: dict = {}
    runs_exp: dict = {}
    for t in got:
        runs_got.setdefault(t.pt, []).append(t.origin)
    for t in expected:
        runs_exp.setdefault(t.pt, []).append(t.origin)
    return all(sorted(v) == sorted(runs_exp[k]) for k, v in runs_got.items())
