"""Streaming top-16 seed sorters and region-neighbourhood selection for a
tau trigger front end, with cycle and selector accounting."""

from .candidates import SelectorStats, run_step2
from .events import Event, Region, Track, generate_event, read_events, seed_candidates, write_events
from .mergetree import run_tree
from .oracle import top_k
from .spatial import LatencyReport, run_chain, run_pair_chain

__all__ = [
    "Event",
    "LatencyReport",
    "Region",
    "SelectorStats",
    "Track",
    "generate_event",
    "read_events",
    "run_chain",
    "run_pair_chain",
    "run_step2",
    "run_tree",
    "seed_candidates",
    "top_k",
    "write_events",
]
