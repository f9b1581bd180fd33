import pytest

from tautrig.events import Kind, Origin, Track, generate_event


def mk(pts, region=0, start=0):
    """Tracks with the given pT values, in stream order within ``region``."""
    return [
        None if pt is None else Track(pt, 0, 0, Kind.CHARGED, 0, Origin(region, start + i))
        for i, pt in enumerate(pts)
    ]


def pts(tracks):
    return [None if t is None else t.pt for t in tracks]


@pytest.fixture(scope="session")
def event42():
    return generate_event(42, 0)


@pytest.fixture(scope="session")
def sample_events():
    return [generate_event(s, s) for s in range(40)]
