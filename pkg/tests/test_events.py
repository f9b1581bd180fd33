import pytest

from tautrig.events import (
    ALL_QUADRANTS,
    N_REGIONS,
    EventFormatError,
    GridCoord,
    Quadrant,
    coord_of,
    format_event,
    generate_event,
    index_of,
    iter_events,
    neighborhood,
    read_events,
    seed_candidates,
    write_events,
)


@pytest.mark.parametrize("index,coord", [(0, (0, 0)), (5, (1, 1)), (33, (8, 1))])
def test_coord_of(index, coord):
    assert coord_of(index) == coord


@pytest.mark.parametrize("bad", [-1, 36, 100])
def test_coord_of_rejects_out_of_range(bad):
    with pytest.raises(ValueError):
        coord_of(bad)


def test_coord_roundtrip():
    assert [index_of(coord_of(i)) for i in range(N_REGIONS)] == list(range(N_REGIONS))
    with pytest.raises(ValueError):
        index_of(GridCoord(9, 0))


def test_neighborhood_examples():
    assert neighborhood(5, Quadrant(+1, -1)) == {4, 5, 8, 9}
    assert neighborhood(0, Quadrant(-1, -1)) == {0, 1, 32, 33}
    union = set().union(*(neighborhood(0, q) for q in ALL_QUADRANTS))
    assert union - {0} == {1, 4, 5, 32, 33}


def test_columns_clamp_rows_wrap():
    assert neighborhood(3, Quadrant(+1, +1)) == {2, 3, 6, 7}
    assert neighborhood(35, Quadrant(+1, +1)) == {34, 35, 2, 3}


@pytest.mark.parametrize("r", range(N_REGIONS))
def test_neighborhood_properties(r):
    for q in ALL_QUADRANTS:
        hood = neighborhood(r, q)
        assert len(hood) == 4 and r in hood
    if coord_of(r).row in (0, 8):
        assert any(
            {coord_of(x).row for x in neighborhood(r, q)} == {0, 8} for q in ALL_QUADRANTS
        )


def test_seed_candidates_all_zero():
    lines = []
    for line in _lines(generate_event(3, 0)):
        if line.startswith("region"):
            tok = line.split()
            tok[2:] = ["0" + f[f.index(":"):] for f in tok[2:]]
            line = " ".join(tok)
        lines.append(line)
    (ev,) = list(iter_events(lines + [""]))
    cands = seed_candidates(ev)
    assert len(cands) == 144
    assert all(t.pt == 0 for t in cands)
    assert [t.origin for t in cands] == [(r, s) for r in range(36) for s in range(4)]


def test_seed_candidates_blocks(event42):
    cands = seed_candidates(event42)
    assert len(cands) == 144
    for t in range(36):
        block = cands[4 * t : 4 * t + 4]
        assert block == list(event42.regions[t].charged[:4])
        assert all(a.pt >= b.pt for a, b in zip(block, block[1:]))


def test_generate_deterministic():
    assert generate_event(1, 0) == generate_event(1, 0)
    a = sorted(t.pt for r in generate_event(1, 0).regions for t in r.tracks)
    b = sorted(t.pt for r in generate_event(2, 0).regions for t in r.tracks)
    assert a != b


def test_generated_invariants(sample_events):
    for e in sample_events:
        for i, region in enumerate(e.regions):
            assert region.index == i
            assert (len(region.charged), len(region.photon), len(region.neutral)) == (22, 13, 10)
            assert [t.origin for t in region.tracks] == [(i, s) for s in range(45)]
            for t in region.tracks:
                assert 0 <= t.pt <= 0xFFFF and t.sub_row in (0, 1) and t.sub_col in (0, 1)


def test_roundtrip(tmp_path, sample_events):
    path = tmp_path / "ev.txt"
    write_events(path, sample_events[:10])
    assert read_events(path) == sample_events[:10]


def test_empty_file(tmp_path):
    path = tmp_path / "empty.txt"
    write_events(path, [])
    assert path.read_text() == ""
    assert read_events(path) == []


def _lines(e):
    return format_event(e).splitlines()


def test_missing_region_names_event():
    lines = _lines(generate_event(5, 77))
    del lines[36]  # drop region 35
    with pytest.raises(EventFormatError, match="event 77: 35 regions") as info:
        list(iter_events(lines + [""]))
    assert info.value.lineno == 1


def test_pt_overflow_reports_line():
    lines = _lines(generate_event(5, 0))
    tok = lines[3].split()
    tok[10] = "70000" + tok[10][tok[10].index(":"):]
    lines[3] = " ".join(tok)
    with pytest.raises(EventFormatError, match=r"line 4: pt 70000 out of range"):
        list(iter_events(lines))


@pytest.mark.parametrize(
    "mutate,msg",
    [
        (lambda t: t[:-1], "44 tracks"),
        (lambda t: t[:2] + ["1:2:0:c:0"] + t[3:], "sub_row 2"),
        (lambda t: t[:2] + ["1:0:0:x:0"] + t[3:], "unknown track kind"),
        (lambda t: t[:2] + ["1:0:0"] + t[3:], "malformed track"),
        (lambda t: t[:2] + ["1:0:0:p:0"] + t[3:], "slot 0 holds kind"),
    ],
)
def test_malformed_region(mutate, msg):
    lines = _lines(generate_event(5, 0))
    lines[2] = " ".join(mutate(lines[2].split()))
    with pytest.raises(EventFormatError, match=f"line 3: .*{msg}"):
        list(iter_events(lines))


def test_unsorted_seed_block_rejected():
    lines = _lines(generate_event(5, 0))
    tok = lines[1].split()
    tok[2] = "0" + tok[2][tok[2].index(":"):]
    tok[3] = "65535" + tok[3][tok[3].index(":"):]
    lines[1] = " ".join(tok)
    with pytest.raises(EventFormatError, match="line 2: .*not sorted"):
        list(iter_events(lines))


def test_region_out_of_order():
    lines = _lines(generate_event(5, 0))
    lines[1], lines[2] = lines[2], lines[1]
    with pytest.raises(EventFormatError, match="line 2: .*out of order"):
        list(iter_events(lines))
