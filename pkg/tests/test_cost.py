import itertools

import pytest

from tautrig import spatial
from tautrig.candidates import SelectorStats
from tautrig.cost import CompareProbe, CompareStats, claims_pass, cost_report, measure, static_costs
from tautrig.mergetree import FillArray, insert_sorted

from conftest import mk


def test_static_cells():
    assert static_costs("spatial").cells == 16
    assert static_costs("modified").cells == 8
    with pytest.raises(ValueError):
        static_costs("bubble")


def _sorted_blocks(domain):
    for combo in itertools.product(range(domain), repeat=4):
        if list(combo) == sorted(combo, reverse=True):
            yield combo


def test_spatial_cell_sites_match_instrumented_run():
    probe = CompareProbe()
    for curr in range(5):
        for block in _sorted_blocks(5):
            cell = spatial.InsertionCell(mk([curr])[0])
            spatial.cell_step(cell, mk(block, region=1), probe)
    assert len(probe.sites) == static_costs("spatial").comparators_per_cell == 4


def test_sort6_sites_match_instrumented_run():
    probe = CompareProbe()
    for reg in itertools.combinations_with_replacement(range(4, -1, -1), 2):
        for block in _sorted_blocks(5):
            spatial.sort6(*mk(reg), mk(block, region=1), probe)
    assert len(probe.sites) == static_costs("modified").comparators_per_cell == 8


def test_fill_array_sites_match_instrumented_run():
    probe = CompareProbe()
    a = FillArray()
    for x in mk(range(9)):
        insert_sorted(a, x, probe=probe)
    assert len(probe.sites) == static_costs("mergetree").comparators_per_cell


@pytest.mark.parametrize("arch", ["spatial", "modified", "mergetree"])
def test_dynamic_bounded_by_static(arch, event42):
    m = measure(arch, event42)
    assert 0 < m.dynamic_comparisons <= m.cycles * m.total_comparators
    assert measure(arch, event42) == m


def test_report_claims():
    parity, naive = SelectorStats(), SelectorStats()
    for site, f in [("row_even", 4), ("row_odd", 4), ("last_row", 2), ("col_even", 2), ("col_odd", 2)]:
        parity.record(site, f)
    naive.record("region_index", 36, 4)
    report = cost_report([static_costs("spatial"), static_costs("modified")], [("parity", parity), ("naive", naive)])
    assert "parity_max_fan_in_lt_naive,4,36,PASS" in report
    assert "modified_cells_lt_spatial_cells,8,16,PASS" in report
    assert claims_pass(report)
    assert report == cost_report([static_costs("modified"), static_costs("spatial")], [("naive", naive), ("parity", parity)])


def test_report_failing_claim():
    report = cost_report([CompareStats("spatial", 4, 4, 16), CompareStats("modified", 8, 8, 64)])
    assert report.rstrip().endswith("FAIL")
    assert not claims_pass(report)


def test_empty_report():
    assert cost_report() == ""
    assert claims_pass("")
