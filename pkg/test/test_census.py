import random

import pytest

from genergy.core.exceptions import ExportError, InsufficientTrendError, IntegrityError
from genergy.models.census import CLASSES, CensusDocument, CensusRow, ExportFormat, GraphSource
from genergy.models.classify import Subclass
from genergy.models.closedform import Family
from genergy.services.census import (
    REFERENCE_COUNTS,
    census,
    conjecture_report,
    export,
    format_ratio,
    ratios,
    run_census,
    table_report,
)
from genergy.services.closedform import PREDICTION_MIN_ORDER, family_graph, predicted_subclass
from genergy.services.enumerate import canonical_form, connected_graph6
from genergy.services.graph import relabel
from genergy.services.graph6 import parse_graph6, to_graph6

# Class ratios at five decimals, recomputed from the counts.
REFERENCE_RATIOS = {
    1: (1.00000, 0.00000, 0.00000, 0.00000),
    2: (0.00000, 0.00000, 0.00000, 1.00000),
    3: (0.00000, 0.00000, 0.50000, 0.50000),
    4: (0.66667, 0.00000, 0.16667, 0.16667),
    5: (0.57143, 0.19048, 0.19048, 0.04762),
    6: (0.51786, 0.34821, 0.10714, 0.02679),
    7: (0.51583, 0.44666, 0.03283, 0.00469),
    8: (0.50247, 0.49141, 0.00531, 0.00081),
}


def reference_row(n: int) -> CensusRow:
    total, *counts = REFERENCE_COUNTS[n]
    return CensusRow(n=n, total=total, counts=dict(zip(CLASSES, counts)))


@pytest.mark.parametrize("n", range(1, 7))
def test_counts_match_reference(n):
    row = run_census(n, workers=1)
    assert (row.total, *row.counts.values()) == REFERENCE_COUNTS[n]
    assert row.borderline_count == 0


def test_worker_count_does_not_matter():
    assert run_census(7, workers=1) == run_census(7, workers=3)
    assert (run_census(7, workers=2).total, run_census(7, workers=2).count(Subclass.G2)) == (853, 381)


@pytest.mark.slow
def test_order_eight():
    row = run_census(8)
    assert (row.total, *row.counts.values()) == REFERENCE_COUNTS[8]
    assert row.borderline_count == 0


def test_csv_rows():
    text = export([run_census(3, workers=1), run_census(6, workers=1)], ExportFormat.csv)
    assert text == "n,total,g1,g2,g3,g4,borderline\n3,2,0,0,1,1,0\n6,112,58,39,12,3,0\n"


def test_file_source_agrees_with_builtin(graph6_file):
    rng = random.Random(5)
    lines = []
    for form in connected_graph6(5, jobs=1):
        perm = list(range(5))
        rng.shuffle(perm)
        lines.append(to_graph6(relabel(parse_graph6(form), perm)))
    rng.shuffle(lines)
    lines += ["D??", "C~"]  # empty graph on 5 vertices, K4
    row = run_census(5, source=GraphSource.file, path=graph6_file(lines), workers=2)
    builtin = run_census(5, workers=1)
    assert row.counts == builtin.counts
    assert (row.skipped_disconnected, row.skipped_other_order) == (1, 1)


def test_file_source_listings_are_canonical(graph6_file, tmp_path):
    forms = connected_graph6(4, jobs=1)
    relabeled = [to_graph6(relabel(parse_graph6(f), [3, 2, 1, 0])) for f in forms]
    from_file = census(4, source=GraphSource.file, path=graph6_file(relabeled), workers=1)
    assert from_file.listings == census(4, workers=1).listings


def test_listing_files(tmp_path):
    result = census(5, workers=1, listing_dir=tmp_path / "lists")
    for label in CLASSES:
        lines = (tmp_path / "lists" / f"n5_{label.value.lower()}.g6").read_text().splitlines()
        assert lines == sorted(lines)
        assert len(lines) == result.row.counts[label]


@pytest.mark.parametrize("n", range(1, 9))
def test_ratios_match_reference_ratios(n):
    row = ratios(reference_row(n))
    assert tuple(round(row.ratios[c], 5) for c in CLASSES) == pytest.approx(REFERENCE_RATIOS[n], abs=1e-12)


def test_ratio_csv_uses_exact_half_even_rounding():
    assert format_ratio(39, 112) == "0.348214"
    assert format_ratio(5463, 11117) == "0.491410"
    assert format_ratio(1, 8, 2) == "0.12"
    assert format_ratio(3, 8, 2) == "0.38"
    assert export([reference_row(4)], ExportFormat.ratios_csv) == "n,r1,r2,r3,r4\n4,0.666667,0.000000,0.166667,0.166667\n"


def test_ratios_of_empty_row_rejected():
    with pytest.raises(IntegrityError):
        ratios(CensusRow(n=3, total=0, counts=dict.fromkeys(CLASSES, 0)))


def test_row_partition_enforced():
    with pytest.raises(IntegrityError):
        CensusRow(n=3, total=3, counts=dict(zip(CLASSES, (0, 0, 1, 1))))


def test_conjecture_trend():
    report = conjecture_report([reference_row(n) for n in range(1, 9)])
    assert report.tail_mass_decreasing_from == 3
    by_n = {row.n: row for row in report.rows}
    assert by_n[7].distance[Subclass.G1] == pytest.approx(0.015826, abs=1e-6)
    assert by_n[8].distance[Subclass.G1] == pytest.approx(0.002473, abs=1e-6)
    assert by_n[1].deltas is None


def test_duplicate_rows_have_zero_deltas():
    report = conjecture_report([reference_row(6), reference_row(6)])
    assert all(delta == 0.0 for delta in report.rows[1].deltas.values())


def test_trend_needs_two_rows():
    with pytest.raises(InsufficientTrendError):
        conjecture_report([reference_row(5)])


def test_json_round_trip():
    rows = [reference_row(n) for n in (4, 5)]
    document = CensusDocument.model_validate_json(export(rows, ExportFormat.json))
    assert document.schema_version == 1
    assert list(document.rows) == rows
    assert (document.tolerance.abs, document.tolerance.rel) == (1e-9, 1e-12)


def test_empty_export_is_header_only():
    assert export([], ExportFormat.csv) == "n,total,g1,g2,g3,g4,borderline\n"


def test_export_is_deterministic(tmp_path):
    rows = [reference_row(n) for n in range(1, 9)]
    first = export(rows, ExportFormat.json, tmp_path / "a.json")
    assert export(rows, ExportFormat.json, tmp_path / "b.json") == first
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_export_failure_names_path(tmp_path):
    target = tmp_path / "missing" / "out.csv"
    with pytest.raises(ExportError) as info:
        export([reference_row(3)], ExportFormat.csv, target)
    assert info.value.path == str(target)


def test_table_report_layout():
    text = table_report([reference_row(n) for n in (3, 4)])
    lines = text.splitlines()
    assert lines[0].split() == ["n", "3", "4"]
    assert lines[1].split() == ["|Gn|", "2", "6"]
    assert "0.66667" in text
    assert text.endswith("tolerance: abs=1e-09 rel=1e-12\n")


def _family_buckets_agree(n):
    listings = census(n, workers=1).listings
    for family in Family:
        if n < PREDICTION_MIN_ORDER[family]:
            continue
        form = canonical_form(family_graph(family, n))
        bucket = [label for label, forms in listings.items() if form in forms]
        assert bucket == [predicted_subclass(family, n).predicted], (family, n)


@pytest.mark.parametrize("n", range(2, 8))
def test_family_members_land_in_predicted_class(n):
    _family_buckets_agree(n)


@pytest.mark.slow
def test_family_members_land_in_predicted_class_order_eight():
    _family_buckets_agree(8)
