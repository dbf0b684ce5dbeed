import math

import pytest

from rieszlab.figures import BoundRow, BoundTable, figure_tables, table_csv
from rieszlab.norms import conjectured_exponent


def row_at(table: BoundTable, q: float) -> BoundRow:
    for row in table.rows:
        if math.isinf(q) and math.isinf(row.q):
            return row
        if not math.isinf(row.q) and abs(row.q - q) < 1e-12:
            return row
    raise AssertionError(f"no row at q={q}")


def test_table_shape():
    for dim in (1, 2):
        table = figure_tables(dim)
        assert len(table.rows) == 33
        assert table.rows[0].q == 1.0
        assert math.isinf(table.rows[-1].q)


def test_d1_pinned_rows():
    table = figure_tables(1)
    row = row_at(table, 4.0 / 3.0)
    assert row.lower == pytest.approx(1.0) and row.upper == pytest.approx(1.0)
    row = row_at(table, 2.0)
    assert row.lower == pytest.approx(2.0) and row.upper == pytest.approx(2.0)
    row = row_at(table, 4.0)
    assert row.lower == pytest.approx(8.0 / 3.0)
    assert row.upper == pytest.approx(3.0)
    row = row_at(table, math.inf)
    assert row.lower == pytest.approx(4.0) and row.upper == pytest.approx(4.0)


def test_d2_pinned_rows():
    table = figure_tables(2)
    below = row_at(table, 32.0 / 25.0)  # x = 3/8 < 4/3 threshold
    assert below.upper == -1.0 and below.lower == -1.0
    assert below.upper_source == "exact"
    row = row_at(table, 4.0 / 3.0)
    assert row.upper == pytest.approx(conjectured_exponent(2, 4.0 / 3.0))
    assert row.lower == pytest.approx(0.0)
    row = row_at(table, 2.0)
    assert row.upper == pytest.approx(2.0) and row.lower == pytest.approx(2.0)
    row = row_at(table, math.inf)
    assert row.upper == pytest.approx(3.0)
    assert row.lower == pytest.approx(8.0 / 3.0)


def test_bounds_are_ordered():
    for dim in (1, 2):
        for row in figure_tables(dim).rows:
            assert row.lower <= row.upper + 1e-12


def test_upper_matches_conjecture_inside_domain():
    for dim in (1, 2):
        for row in figure_tables(dim).rows:
            if row.upper_source == "conjectured":
                assert row.upper == pytest.approx(conjectured_exponent(dim, row.q))


def test_row_invariant_enforced():
    with pytest.raises(ValueError):
        BoundRow(q=2.0, upper=1.0, lower=2.0, upper_source="a", lower_source="b")


def test_dim_validation():
    with pytest.raises(ValueError):
        figure_tables(3)


def test_csv_deterministic():
    first = table_csv(figure_tables(1))
    second = table_csv(figure_tables(1))
    assert first == second
    assert "\r" not in first
    lines = first.split("\n")
    assert lines[0] == "q,upper,lower,upper_source,lower_source"
    assert len(lines) == 35  # header + 33 rows + trailing newline
    assert lines[-2].startswith("inf,4,4,")


def test_csv_d2_exact_region():
    text = table_csv(figure_tables(2))
    assert "1,-1,-1,exact,exact" in text.split("\n")[1]
