import pytest

from constakit.tables import (
    FIXTURE_COLUMNS,
    TABLE_IDS,
    Mismatch,
    all_rows,
    checksum,
    compute_row,
    load_fixture,
    recompute_table,
    rows,
    verify_rows,
)

CELLS = load_fixture()


def test_fixture_shape():
    assert CELLS, "fixture is empty"
    assert {c.provenance for c in CELLS} <= {"paper", "derived"}
    keys = {(c.table, c.row) for c in CELLS}
    assert keys == {(r.table, r.row) for r in all_rows()}
    assert len({(c.table, c.row, c.column) for c in CELLS}) == len(CELLS)
    assert FIXTURE_COLUMNS[0] == "table"


def test_every_code_row_has_core_cells():
    have = {(c.table, c.row, c.column) for c in CELLS}
    for row in all_rows():
        cols = ("bound_basic", "bound_improved", "bose") if row.table == 1 else ("n", "k", "d", "lower_bound", "bose")
        for col in cols:
            assert (row.table, row.row, col) in have, (row.key, col)


def test_derived_cells_explain_themselves():
    for c in CELLS:
        if c.provenance == "derived" and c.column in ("n", "k", "d", "lower_bound", "bose"):
            assert "published" in c.note, c


def test_bose_conventions_declared():
    for c in CELLS:
        if c.column == "bose":
            assert c.convention in ("both", "start_at_one", "cyclic_run"), c


def test_row_counts():
    assert [len(rows(t)) for t in TABLE_IDS] == [10, 23, 23, 17, 13]


def test_row_lengths():
    lengths = {r.key: r.params().n for r in all_rows()}
    assert lengths["3.1"] == 23 and lengths["4.1"] == 17 and lengths["5.1"] == 43
    assert lengths["3.14"] == 46  # published length 23 is inconsistent with (q, p, s, r) = (3, 11, 3851, 1)


@pytest.mark.parametrize("table", [1, 2, 4, 5])
def test_tables_verify(table):
    computed = recompute_table(table, budget=2**20)
    bad = [m for m in verify_rows(table, computed, CELLS) if m.column != "d"]
    assert not bad, "\n".join(map(str, bad))


def test_table_1_values():
    got = compute_row(rows(1)[0], budget=1)
    assert (got["bound_basic"], got["bound_improved"]) == (36, 38)
    assert got["bose_start_at_one"] == got["bose_cyclic_run"] == 41


def test_verify_reports_mismatch():
    computed = recompute_table(1, budget=1)
    computed[1]["bound_basic"] += 1
    bad = verify_rows(1, computed, CELLS)
    assert len(bad) == 1 and isinstance(bad[0], Mismatch)
    assert str(bad[0]) == "row 1.1 bound_basic: expected 36, got 37"


def test_checksum_is_order_independent():
    assert checksum({"a": 1, "b": [1, 2]}) == checksum({"b": [1, 2], "a": 1})
    assert checksum({"a": 1}) != checksum({"a": 2})
