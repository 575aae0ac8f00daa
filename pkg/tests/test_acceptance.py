"""Acceptance criteria 1-8, each at its stated tolerance and time limit.

Every criterion records one PASS/FAIL line; the lines are printed in the
pytest terminal summary (see conftest.py) and by running this file directly:

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import json
import random
import time
from functools import lru_cache

from constakit import cli
from constakit.cosets import (
    CodeParams,
    all_counts_by_formula,
    cached_table,
    leader_lower_bound,
    non_leader_certs,
    sum_identity,
    two_class_bound_verdicts,
)
from constakit.families import FamilyRequest, build_family, plan_family
from constakit.numtheory import divisors
from constakit.selfcheck import MAX_SPLITTING_FIELD, Report, check_code, grid_params
from constakit.tables import compute_row, load_fixture, rows

GRID_Q = (2, 3, 4, 5, 7, 8, 9)
GRID_MAX_NR = 20000
CODE_GRID_MAX_NR = 120
BUDGET = 2**26

RESULTS: dict[int, str] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    RESULTS[criterion] = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(RESULTS[criterion])


@lru_cache(maxsize=None)
def row_result(table: int, row: int) -> dict:
    return compute_row(rows(table)[row - 1], budget=BUDGET)


def fixture_cells() -> dict:
    return {(c.table, c.row, c.column): c for c in load_fixture()}


# ---------------------------------------------------------------- 1. coset fixtures

COSETS_7_19_6 = [{1, 7, 49}, {13, 91, 67}, {19}, {25, 61, 85}, {31, 103, 37}, {43, 73, 55}, {79, 97, 109}]
COSETS_5_26_1 = [
    {1, 5, 25, 21},
    {2, 10, 24, 16},
    {3, 15, 23, 11},
    {4, 20, 22, 6},
    {7, 9, 19, 17},
    {8, 14, 18, 12},
    {13},
    {26},
]


def _cli_cosets(capsys, q, n, r):
    assert cli.main(["cosets", "-q", str(q), "-n", str(n), "-r", str(r), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    return [set(c["elements"]) for c in data["cosets"]]


def test_criterion_1_coset_fixtures(capsys):
    t0 = time.perf_counter()
    a = _cli_cosets(capsys, 7, 19, 6)
    b = _cli_cosets(capsys, 5, 26, 1)
    secs = time.perf_counter() - t0
    ok = sorted(map(sorted, a)) == sorted(map(sorted, COSETS_7_19_6)) and sorted(map(sorted, b)) == sorted(map(sorted, COSETS_5_26_1))
    ok = ok and len(a) == 7 and len(b) == 8 and secs < 1.0
    with capsys.disabled():
        record(1, ok, f"7 and 8 cosets reproduced as sets, {secs:.2f}s (< 1s)")
    assert ok


# ---------------------------------------------------------------- 2. count formula vs enumeration


def test_criterion_2_count_formula_grid():
    t0 = time.perf_counter()
    n_params = n_fail = 0
    first_failure = ""
    for params in grid_params(GRID_MAX_NR, qs=GRID_Q):
        n_params += 1
        table = cached_table(params)
        enumerated = table.counts
        formula = {l: v for l, v in all_counts_by_formula(params).items() if v}
        ok = formula == enumerated
        for l in divisors(params.M):
            ok = ok and sum(j * enumerated.get(j, 0) for j in divisors(l)) == sum_identity(params, l)
        if not ok:
            n_fail += 1
            first_failure = first_failure or str(params)
    secs = time.perf_counter() - t0
    ok = n_fail == 0 and secs < 300
    record(2, ok, f"{n_params} (q, n, r) with nr <= {GRID_MAX_NR}, {n_fail} failures {first_failure}, {secs:.0f}s (< 300s)")
    assert ok


# ---------------------------------------------------------------- 3. two-class bound lemmas


def test_criterion_3_bound_lemmas():
    n_two = 0
    fails = []
    for params in grid_params(GRID_MAX_NR, qs=GRID_Q):
        table = cached_table(params)
        if len(table.size_classes) != 2:
            continue
        n_two += 1
        for l, leaders in table.by_size.items():
            if any(leader_lower_bound(params, l, i + 1) > d for i, d in enumerate(leaders)):
                fails.append(f"{params} leader bound l={l}")
        values = [c.value for c in non_leader_certs(params)]
        if len(values) != len(set(values)) or any(table.is_leader(v) for v in values):
            fails.append(f"{params} certificates")
        fails.extend(f"{params} {v.name}" for v in two_class_bound_verdicts(table) if not v.consistent)
    # the two published counterexamples: hypothesis fails and so does the conclusion
    ex1 = {v.name: v for v in two_class_bound_verdicts(CodeParams(7, 19, 6))}["small_class_half_gt[floor]"]
    ex2 = {v.name: v for v in two_class_bound_verdicts(CodeParams(19, 127, 18))}["unit_class_floor"]
    counter_ok = (ex1.hypothesis, ex1.conclusion, ex1.lhs) == (False, False, 19)
    counter_ok = counter_ok and (ex2.hypothesis, ex2.conclusion, ex2.lhs, ex2.rhs) == (False, False, 127, 451)
    ok = not fails and counter_ok and n_two > 0
    record(3, ok, f"{n_two} two-class structures, {len(fails)} violations {fails[:3]}, counterexamples reproduced: {counter_ok}")
    assert ok


# ---------------------------------------------------------------- 4. Table 1

TABLE1_EXPECTED = {
    (3, 5, 1, 1): (36, 38),
    (3, 11, 1, 1): (12078, 12359),
    (3, 11, 1, 2): (6039, 6179),
    (3, 13, 1, 2): (45990, 47263),
    (4, 7, 1, 1): (1560, 1631),
    (4, 7, 1, 3): (520, 543),
    (5, 7, 2, 1): (3487, 3622),
    (5, 7, 2, 2): (1743, 1811),
    (7, 7, 3, 1): (22876, 23232),
    (7, 7, 3, 2): (11438, 11616),
}


def test_criterion_4_table1():
    t0 = time.perf_counter()
    cells = fixture_cells()
    bad, bose_notes = [], []
    seen = set()
    for row in rows(1):
        got = row_result(1, row.row)
        seen.add(row.inputs)
        want = TABLE1_EXPECTED[row.inputs]
        if (got["bound_basic"], got["bound_improved"]) != want:
            bad.append(f"{row.inputs}: {got['bound_basic']}/{got['bound_improved']} != {want[0]}/{want[1]}")
        cell = cells[(1, row.row, "bose")]
        conv = cell.convention
        value = got["bose_start_at_one"] if conv in ("start_at_one", "both") else got["bose_cyclic_run"]
        if str(value) != cell.value:
            bad.append(f"{row.inputs}: Bose {value} != {cell.value} [{conv}]")
        if cell.provenance != "paper":
            bose_notes.append(f"{row.key} Bose: {cell.note}")
    secs = time.perf_counter() - t0
    ok = not bad and seen == set(TABLE1_EXPECTED) and secs < 120
    detail = f"10 rows, basic/improved exact, Bose under declared convention, {len(bad)} mismatches {bad[:3]}, {secs:.1f}s (< 120s)"
    if bose_notes:
        detail += f"; reported Bose differences: {bose_notes}"
    record(4, ok, detail)
    assert ok


# ---------------------------------------------------------------- 5. exact minimum distances

# (q, n, k, d, r) as listed among the criterion's named examples
LISTED = [
    (3, 13, 6, 6, 1),
    (3, 13, 6, 6, 2),
    (2, 23, 11, 8, 1),
    (2, 23, 12, 7, 1),
    (3, 11, 5, 6, None),
    (3, 11, 6, 5, None),
    (3, 10, 4, 6, None),
    (3, 10, 5, 4, None),
    (3, 10, 6, 4, None),
    (2, 17, 8, 6, None),
    (2, 17, 9, 5, None),
    (4, 17, 8, 8, None),
    (4, 17, 9, 7, None),
    (4, 13, 6, 6, None),
    (4, 13, 7, 5, None),
    (2, 43, 14, 14, None),
    (3, 22, 11, 7, None),  # the q = 3 length-22 row; its published d is 7
    (5, 22, 11, 8, None),
]


def test_criterion_5_exact_distances():
    t0 = time.perf_counter()
    cells = fixture_cells()
    matched, mismatched, beyond, oracle_bad = [], [], [], []
    by_code = {}
    for t in (2, 3, 4, 5):
        for row in rows(t):
            got = row_result(t, row.row)
            q = row.inputs[0]
            pub = row.published
            if q ** got["k"] > BUDGET:
                if got["d"] != "exceeds budget":
                    mismatched.append(f"{row.key}: beyond budget but d={got['d']}")
                beyond.append(row.key)
                continue
            if str(got["d"]) != cells[(t, row.row, "d")].value:
                oracle_bad.append(row.key)
            entry = (row.key, (got["n"], got["k"], got["d"]), (pub["n"], pub["k"], pub["d"]))
            by_code.setdefault((q, pub["n"], pub["k"], pub["d"]), []).append((row.inputs[3], entry))
            if (got["n"], got["k"], got["d"]) == (pub["n"], pub["k"], pub["d"]):
                matched.append(row.key)
            else:
                mismatched.append(f"{row.key} q={q} r={row.inputs[3]}: published [{pub['n']},{pub['k']},{pub['d']}], computed [{got['n']},{got['k']},{got['d']}]")
    missing = []
    for q, n, k, d, r in LISTED:
        hits = [e for rr, e in by_code.get((q, n, k, d), []) if r is None or rr == r]
        if not hits:
            missing.append(f"[{n},{k},{d}] q={q}")
    secs = time.perf_counter() - t0
    ok = not mismatched and not missing and not oracle_bad and secs < 600
    detail = (
        f"{len(matched)} rows matched exactly, {len(beyond)} rows reported 'exceeds budget', "
        f"independent oracle disagreements: {oracle_bad or 'none'}, listed codes without a row: {missing or 'none'}, {secs:.0f}s (< 600s)"
    )
    if mismatched:
        detail += "; published distances NOT reproduced under the specified defining-set rule: " + "; ".join(mismatched)
    record(5, ok, detail)
    assert ok


# ---------------------------------------------------------------- 6. algebraic invariants


def test_criterion_6_algebraic_invariants():
    report = Report()
    rng = random.Random(1)
    n_codes = 0
    for params in grid_params(CODE_GRID_MAX_NR, qs=GRID_Q):
        if len(cached_table(params).size_classes) > 2 or params.q**params.M > MAX_SPLITTING_FIELD:
            continue
        for variant in ("ceiling", "floor"):
            check_code(params, variant, 2**10, report, rng)
            n_codes += 1
    wanted = {"g | x^n - lambda", "dim = n - deg g", "g(beta^i) = 0 exactly on T", "shift closure"}
    ok = report.ok and wanted <= set(report.checks)
    summary = ", ".join(f"{k} {v[0]}/{v[0] + v[1]}" for k, v in sorted(report.checks.items()))
    record(6, ok, f"{n_codes} constructed codes with nr <= {CODE_GRID_MAX_NR}: {summary}")
    assert ok


# ---------------------------------------------------------------- 7. family dimension formulas


def family_requests() -> list[FamilyRequest]:
    reqs = [row.family_request() for t in (2, 3, 4, 5) for row in rows(t)]
    extra = [
        FamilyRequest("prime", 2, 1, "ceiling", n=7),
        FamilyRequest("prime", 2, 1, "floor", n=31),
        FamilyRequest("prime", 4, 3, "floor", n=11),
        FamilyRequest("qpower", 2, 1, "floor", p=7, s=1),
        FamilyRequest("qpower", 4, 3, "ceiling", p=3, s=3),
        FamilyRequest("ppower", 3, 2, "floor", p=2, b=3),
        FamilyRequest("ppower", 5, 4, "ceiling", p=3, b=1),
        FamilyRequest("twoprime", 2, 1, "ceiling", p1=3, p2=5),
        FamilyRequest("twoprime", 3, 1, "floor", p1=2, p2=7),
    ]
    return reqs + extra


def test_criterion_7_family_dimensions():
    fams, fails, n = set(), [], 0
    for req in family_requests():
        plan = plan_family(req)
        enumerated = cached_table(plan.params).counts
        spec = build_family(req, compute_distance=False)
        n += 1
        fams.add(req.family.value)
        if enumerated != plan.predicted or spec.dimension != plan.dimension:
            fails.append(f"{req}: counts {enumerated} vs {plan.predicted}, dim {spec.dimension} vs {plan.dimension}")
    ok = n >= 25 and fams == {"prime", "qpower", "ppower", "twoprime"} and not fails
    record(7, ok, f"{n} accepted requests across {sorted(fams)}, {len(fails)} failures {fails[:2]}")
    assert ok


# ---------------------------------------------------------------- 8. determinism


def _table_checksum(tmp_path, table: int, workers: int) -> tuple[int, str]:
    path = tmp_path / f"m{table}_{workers}.json"
    code = cli.main(["--manifest", str(path), "table", str(table), "--verify", "--workers", str(workers)])
    return code, json.loads(path.read_text())["results_checksum"]


def test_criterion_8_determinism(tmp_path, capsys):
    diffs, codes = [], set()
    for t in (1, 2, 3, 4, 5):
        c1, a = _table_checksum(tmp_path, t, 1)
        c2, b = _table_checksum(tmp_path, t, 4)
        codes |= {c1, c2}
        if a != b:
            diffs.append(t)
    capsys.readouterr()
    ok = not diffs and codes == {0}
    with capsys.disabled():
        record(8, ok, f"table --verify checksums identical for workers 1 and 4 on tables 1-5 (differing: {diffs or 'none'}), exit codes {sorted(codes)}")
    assert ok


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
