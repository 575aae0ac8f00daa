import json

import pytest

from constakit import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cosets_json_roundtrip(capsys):
    code, out, _ = run(capsys, "cosets", "-q", "5", "-n", "26", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["counts"] == {"1": 2, "4": 6}
    assert data["leaders_by_size"]["1"] == [13, 26]
    assert json.loads(cli.dump_json(data)) == data


def test_cosets_human_and_csv(capsys):
    code, out, _ = run(capsys, "cosets", "-q", "7", "-n", "19", "-r", "6")
    assert code == 0 and "N_1 = 1" in out and "N_3 = 6" in out
    code, out, _ = run(capsys, "cosets", "-q", "7", "-n", "19", "-r", "6", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "leader,size,elements" and len(lines) == 8


def test_build_family_json(capsys):
    code, out, _ = run(capsys, "build", "--family", "qpower", "-q", "2", "--p", "11", "--s", "89")
    assert code == 0
    data = json.loads(out)
    assert (data["n"], data["dimension"], data["exact_distance"]) == (23, 11, 8)
    assert data["family"]["family"] == "qpower"


def test_build_raw_human(capsys):
    code, out, _ = run(capsys, "build", "-q", "3", "-n", "13", "-r", "2", "--format", "human")
    assert code == 0
    assert out.startswith("[13, 6, 6] over GF(3), lambda = -1")


def test_exit_invalid_parameters(capsys):
    code, _, err = run(capsys, "build", "--family", "prime", "-q", "3", "-n", "15")
    assert code == cli.EXIT_INVALID == 2
    assert "n prime" in err
    code, _, err = run(capsys, "cosets", "-q", "6", "-n", "5")
    assert code == 2 and "q prime power" in err


def test_exit_budget(capsys):
    code, _, err = run(capsys, "build", "-q", "5", "-n", "124", "--distance-budget", "1000", "--require-distance")
    assert code == cli.EXIT_BUDGET == 3
    code, out, _ = run(capsys, "build", "-q", "5", "-n", "124", "--distance-budget", "1000")
    assert code == 0 and json.loads(out)["distance_status"] == "exceeds budget"


def test_table_verify_ok(capsys):
    code, out, err = run(capsys, "table", "1", "--verify")
    assert code == 0
    assert out.splitlines()[0].startswith("table,row,q,m,s,r")
    assert "all 10 rows match" in err


def test_table_verify_mismatch_exit(capsys, monkeypatch):
    from constakit import tables

    real = tables.load_fixture

    def tampered(path=None):
        cells = real(path)
        return [c if not (c.table == 1 and c.row == 1 and c.column == "bound_basic") else type(c)(**{**c.__dict__, "value": "35"}) for c in cells]

    monkeypatch.setattr(cli, "load_fixture", tampered)
    code, _, err = run(capsys, "table", "1", "--verify")
    assert code == cli.EXIT_MISMATCH == 4
    assert "MISMATCH row 1.1 bound_basic" in err


def test_manifest_is_deterministic_across_workers(tmp_path, capsys):
    sums = []
    for w in ("1", "3"):
        path = tmp_path / f"m{w}.json"
        assert cli.main(["--manifest", str(path), "table", "4", "--workers", w, "--format", "json"]) == 0
        m = json.loads(path.read_text())
        assert {"command", "parameters", "versions", "seconds", "results_checksum"} <= set(m)
        assert "workers" not in m["parameters"]
        sums.append(m["results_checksum"])
    capsys.readouterr()
    assert sums[0] == sums[1]


def test_selfcheck_small_and_fault(capsys):
    code, out, _ = run(capsys, "selfcheck", "--grid", "small")
    assert code == 0 and out.strip().splitlines()[-1].startswith("OK")
    code, out, _ = run(capsys, "selfcheck", "--grid", "small", "--inject-fault")
    assert code != 0 and "FAIL" in out


def test_help_hides_fault_flag(capsys):
    with pytest.raises(SystemExit):
        cli.main(["selfcheck", "--help"])
    assert "inject" not in capsys.readouterr().out
