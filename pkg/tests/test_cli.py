import json

import pytest

from togliatti.cli import UsageError, main, read_ideal_file, read_scheme_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


def test_verify_ideal_b3(capsys):
    code, out, _ = run(capsys, "verify-ideal", "b3")
    assert code == 0
    assert out.count("[PASS]") == 4
    assert "verify-ideal.b3.g00" in out
    assert out.rstrip().endswith("4/4 checks passed")


def test_verify_ideal_without_generators(capsys):
    code, _, err = run(capsys, "verify-ideal", "togliatti_lift")
    assert code == 2
    assert err.startswith("togliatti: error:")


def test_jets_b3(capsys):
    code, doc = run_json(capsys, "jets", "b3")
    assert code == 0
    (check,) = doc["checks"]
    assert check["computed"] == {"expected_osculating_dim": 5, "osculating_dim": 4, "laplace": 1}
    assert check["verdict"] == "pass"


def test_jets_shifrin_uses_a_chart(capsys):
    code, doc = run_json(capsys, "jets", "shifrin")
    assert code == 0
    assert doc["checks"][0]["inputs"]["source"].startswith("shifrin[")


def test_jets_at_point_is_informational(capsys):
    code, doc = run_json(capsys, "jets", "b3", "--at", "1,0,0")
    assert code == 0
    at = [c for c in doc["checks"] if c["id"].endswith(".at")][0]
    assert at["verdict"] == "info"
    assert at["computed"]["rank"] == 3


def test_lefschetz_wlp_fails_for_I_T(capsys):
    code, doc = run_json(capsys, "lefschetz", "I_T")
    assert code == 0  # matches the reference, which records the failure
    assert doc["checks"][0]["computed"]["failures"] == [[2, 1]]


def test_lefschetz_slp_J(capsys):
    code, out, _ = run(capsys, "lefschetz", "J", "--slp", "--kmax", "2")
    assert code == 0
    assert "d=2 k=2: 6->6 rank 5" in out


def test_lefschetz_not_artinian(capsys):
    code, _, err = run(capsys, "lefschetz", "I_Z")
    assert code == 2
    assert "togliatti: error:" in err


def test_lefschetz_ideal_file(tmp_path, capsys):
    f = tmp_path / "cubes.txt"
    f.write_text("ring: x,y,z\n# the cubes\nx^3\ny^3\nz^3  # last\n")
    code, doc = run_json(capsys, "lefschetz", str(f))
    assert code == 0
    check = doc["checks"][0]
    assert check["verdict"] == "info"
    assert check["computed"]["holds"] is True


def test_unexpected_b3(capsys):
    code, out, _ = run(capsys, "unexpected", "b3", "--j", "3")
    assert code == 0
    assert "[PASS] unexpected.b3.j3" in out
    assert "unexpected curve exists" in out
    assert "curve: " in out


def test_unexpected_scheme_file(tmp_path, capsys):
    f = tmp_path / "three.txt"
    f.write_text("point: 1,0,0\npoint: 0,1,0 mult: 1\npoint: 0,0,1\ngeneric: 3\n")
    code, doc = run_json(capsys, "unexpected", str(f))
    assert code == 0
    # quartics through three points and a generic triple point: 15 - 3 - 6
    assert doc["checks"][0]["computed"] == {"actual_h0": 6, "expected_h0": 6, "unexpected": False}
    assert doc["checks"][0]["verdict"] == "info"


def test_unexpected_requires_j(capsys):
    code, _, err = run(capsys, "unexpected", "b3")
    assert code == 2
    assert "--j" in err


def test_unknown_names_exit_2(capsys):
    assert run(capsys, "lefschetz", "nope")[0] == 2
    assert run(capsys, "unexpected", "nope", "--j", "2")[0] == 2
    assert run(capsys, "jets", "nope")[0] == 2


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert "surface b3:" in out and "ideal J:" in out and "points b3:" in out
    code, doc = run_json(capsys, "catalog")
    assert set(doc["catalog"]) == {"surfaces", "ideals", "point_sets"}
    assert doc["checks"] == []


def test_flags_before_or_after_subcommand(capsys):
    _, before = run_json(capsys, "--seed", "7", "jets", "b3")
    code, out, _ = run(capsys, "jets", "b3", "--format", "json", "--seed", "7")
    after = json.loads(out)
    assert before["seed"] == after["seed"] == 7


def test_json_schema(capsys):
    _, doc = run_json(capsys, "verify-ideal", "shifrin")
    assert set(doc) == {"version", "seed", "checks"}
    for check in doc["checks"]:
        assert set(check) == {"id", "anchor", "inputs", "computed", "expected", "source",
                              "verdict", "wall_time", "limit", "notes"}


def _strip_times(doc):
    for c in doc["checks"]:
        c.pop("wall_time")
    return doc


def test_report_all_deterministic(capsys):
    code1, doc1 = run_json(capsys, "report-all", "--seed", "3")
    code2, doc2 = run_json(capsys, "report-all", "--seed", "3")
    assert code1 == code2
    assert _strip_times(doc1) == _strip_times(doc2)
    assert [c["id"] for c in doc1["checks"]] == [f"c{i:02d}" for i in range(1, 14)]


def test_bad_ideal_file(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("x^2\n")
    with pytest.raises(UsageError):
        read_ideal_file(f)
    f.write_text("ring: x,y\nx^2 + 2z\n")
    with pytest.raises(UsageError, match=":2:"):
        read_ideal_file(f)


def test_bad_scheme_file(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("point: 1,0\n")
    with pytest.raises(UsageError):
        read_scheme_file(f)
    f.write_text("line: 1,0,0\n")
    with pytest.raises(UsageError):
        read_scheme_file(f)


def test_argparse_errors_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
