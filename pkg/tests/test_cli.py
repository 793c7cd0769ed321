import json

import pytest

from monocover.cli import INTERVAL, MATH_FAIL, OK, USAGE, main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_range():
    assert parse_range("12") == [12]
    assert parse_range("8..10") == [8, 9, 10]
    assert parse_range("5,7") == [5, 7]


@pytest.mark.parametrize("argv,expected", [
    (("sigma", "formula", "--n", "7", "--m", "2"), "exact 1716\n"),
    (("sigma", "formula", "--n", "9", "--m", "1"), "bounds [126, 256]\n"),
    (("sigma", "formula", "--n", "5", "--m", "2", "--case", "even"), "exact 57\n"),
    (("sigma", "exact", "--group", "a5"), "10\n"),
])
def test_sigma_outputs(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == OK and out == expected


def test_certificate_verb(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, err = run(capsys, "certificate", "a5wrc2", "--emit", str(path))
    assert code == OK
    assert out.strip().endswith("sigma = 57 (certified)")
    assert "case_analysis" in err
    data = json.loads(path.read_text())
    assert {"checks", "constraints", "survivors", "sigma"} <= set(data)
    assert data["sigma"]["value"] == 57


def test_certificate_skip_fails(capsys):
    code, out, _ = run(capsys, "certificate", "a5wrc2", "--skip", "coset_lemmas")
    assert code == MATH_FAIL and "NOT-ESTABLISHED" in out


def test_census_table(capsys):
    code, out, _ = run(capsys, "census", "--n", "5", "--m", "2", "--case", "even")
    assert code == OK
    rows = {line.split()[0]: line.split() for line in out.splitlines()[2:] if line and not line.startswith("total")}
    assert rows["r"][1:] == ["25", "288", "96", "0"]
    assert rows["d"][1:] == ["120", "120", "20", "0/24"]
    assert out.rstrip().endswith("total 282")


def test_cover_verb(capsys):
    code, out, _ = run(capsys, "cover", "--n", "5", "--m", "2", "--target", "Omega")
    assert code == OK and "cover of size 126" in out and "covered" in out


def test_lemma_exit_codes(capsys):
    assert run(capsys, "lemma", "check", "--name", "ab", "--n", "8..12")[0] == MATH_FAIL
    assert run(capsys, "lemma", "check", "--name", "ab", "--n", "8..12", "--variant", "bounded")[0] == OK
    assert run(capsys, "lemma", "spot")[0] == OK
    assert run(capsys, "lemma", "check", "--name", "bogus", "--n", "8")[0] == USAGE
    assert run(capsys, "lemma", "check", "--name", "ab", "--n", "x")[0] == USAGE


def test_lemma_json_rows(capsys):
    code, out, _ = run(capsys, "lemma", "check", "--name", "estimprim", "--n", "21,25", "--emit", "json")
    payload = json.loads(out)
    assert code == OK and payload["tool"] == "monocover"
    assert [r["params"] for r in payload["result"]] == [{"n": 21, "a": 3}, {"n": 21, "a": 7},
                                                        {"n": 25, "a": 5}]


def test_tremezz_split_reported(capsys):
    code, out, _ = run(capsys, "lemma", "check", "--name", "tremezz", "--n", "15", "--a", "3", "--b", "2")
    row = out.splitlines()[2].split()
    assert row[-2:] == ["fails", "holds"] and code == OK


def test_usage_errors(capsys):
    assert run(capsys, "sigma", "formula", "--n", "7", "--m", "2", "--case", "even")[0] == USAGE
    assert run(capsys, "sigma", "exact")[0] == USAGE
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == USAGE


def test_budget_interval(capsys):
    code, out, _ = run(capsys, "sigma", "exact", "--group", "s5", "--budget", "1")
    assert code in (OK, INTERVAL)
    if code == INTERVAL:
        assert out.startswith("interval")


def test_json_byte_identical(capsys, tmp_path):
    path = tmp_path / "census.json"
    runs = []
    for _ in range(2):
        assert main(["census", "--n", "5", "--m", "2", "--case", "even", "--format", "json", "-o", str(path)]) == OK
        runs.append(path.read_bytes())
    capsys.readouterr()
    a, b = runs
    assert a == b
    env = json.loads(a)
    assert env["version"] and env["flags"]["n"] == 5
