import json

import pytest

from woundheights.cli import main, parse_poly, parse_range
from woundheights.gf import GF


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_helpers():
    assert parse_range("3") == [3]
    assert parse_range("0..4") == [0, 1, 2, 3, 4]
    F = GF(2)
    assert parse_poly(F, "t^2+t+1") == parse_poly(F, "1,1,1")


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--p", "2", "--q", "2", "--m", "0..5", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "M,N,method"
    assert [int(r.split(",")[1]) for r in lines[1:]] == [1, 2, 2, 4, 8, 16]


def test_count_check_naive(capsys):
    code, out, _ = run(capsys, "count", "--p", "3", "--q", "3", "--m", "0..3", "--check-naive")
    assert code == 0 and json.loads(out)["naive_agrees"] is True


def test_charsum(capsys):
    code, out, _ = run(capsys, "charsum", "--qv", "3", "--n", "1", "--d", "1")
    row = json.loads(out)["rows"][0]
    assert code == 0
    assert row["value_re"] == pytest.approx(-1 / 3)


def test_poles_and_constant(capsys):
    code, out, _ = run(capsys, "poles", "--p", "2", "--q", "2", "--lam", "2")
    assert code == 0 and json.loads(out)["pole_structure"]["d"] == "2"
    code, out, _ = run(capsys, "constant", "--p", "3", "--q", "3", "--trunc", "8")
    assert code == 0
    data = json.loads(out)
    assert abs(data["c_rho_assembled"] - data["c_rho_closed_form"]) <= data["tail_bound"]


def test_places_and_density(capsys):
    code, out, _ = run(capsys, "places", "--p", "2", "--q", "2", "--trunc", "2", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 1 + 1 + 2 + 1
    code, out, _ = run(capsys, "density", "--p", "2", "--q", "2", "--place", "t", "--s", "1")
    assert code == 0 and "1.5" in out


@pytest.mark.parametrize("argv", [
    ["count", "--p", "2", "--q", "3"],
    ["count", "--p", "2"],
    ["count", "--p", "2", "--q", "2", "--workers", "0"],
    ["density", "--p", "2", "--q", "2", "--place", "t^2+1", "--s", "1"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_budget_partial(capsys, tmp_path):
    code, out, err = run(capsys, "count", "--p", "2", "--q", "2", "--m", "0..14",
                         "--budget", "500", "--out", str(tmp_path))
    assert code == 3
    assert "budget" in err
    data = json.loads(out)
    assert 0 < len(data["rows"]) < 15
    assert (tmp_path / "count.csv").exists()
    assert json.loads((tmp_path / "count.json").read_text()) == data


def test_out_twins(capsys, tmp_path):
    code, out, _ = run(capsys, "count", "--p", "2", "--q", "2", "--m", "0..6", "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "count.json").read_text() == out
    assert (tmp_path / "count.csv").read_text().startswith("M,N,method")


def test_workers_do_not_change_output(capsys):
    base = ["count", "--p", "2", "--q", "2", "--m", "0..11"]
    _, one, _ = run(capsys, *base, "--workers", "1")
    _, four, _ = run(capsys, *base, "--workers", "4")
    assert one == four


def test_verify_all_subset(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "1..2")
    assert code == 0
    assert [r["criterion"] for r in json.loads(out)["criteria"]] == [1, 2]


def test_verify_all_failure_exit(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "7")
    data = json.loads(out)
    assert code == (0 if all(r["passed"] for r in data["criteria"]) else 1)
