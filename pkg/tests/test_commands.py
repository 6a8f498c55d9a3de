"""
Тесты команд управления: вывод, файлы систем и коды выхода.
"""

import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from apps.xl.management.base import parse_int_list
from apps.xl.services import multinomial_service
from apps.xl.services.multinomial_service import OrdinaryMultinomialRow, om_row
from apps.xl.services.polynomial_service import format_system, random_system


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


def run_failing(*args):
    with pytest.raises(CommandError) as excinfo:
        run(*args)
    return excinfo.value.returncode


def test_parse_int_list():
    assert parse_int_list("5") == [5]
    assert parse_int_list("2-4") == [2, 3, 4]
    assert parse_int_list("3109,5011,2-3,5011") == [3109, 5011, 2, 3]
    for text in ("", "a", "4-2", "1--2"):
        with pytest.raises(CommandError) as excinfo:
            parse_int_list(text)
        assert excinfo.value.returncode == 2


def test_multinomial_table():
    output = run("multinomial", "--table", "3", "4")
    assert output.splitlines() == [
        "1",
        "1,1,1,1",
        "1,2,3,4,3,2,1",
        "1,3,6,10,12,12,10,6,3,1",
        "1,4,10,20,31,40,44,40,31,20,10,4,1",
    ]


def test_multinomial_single_rows():
    assert run("multinomial", "2", "3") == "1,2,3,4,3,2,1\n"
    assert run("multinomial", "0", "5") == "1\n"


def test_multinomial_unimodality_lines():
    lines = run("multinomial", "--table", "3", "4", "--check-unimodal").splitlines()
    assert "#UNIMODAL,4,3,6,false,44" in lines
    assert "#UNIMODAL,3,3,4,true,12" in lines


def test_multinomial_json():
    payload = json.loads(run("multinomial", "2", "3", "--format", "json"))
    assert payload["rows"] == [{"N": 2, "values": [1, 2, 3, 4, 3, 2, 1]}]


def test_multinomial_usage_errors():
    assert run_failing("multinomial") == 2
    assert run_failing("multinomial", "2", "0") == 2
    assert run_failing("multinomial", "--table", "3", "-1") == 2


def test_dmin_rows():
    lines = run("dmin", "--n", "2-3", "--d", "2", "--c", "1").splitlines()
    assert lines == ["n,c,d,D_m,closed_form,agrees", "2,1,2,3,3,true", "3,1,2,4,4,true"]


def test_dmin_unsupported_c():
    assert run_failing("dmin", "--n", "3", "--d", "2", "--c", "3") == 2


def test_solve_univariate_file(tmp_path):
    path = tmp_path / "system.txt"
    path.write_text("p=7 n=1\nx1^2 - 1\n", encoding="utf-8")
    report = json.loads(run("solve", str(path), "--auto"))
    assert report["status"] == "Solved"
    assert report["solutions"] == [[1], [6]]
    assert report["verified"] == [True, True]
    assert report["D"] == 3


def test_solve_planted_system(tmp_path, gf13):
    path = tmp_path / "system.txt"
    path.write_text(format_system(random_system(2, 1, 3, gf13, seed=7)), encoding="utf-8")
    report = json.loads(run("solve", str(path), "--auto", "--planted", "4,9"))
    assert report["planted"] == [4, 9]
    assert report["planted_found"]
    assert [4, 9] in report["solutions"]
    assert all(report["verified"])


def test_solve_csv_and_out_file(tmp_path):
    path = tmp_path / "system.txt"
    path.write_text("p=7 n=1\nx1^2 - 1\nx1 - 1\n", encoding="utf-8")
    target = tmp_path / "result" / "solutions.csv"
    assert run("solve", str(path), "--D", "3", "--format", "csv", "--out", str(target)) == ""
    assert target.read_text(encoding="utf-8") == "x1,verified\n1,true\n"


def test_solve_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("p=15 n=1\nx1\n", encoding="utf-8")
    assert run_failing("solve", str(bad), "--D", "3") == 2
    assert run_failing("solve", str(tmp_path / "missing.txt"), "--D", "3") == 2

    good = tmp_path / "good.txt"
    good.write_text("p=7 n=1\nx1^2 - 1\n", encoding="utf-8")
    assert run_failing("solve", str(good)) == 2
    assert run_failing("solve", str(good), "--D", "2") == 2


def test_solve_without_univariate_exits_with_failure(tmp_path):
    path = tmp_path / "system.txt"
    path.write_text("p=13 n=2\nx2\nx2^2\nx1*x2\n", encoding="utf-8")
    assert run_failing("solve", str(path), "--D", "3") == 1


def test_experiment_csv():
    args = ("experiment", "--p", "3109", "--d", "2", "--n", "2")
    options = ("--trials", "2", "--seed", "99", "--threads", "1")
    output = run(*args, *options)
    lines = output.splitlines()
    assert lines[0] == "p,d,n,c,trial,seed,D_star,D_m,match,elapsed_ms"
    assert len(lines) == 4
    assert lines[-1] == "#SUMMARY,3109,2,2,3.00,3"
    assert run(*args, *options) == output


@pytest.mark.slow
@pytest.mark.parametrize(
    "p, d, n, summary",
    [
        ("3109", "5", "3", "#SUMMARY,3109,5,3,14.00,14"),
        ("5011", "2", "4", "#SUMMARY,5011,2,4,5.00,5"),
    ],
)
def test_experiment_summary_matches_prediction(p, d, n, summary):
    output = run(
        "experiment", "--p", p, "--d", d, "--n", n,
        "--trials", "10", "--seed", "20240601", "--threads", "1",
    )
    assert output.splitlines()[-1] == summary


def test_experiment_budget_failure():
    code = run_failing(
        "experiment", "--p", "3109", "--d", "3", "--n", "3",
        "--trials", "1", "--threads", "1", "--budget", "10",
    )
    assert code == 1


def test_verify_passes():
    output = run("verify", "--scope", "multinomial,unimodality", "--grid", "N=6,s=3")
    lines = output.splitlines()
    assert lines[0] == "scope,status,checked,detail"
    assert [line.split(",")[1] for line in lines[1:]] == ["pass", "pass"]


def test_verify_catches_corrupted_rows(monkeypatch):
    def corrupted(N, s):
        if (N, s) == (2, 3):
            return OrdinaryMultinomialRow(N=2, s=3, values=(1, 2, 3, 5, 3, 2, 1))
        return om_row(N, s)

    monkeypatch.setattr(multinomial_service, "om_row", corrupted)
    code = run_failing("verify", "--scope", "multinomial", "--grid", "N=6,s=3")
    assert code == 1


def test_verify_usage_errors():
    assert run_failing("verify", "--grid", "N=6") == 2
    assert run_failing("verify", "--scope", "speed") == 2
