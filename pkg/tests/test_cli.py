from __future__ import annotations

import json
import subprocess
import sys

import pytest

from tollconvex import cli
from tollconvex.convexity import toll_interval
from tollconvex.graph import cycle_graph
from tollconvex.report import VerificationReport

C5_TEXT = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n"


@pytest.fixture
def c5_file(tmp_path):
    path = tmp_path / "c5.txt"
    path.write_text(C5_TEXT)
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_interval_matches_library(capsys, c5_file):
    code, out, _ = run(capsys, "interval", "0", "2", "--input", c5_file, "--output", "records")
    assert code == 0
    assert json.loads(out)["interval"] == sorted(toll_interval(cycle_graph(5), 0, 2))


def test_graph6_input(capsys, tmp_path):
    path = tmp_path / "k3.g6"
    path.write_text("Bw\n")
    code, out, _ = run(capsys, "extreme", "--input", str(path), "--format", "graph6", "--output", "records")
    assert code == 0 and json.loads(out) == {"count": 3, "extreme": [0, 1, 2]}


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["closure", "0,2", "--name", "cycle:5"], {"set": [0, 2], "closure": [0, 1, 2, 3, 4]}),
        (["hull", "0,3", "--name", "path:4"], {"set": [0, 3], "hull": [0, 1, 2, 3], "stages": [[0, 3], [0, 1, 2, 3]]}),
        (["convex", "1,2", "--name", "path:4", "--method", "separator"], {"set": [1, 2], "t_convex": True}),
        (["toll-number", "--name", "cycle:5"], {"value": 2, "witness": [0, 2]}),
        (["t-hull-number", "--name", "cycle:5"], {"value": 2, "witness": [0, 2]}),
        (["geodetic-number", "--name", "cycle:5"], {"value": 3, "witness": [0, 1, 3]}),
        (["extreme", "--name", "fig3-spider"], {"count": 0, "extreme": []}),
        (["lex-tn", "path:4", "star:3"], {"exact": True, "value": 4}),
        (["lex-tn", "path:5", "complete:3"], {"exact": False, "lower": 6, "upper": 6}),
        (["triple", "path:4", "--tnh", "3"], {"cost": 4, "A": [], "B": [1, 2], "C": []}),
    ],
)
def test_query_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv, "--output", "records")
    assert code == 0
    assert json.loads(out) == expected


def test_text_and_csv_output(capsys):
    _, out, _ = run(capsys, "toll-number", "--name", "cycle:5")
    assert out == "value: 2\nwitness: [0, 2]\n"
    _, out, _ = run(capsys, "toll-number", "--name", "cycle:5", "--output", "csv")
    assert out == 'value,witness\n2,"[0, 2]"\n'


def test_product_command(capsys, c5_file):
    code, out, _ = run(capsys, "product", "lex", "complete:2", "complete:2", "--format", "graph6")
    assert code == 0 and out == "C~\n"
    code, out, _ = run(capsys, "product", "cartesian", c5_file, "complete:2")
    assert code == 0 and out.splitlines()[0] == "10 15"


@pytest.mark.parametrize(
    "argv",
    [
        ["interval", "0", "9", "--name", "cycle:5"],
        ["toll-number", "--name", "wheel:5"],
        ["toll-number", "--name", "cycle:x"],
        ["closure", "0,a", "--name", "cycle:5"],
        ["lex-tn", "nonexistent.txt", "star:3"],
        ["toll-number", "--input", "/nonexistent/file"],
        ["toll-number", "--name", "cycle:5", "--input", "x"],
        ["verify", "presecna", "--max-n", "9"],
        ["verify", "lex-exact", "--h", "K9"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err and not out


def test_parse_error_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 1\n0 3\n")
    code, _, err = run(capsys, "extreme", "--input", str(path))
    assert code == 2 and "line 2" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "no-such-suite"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_verify_records_are_stable(capsys):
    _, first, _ = run(capsys, "verify", "presecna", "--max-n", "5", "--output", "records")
    _, second, _ = run(capsys, "verify", "presecna", "--max-n", "5", "--output", "records", "--jobs", "2")
    assert first == second
    lines = [json.loads(line) for line in first.splitlines()]
    assert list(lines[0]) == ["suite", "instance", "expected", "actual", "witness", "ok"]
    assert lines[-1]["summary"]["passed"]


def test_verify_exit_code_on_violation(capsys, monkeypatch):
    def failing(*args, **kwargs):
        rep = VerificationReport("presecna")
        rep.check("synthetic", 1, 2)
        return rep

    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "presecna")
    assert code == 1 and "FAIL" in out


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "lemma-012", "--max-n", "2", "--output", "csv")
    assert code == 0
    assert out.splitlines()[0] == "suite,instance,expected,actual,witness,ok"


def test_console_script_entry_point(c5_file):
    proc = subprocess.run(
        [sys.executable, "-m", "tollconvex.cli", "interval", "0", "2", "--input", c5_file],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "interval: [0, 1, 2, 3, 4]" in proc.stdout


def test_stdin_input(c5_file):
    proc = subprocess.run(
        [sys.executable, "-m", "tollconvex.cli", "toll-number", "--output", "records"],
        input=C5_TEXT,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 2
