"""CLI tests: envelopes, exit codes and CSV artifacts."""

import csv
import json
import math
import random
import subprocess
import sys

import pytest

from pgst_paths.classifier import classify
from pgst_paths.cli import fmt_float, main, render


def invoke(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    assert out.count("\n") == 1, "exactly one envelope line"
    env = json.loads(out)
    assert env["schema_version"] == "1"
    assert env["status"] == ("ok" if code == 0 else "error")
    return code, env


@pytest.mark.parametrize(
    "argv, verdict, reason",
    [
        (("classify", 7, 2, 6), "PGST", "POWER_OF_TWO_CASE"),
        (("classify", 11, 3, 9), "NO_PGST", "BAD_DYADIC_ALIGNMENT"),
        (("classify", 5, 1, 4), "NO_PGST", "NOT_MIRROR_PAIR"),
    ],
)
def test_classify(capsys, argv, verdict, reason):
    code, env = invoke(capsys, *argv)
    assert code == 0
    assert env["command"] == "classify"
    assert env["result"]["verdict"] == verdict and env["result"]["reason"] == reason
    assert env["inputs"] == {"n": argv[1], "a": argv[2], "b": argv[3]}


def test_classify_p_only_for_prime_odd_part(capsys):
    _, env = invoke(capsys, "classify", 8, 1, 8)
    assert env["result"]["p"] is None and env["result"]["r"] == 9
    _, env = invoke(capsys, "classify", 11, 2, 10)
    assert env["result"]["p"] == 3


def test_certificate_verify(capsys):
    code, env = invoke(capsys, "certificate", 8, 1, "--verify")
    assert code == 0
    assert env["result"]["certificate"]["case_tag"] == "ODD_REFLECTION_BLOCK"
    ver = env["result"]["verification"]
    assert ver["passed"] and ver["parity"] and ver["support"] and ver["odd_sums"] and ver["zero_sums"]


def test_certificate_not_applicable(capsys):
    code, env = invoke(capsys, "certificate", 7, 1)
    assert code == 4
    assert env["error"]["code"] == "CERT_NOT_APPLICABLE"


def test_certificate_classes(capsys):
    _, env = invoke(capsys, "certificate", 11, 3)
    cert = env["result"]["certificate"]
    assert cert["case_tag"] == "DYADIC_RESIDUE_BLOCK"
    assert [j for j, _ in cert["odd_class"]] == [1, 5, 9]
    assert [j for j, _ in cert["even_class"]] == [2, 6, 10]


def test_certificate_round_trip(capsys, tmp_path):
    path = tmp_path / "cert.txt"
    _, env = invoke(capsys, "certificate", 17, 1, "--verify", "--out", path)
    assert path.read_text() == env["result"]["document"]
    code, checked = invoke(capsys, "check-certificate", path)
    assert code == 0
    assert checked["result"]["verification"] == env["result"]["verification"]
    assert checked["result"]["certificate"] == env["result"]["certificate"]


def test_check_certificate_reports_failures(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("n 8\na 1\ncase_tag ODD_REFLECTION_BLOCK\nodd 1 1\nodd 5 1\neven 2 1\neven 4 1\neven 8 1\n")
    code, env = invoke(capsys, "check-certificate", path)
    assert code == 0
    assert not env["result"]["verification"]["passed"]
    assert not env["result"]["verification"]["odd_sums"]


def test_check_certificate_errors(capsys, tmp_path):
    code, env = invoke(capsys, "check-certificate", tmp_path / "missing.txt")
    assert code == 6
    bad = tmp_path / "garbage.txt"
    bad.write_text("hello\n")
    code, env = invoke(capsys, "check-certificate", bad)
    assert code == 2


def test_search_pst(capsys):
    code, env = invoke(capsys, "search", 2, 1, 2, "--eps", "1e-6", "--tmax", 10)
    assert code == 0
    res = env["result"]
    assert res["achieved"] is True
    assert res["best_time"] == pytest.approx(1.5707963, abs=1e-6)
    assert set(res) >= {"achieved", "best_time", "best_fidelity", "samples_evaluated"}


def test_search_positive_and_negative(capsys):
    _, env = invoke(capsys, "search", 4, 1, 4, "--eps", "0.01", "--tmax", 10000)
    assert env["result"]["achieved"] is True
    _, env = invoke(capsys, "search", 8, 1, 8, "--eps", "0.01", "--tmax", 10000)
    assert env["result"]["achieved"] is False
    assert env["status"] == "ok"


def test_search_trace_csv(capsys, tmp_path):
    path = tmp_path / "trace.csv"
    _, env = invoke(capsys, "search", 3, 1, 3, "--eps", "0.01", "--tmax", 5, "--trace", path)
    with path.open() as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "fidelity"]
    times = [float(r[0]) for r in rows[1:]]
    fids = [float(r[1]) for r in rows[1:]]
    assert times == sorted(times)
    assert max(fids) == env["result"]["best_fidelity"]
    assert all(len(r[1].replace(".", "").replace("-", "").split("e")[0].lstrip("0")) <= 17 for r in rows[1:])


def test_search_budget(capsys, tmp_path):
    path = tmp_path / "partial.csv"
    code, env = invoke(capsys, "search", 4, 1, 4, "--eps", "0.01", "--tmax", 10000, "--max-evals", 500, "--trace", path)
    assert code == 5
    assert env["error"]["code"] == "BUDGET_EXCEEDED"
    assert env["result"]["complete"] is False
    assert path.exists()


def test_search_range(capsys):
    code, env = invoke(capsys, "search", 4, 1, 4, "--eps", "1.5", "--tmax", 10)
    assert code == 3


def test_sweep_small(capsys):
    code, env = invoke(capsys, "sweep", "--nmax", 3)
    assert code == 0
    table = [(r["n"], r["a"], r["b"], r["verdict"]) for r in env["result"]["table"]]
    assert table == [(2, 1, 2, "PGST"), (3, 1, 3, "PGST"), (3, 2, 2, "DEGENERATE")]


def test_sweep_csv(capsys, tmp_path):
    path = tmp_path / "sweep.csv"
    code, env = invoke(capsys, "sweep", "--nmax", 40, "--csv", path)
    assert code == 0
    with path.open() as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["n", "a", "b", "verdict", "reason", "t", "r", "p"]
    assert len(rows) == env["result"]["rows"] == sum(math.ceil(n / 2) for n in range(2, 41))
    eight = [r for r in rows if r["n"] == "8"]
    assert [r["a"] for r in eight] == ["1", "2", "3", "4"]
    assert {r["verdict"] for r in eight} == {"NO_PGST"}
    assert [(int(r["n"]), int(r["a"])) for r in rows] == sorted((int(r["n"]), int(r["a"])) for r in rows)


def test_sweep_agrees_with_classify(capsys, tmp_path):
    path = tmp_path / "sweep.csv"
    invoke(capsys, "sweep", "--nmax", 150, "--csv", path)
    with path.open() as fh:
        rows = {(int(r["n"]), int(r["a"])): r for r in csv.DictReader(fh)}
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(2, 150)
        a = rng.randint(1, (n + 1) // 2)
        c = classify(n, a, n + 1 - a)
        row = rows[(n, a)]
        assert (row["verdict"], row["reason"]) == (c.verdict.value, c.reason.value)
        assert (int(row["t"]), int(row["r"])) == (c.t, c.r)
        assert row["p"] == ("" if c.p is None else str(c.p))


def test_sweep_errors(capsys, tmp_path):
    code, _ = invoke(capsys, "sweep", "--nmax", 1)
    assert code == 3
    code, env = invoke(capsys, "sweep", "--nmax", 5, "--csv", tmp_path / "no" / "such" / "dir.csv")
    assert code == 6 and env["error"]["code"] == "IO_ERROR"


def test_spectrum_support_fidelity(capsys):
    _, env = invoke(capsys, "spectrum", 3)
    assert env["result"]["eigenvalues"] == pytest.approx([math.sqrt(2), 0.0, -math.sqrt(2)], abs=1e-15)
    _, env = invoke(capsys, "support", 11, 3)
    assert env["result"]["excluded"] == [4, 8]
    _, env = invoke(capsys, "fidelity", 3, 1, 3, "2.221441469")
    assert env["result"]["fidelity"] == pytest.approx(1.0, abs=1e-9)


def test_spectrum_cap(capsys):
    code, _ = invoke(capsys, "spectrum", 10**5 + 1)
    assert code == 3


@pytest.mark.parametrize(
    "argv, code",
    [
        (("classify", "x", 1, 1), 2),
        (("classify", 3, 1), 2),
        (("bogus",), 2),
        ((), 2),
        (("classify", 3, 0, 3), 3),
        (("fidelity", 3, 1, 3, "nan"), 3),
        (("support", 3, 9), 3),
    ],
)
def test_error_exit_codes(capsys, argv, code):
    got, env = invoke(capsys, *argv)
    assert got == code
    assert env["error"]["code"] in {"PARSE_ERROR", "RANGE_ERROR"}


def test_float_rendering():
    assert fmt_float(1.0) == "1.0"
    assert fmt_float(0.1) == "0.10000000000000001"
    assert fmt_float(math.pi / 2) == "1.5707963267948966"
    assert fmt_float(1e-20) == "9.9999999999999995e-21"
    assert float(fmt_float(1e-20)) == 1e-20
    assert render({"x": [1, 2.5, None, True, "s"]}) == '{"x": [1, 2.5, null, true, "s"]}'


def _run_module(*argv):
    return subprocess.run(
        [sys.executable, "-m", "pgst_paths", *map(str, argv)], capture_output=True, text=True, check=False
    )


def test_subprocess_deterministic(tmp_path):
    first = _run_module("search", 5, 2, 4, "--eps", "0.01", "--tmax", 500)
    second = _run_module("search", 5, 2, 4, "--eps", "0.01", "--tmax", 500, "--workers", 1)
    assert first.returncode == 0
    third = _run_module("search", 5, 2, 4, "--eps", "0.01", "--tmax", 500)
    assert first.stdout == third.stdout
    assert json.loads(first.stdout)["result"] == json.loads(second.stdout)["result"]
    bad = _run_module("certificate", 7, 1)
    assert bad.returncode == 4 and json.loads(bad.stdout)["status"] == "error"
