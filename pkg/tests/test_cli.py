import subprocess
import sys

import pytest

from zpwiener.cli import main
from zpwiener.fileio import (
    read_function_file,
    read_report_file,
    write_function_file,
)
from zpwiener.fourier import SparseFunction
from zpwiener.groups import GroupContext


def write_file(tmp_path, name, ctx, entries):
    f = SparseFunction(ctx, entries)
    path = tmp_path / name
    write_function_file(str(path), f)
    return str(path)


def test_function_file_roundtrip_is_canonical(tmp_path):
    ctx = GroupContext(7, 2)
    f = SparseFunction(ctx, {(3, 1): 1 + 2j, (0, 5): -0.25, (6, 6): 1e-3j})
    path = tmp_path / "f.txt"
    write_function_file(str(path), f)
    back = read_function_file(str(path))
    assert dict(back.entries) == dict(f.entries)
    path2 = tmp_path / "g.txt"
    write_function_file(str(path2), back)
    assert path.read_text() == path2.read_text()


def test_function_file_parse_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("zpwiener-function 1\np 5 d 1\n0 1\n")
    code = main(["eval", str(bad)])
    assert code == 2

    bad2 = tmp_path / "bad2.txt"
    bad2.write_text("something else\n")
    assert main(["eval", str(bad2)]) == 2

    missing = tmp_path / "nope.txt"
    assert main(["eval", str(missing)]) == 2


def test_eval_subgroup_prints_one(tmp_path, capsys):
    ctx = GroupContext(3, 2)
    path = write_file(tmp_path, "v.txt", ctx, {(t, t): 1.0 for t in range(3)})
    assert main(["eval", path]) == 0
    out = capsys.readouterr().out
    assert "wiener_norm 1.000000000000" in out


def test_eval_two_point_value(tmp_path, capsys):
    path = write_file(tmp_path, "f.txt", GroupContext(5), {0: 1.0, 1: 1.0})
    assert main(["eval", path]) == 0
    assert "wiener_norm 1.294427191000" in capsys.readouterr().out


def test_eval_empty_function_warns(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("zpwiener-function 1\np 5 d 1\n")
    assert main(["eval", str(empty)]) == 0
    captured = capsys.readouterr()
    assert "wiener_norm 0.000000000000" in captured.out
    assert "empty support" in captured.err


def test_eval_budget_exit_code(tmp_path):
    path = write_file(tmp_path, "f.txt", GroupContext(101), {0: 1.0})
    assert main(["eval", path, "--budget", "50"]) == 3


def test_verify_suite_and_exit_codes(tmp_path, capsys):
    out = tmp_path / "report.jsonl"
    assert main(["verify", "banach", "--seed", "7", "--count", "5",
                 "--output", str(out)]) == 0
    records = read_report_file(str(out))
    assert records[0]["record"] == "header"
    checks = [r for r in records if r["record"] == "check"]
    assert len(checks) == 5
    assert all(r["pass"] for r in checks)

    assert main(["verify", "bogus"]) == 2


def test_verify_all_covers_registry(tmp_path):
    out = tmp_path / "all.jsonl"
    assert main(["verify", "all", "--seed", "1", "--count", "2",
                 "--output", str(out)]) == 0
    names = {r["name"] for r in read_report_file(str(out)) if r["record"] == "check"}
    from zpwiener.verify import CHECKS

    assert names == set(CHECKS)


def test_verify_reports_are_byte_identical_across_runs(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    main(["verify", "all", "--seed", "3", "--count", "3", "--output", str(a)])
    main(["verify", "all", "--seed", "3", "--count", "3", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_reduce_dirichlet(tmp_path, capsys):
    path = write_file(tmp_path, "lam.txt", GroupContext(101), {1: 1.0, 35: 1.0})
    out = tmp_path / "red.jsonl"
    assert main(["reduce", "dirichlet", "--input", path, "--output", str(out)]) == 0
    assert "q 3" in capsys.readouterr().out
    rec = [r for r in read_report_file(str(out)) if r["record"] == "dirichlet"][0]
    assert rec["q"] == 3
    assert rec["support_signed"] == [3, 4]
    assert rec["norm_before"] == pytest.approx(rec["norm_after"], abs=1e-9)


def test_reduce_separating_map(tmp_path, capsys):
    path = write_file(tmp_path, "a.txt", GroupContext(5, 2), {(0, 0): 1.0, (0, 1): 1.0})
    out = tmp_path / "sep.jsonl"
    assert main(["reduce", "separating-map", "--input", path, "--output", str(out)]) == 0
    rec = [r for r in read_report_file(str(out)) if r["record"] == "separating-map"][0]
    assert sorted(rec["first_coords"]) == [0, 1]
    assert rec["norm_before"] == pytest.approx(rec["norm_after"], abs=1e-9)


def test_reduce_separating_map_hypothesis_error(tmp_path):
    ctx = GroupContext(11, 2)
    path = write_file(tmp_path, "big.txt", ctx, {(i, 0): 1.0 for i in range(5)})
    assert main(["reduce", "separating-map", "--input", path]) == 2


def test_reduce_line(tmp_path, capsys):
    ctx = GroupContext(5, 3)
    import numpy as np

    rng = np.random.default_rng(1)
    pts = {
        tuple(int(c) for c in np.unravel_index(int(i), (5, 5, 5))): 1.0
        for i in rng.choice(125, 25, replace=False)
    }
    path = write_file(tmp_path, "cube.txt", ctx, pts)
    out = tmp_path / "line.jsonl"
    assert main(["reduce", "line", "--input", path, "--output", str(out),
                 "--min-density-const", "1.0"]) == 0
    records = read_report_file(str(out))
    balances = [r for r in records if r["record"] == "balance"]
    assert len(balances) == 2
    assert all(r["theta"] <= 1.0 + 1e-12 for r in balances)
    line = [r for r in records if r["record"] == "line"][0]
    assert line["norm_before"] >= line["norm_after"] - 1e-9


def test_scan_ap_csv(tmp_path):
    out = tmp_path / "scan.csv"
    assert main(["scan", "ap", "--p", "101", "--sizes", "1,5,10",
                 "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "p,size,structure,wiener_norm,log_size,ratio"
    assert len(lines) == 4

    assert main(["scan", "ap", "--p", "101", "--sizes", "30"]) == 2  # |A| >= p/2


def test_scan_random_reproducible(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["scan", "random", "--p", "101", "--sizes", "5,9", "--seed", "3",
          "--output", str(a)])
    main(["scan", "random", "--p", "101", "--sizes", "5,9", "--seed", "3",
          "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_dim_command(tmp_path, capsys):
    path = write_file(tmp_path, "s.txt", GroupContext(7), {1: 1.0, 2: 1.0, 3: 1.0})
    assert main(["dim", "--input", path, "--mode", "exact"]) == 0
    out = capsys.readouterr().out
    assert "dim 2" in out


def test_energy_command(tmp_path, capsys):
    path = write_file(tmp_path, "s.txt", GroupContext(5), {0: 1.0, 1: 1.0})
    assert main(["energy", "--input", path, "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert "t2_direct 6" in out
    assert "t2_spectral 6" in out


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "zpwiener.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
