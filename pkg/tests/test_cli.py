from __future__ import annotations

import csv
import json

import pytest

from vertexcut.cli import main

from .conftest import DATA

EXAMPLE = str(DATA / "worked_example.txt")


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_partition_worked_example(tmp_path):
    out = tmp_path / "run"
    assert main(["partition", EXAMPLE, "--algo", "ebv", "--p", "2", "--alpha", "1",
                 "--beta", "1", "--sort", "--out", str(out)]) == 0
    lines = (out / "assignment.txt").read_text().splitlines()
    got = {tuple(map(int, l.split()[:2])): int(l.split()[2]) for l in lines}
    # A..F are 0..5 in the data file
    assert got == {(1, 2): 1, (0, 4): 0, (0, 5): 0, (0, 3): 0, (0, 1): 1, (0, 2): 1}
    summary = json.loads((out / "summary.json").read_text())
    assert [s["e_count"] for s in summary["subgraphs"]] == [3, 3]
    cfg = json.loads((out / "config.json").read_text())
    assert cfg["algorithm"] == "ebv" and cfg["p"] == 2 and cfg["seed"] == 0


def test_partition_single_part(tmp_path):
    assert main(["partition", EXAMPLE, "--algo", "ebv", "--p", "1", "--out", str(tmp_path)]) == 0
    parts = {l.split()[2] for l in (tmp_path / "assignment.txt").read_text().splitlines()}
    assert parts == {"0"}


def test_cvc_prime_records_warning(tmp_path, caplog):
    assert main(["partition", EXAMPLE, "--algo", "cvc", "--p", "7", "--out", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["params"]["grid"] == [1, 7]
    assert summary["warnings"]
    assert any("degenerate" in r.message for r in caplog.records)


def test_compare_power_law(tmp_path):
    assert main(["compare", "--power-law", "5000:10:2.4", "--p", "16", "--seed", "3",
                 "--out", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "compare.csv")
    assert [r["algorithm"] for r in rows] == ["ebv", "dbh", "cvc", "random"]
    rf = {r["algorithm"]: float(r["repl_factor"]) for r in rows}
    assert min(rf, key=rf.get) == "ebv"


def test_compare_p1_all_ones(tmp_path):
    assert main(["compare", EXAMPLE, "--p", "1", "--out", str(tmp_path)]) == 0
    for r in read_rows(tmp_path / "compare.csv"):
        assert float(r["edge_imb"]) == float(r["vertex_imb"]) == float(r["repl_factor"]) == 1.0


def test_metrics_from_assignment_file(tmp_path):
    run = tmp_path / "p"
    main(["partition", EXAMPLE, "--algo", "ebv", "--p", "2", "--out", str(run)])
    out = tmp_path / "m"
    assert main(["metrics", EXAMPLE, "--assignment", str(run / "assignment.txt"),
                 "--out", str(out)]) == 0
    m = json.loads((out / "metrics.json").read_text())
    assert m["replication_factor"] == pytest.approx(7 / 6)
    assert m["bounds_hold"] == [True, True]


@pytest.mark.parametrize("algo", ["ebv", "dbh", "cvc", "random"])
def test_simulate_cc_verify(tmp_path, algo):
    assert main(["simulate", "--power-law", "2000:6:2.2", "--algo", algo, "--p", "4",
                 "--prog", "cc", "--verify", "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "summary.json").read_text())["verified"] is True


def test_simulate_pr_iterations(tmp_path):
    assert main(["simulate", EXAMPLE, "--algo", "ebv", "--p", "2", "--prog", "pr",
                 "--iters", "10", "--verify", "--out", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "trace.csv")
    assert len({r["superstep"] for r in rows}) == 10
    assert sum(int(r["messages_sent"]) for r in rows) == 20


def test_simulate_sssp_results_use_original_ids(tmp_path):
    graph = tmp_path / "g.txt"
    graph.write_text("10 20 3\n20 30 4\n10 30 9\n40 50 1\n")
    assert main(["simulate", str(graph), "--weighted", "--algo", "dbh", "--p", "2",
                 "--prog", "sssp", "--source", "10", "--verify", "--out", str(tmp_path)]) == 0
    results = (tmp_path / "results.txt").read_text().splitlines()
    assert results == ["10 0", "20 3", "30 7", "40 inf", "50 inf"]


def test_simulate_missing_source_exits_2(tmp_path):
    assert main(["simulate", EXAMPLE, "--algo", "ebv", "--p", "2", "--prog", "sssp",
                 "--source", "99", "--out", str(tmp_path)]) == 2


def test_parse_error_exits_2(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n1 x\n")
    assert main(["partition", str(bad), "--algo", "ebv", "--p", "2",
                 "--out", str(tmp_path / "o")]) == 2


@pytest.mark.parametrize("argv", [
    ["partition", "--algo", "ebv", "--p", "2"],
    ["partition", "missing.txt", "--algo", "ebv", "--p", "2"],
    ["partition", EXAMPLE, "--algo", "ebv", "--p", "0"],
    ["partition", EXAMPLE, "--algo", "cvc", "--p", "6", "--grid", "4x4"],
    ["compare", EXAMPLE, "--p", "2", "--algos", "ebv,metis"],
    ["metrics", EXAMPLE],
])
def test_validation_errors_exit_2(tmp_path, argv):
    assert main(argv + ["--out", str(tmp_path)]) == 2


def test_generate_writes_edge_list(tmp_path):
    assert main(["generate", "--n", "500", "--avg-degree", "4", "--eta", "2.5",
                 "--seed", "1", "--out", str(tmp_path)]) == 0
    text = (tmp_path / "graph.txt").read_text()
    edges = [l for l in text.splitlines() if l and not l.startswith("#")]
    assert 800 <= len(edges) <= 1000
