from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from vertexcut import Graph, PowerLawSpec, generate_power_law, load_edge_list

DATA = Path(__file__).parent / "data"

# vertex names of the worked example
A, B, C, D, E, F = range(6)


def random_graph(rng: np.random.Generator, n: int, m: int, *, directed=False, weighted=False,
                 loops=True, max_weight=9) -> Graph:
    src = rng.integers(0, n, size=m)
    dst = rng.integers(0, n, size=m)
    if not loops:
        dst = np.where(src == dst, (dst + 1) % n, dst)
    w = rng.integers(0, max_weight + 1, size=m) if weighted else None
    return Graph(n, src, dst, directed=directed, weights=w)


@pytest.fixture
def example_graph() -> Graph:
    return load_edge_list(DATA / "worked_example.txt")


@pytest.fixture(scope="session")
def desk_graph() -> Graph:
    return generate_power_law(PowerLawSpec(100_000, 10, 2.4, seed=7))


_ACCEPTANCE: list[tuple[str, str, float]] = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    label = dict(report.user_properties).get("criterion")
    if label:
        _ACCEPTANCE.append((label, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome, duration in sorted(_ACCEPTANCE):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {label} ({duration:.2f}s)")
