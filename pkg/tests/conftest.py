"""Shared graph builders for the test suite."""

import numpy as np
import pytest

from slepnet.graph import Graph, build_graph


def random_connected_graph(n: int, rng: np.random.Generator, extra_edges: int | None = None) -> Graph:
    """Random weighted connected graph: a random spanning tree plus extras."""
    edges = {}
    order = rng.permutation(n)
    for k in range(1, n):
        i = int(order[k])
        j = int(order[int(rng.integers(0, k))])
        edges[(min(i, j), max(i, j))] = float(rng.uniform(0.2, 2.0))
    if extra_edges is None:
        extra_edges = n
    for _ in range(extra_edges):
        i, j = rng.integers(0, n, size=2)
        if i == j:
            continue
        key = (min(int(i), int(j)), max(int(i), int(j)))
        edges.setdefault(key, float(rng.uniform(0.2, 2.0)))
    return build_graph([(i, j, w) for (i, j), w in edges.items()], n)


def dense_operator_matrix(op) -> np.ndarray:
    """Materialize an implicit operator column by column (small N only)."""
    n = op.dimension
    m = np.empty((n, n))
    for k in range(n):
        e = np.zeros(n)
        e[k] = 1.0
        m[:, k] = op.apply(e)
    return m


def path_graph(n: int) -> Graph:
    return build_graph([(i, i + 1, 1.0) for i in range(n - 1)], n)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """One pass/fail line per acceptance criterion."""
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.module.__name__ == "test_acceptance":
        status = "PASS" if report.passed else "FAIL"
        print(f"\nACCEPTANCE {status}: {item.name}")
