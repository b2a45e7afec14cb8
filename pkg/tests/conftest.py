import numpy as np
import pytest

from speclink.graph import build_graph


def random_graph(rng, n, p):
    """Erdos-Renyi G(n, p)."""
    i, j = np.triu_indices(n, k=1)
    mask = rng.random(len(i)) < p
    return build_graph(np.column_stack([i[mask], j[mask]]), n)


def random_connected_graph(rng, n, p):
    """Random recursive tree plus G(n, p) extra edges, with shuffled vertex ids."""
    perm = rng.permutation(n)
    tree = [(perm[v], perm[rng.integers(0, v)]) for v in range(1, n)]
    i, j = np.triu_indices(n, k=1)
    mask = rng.random(len(i)) < p
    extra = np.column_stack([i[mask], j[mask]])
    pairs = np.concatenate([np.array(tree, dtype=np.int64).reshape(-1, 2), extra])
    return build_graph(pairs, n)


def path_graph(n):
    return build_graph([(i, i + 1) for i in range(n - 1)], n)


def cycle_graph(n):
    return build_graph([(i, (i + 1) % n) for i in range(n)], n)


def complete_graph(n):
    return build_graph([(i, j) for i in range(n) for j in range(i + 1, n)], n)


def star_graph(leaves):
    return build_graph([(0, i) for i in range(1, leaves + 1)], leaves + 1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    def record(criterion, ok, detail):
        status = "PASS" if ok is True else ("FAIL" if ok is False else ok)
        ACCEPTANCE_LINES.append(f"criterion {criterion}: {status} - {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
