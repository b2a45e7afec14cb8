"""Seeded preferential-attachment graphs for benchmarking."""

from __future__ import annotations

import numpy as np

from .graph import build_graph


def preferential_attachment_graph(n, m, seed=0):
    """Grow a graph from a complete core of ``m + 1`` vertices.

    Every later vertex links to ``m`` distinct earlier vertices chosen with
    probability proportional to degree. The result is connected with
    ``m(m+1)/2 + (n - m - 1) m`` edges.
    """
    if m < 1 or n <= m:
        raise ValueError("need m >= 1 and n > m")
    rng = np.random.default_rng(seed)
    core = np.array([(a, b) for a in range(m + 1) for b in range(a + 1, m + 1)], dtype=np.int64)
    new_edges = (n - m - 1) * m
    # every edge endpoint is written here, so sampling an entry uniformly
    # samples a vertex proportionally to its degree
    ends = np.empty(2 * (len(core) + new_edges), dtype=np.int64)
    ends[: 2 * len(core)] = core.ravel()
    filled = 2 * len(core)
    src = np.empty(new_edges, dtype=np.int64)
    dst = np.empty(new_edges, dtype=np.int64)
    pos = 0
    for v in range(m + 1, n):
        picks = set(ends[rng.integers(0, filled, size=m)].tolist())
        while len(picks) < m:
            picks.add(int(ends[rng.integers(0, filled)]))
        targets = sorted(picks)
        src[pos : pos + m] = v
        dst[pos : pos + m] = targets
        ends[filled : filled + m] = targets
        ends[filled + m : filled + 2 * m] = v
        filled += 2 * m
        pos += m
    pairs = np.concatenate([core, np.column_stack([src, dst])])
    return build_graph(pairs, n)
