"""Immutable undirected simple graph in CSR form."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from .errors import InputError


class Graph:
    """Undirected simple graph with dense vertex ids ``0..n-1``.

    Adjacency is stored CSR-style: the neighbors of ``x`` are
    ``indices[indptr[x]:indptr[x + 1]]``, sorted ascending. Instances are
    treated as immutable; the arrays are flagged read-only.

    Parameters
    ----------
    n : int
        Number of vertices.
    indptr, indices : ndarray
        CSR arrays. Use :func:`build_graph` unless the arrays are already
        symmetric, sorted and free of loops and duplicates.
    labels : sequence, optional
        External label of each vertex. Defaults to the vertex ids.
    """

    def __init__(self, n, indptr, indices, labels=None):
        self.n = int(n)
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False
        if labels is None:
            labels = list(range(self.n))
        if len(labels) != self.n:
            raise InputError(f"expected {self.n} labels, got {len(labels)}")
        self.labels = list(labels)

    def __repr__(self):
        return f"Graph(n={self.n}, num_edges={self.num_edges})"

    @property
    def num_edges(self):
        return len(self.indices) // 2

    @cached_property
    def degrees(self):
        deg = np.diff(self.indptr)
        deg.flags.writeable = False
        return deg

    def degree(self, x):
        return int(self.indptr[x + 1] - self.indptr[x])

    def neighbors(self, x):
        return self.indices[self.indptr[x] : self.indptr[x + 1]]

    def has_edge(self, x, y):
        nbrs = self.neighbors(x)
        pos = np.searchsorted(nbrs, y)
        return bool(pos < len(nbrs) and nbrs[pos] == y)

    @cached_property
    def edges(self):
        """``(|E|, 2)`` array of edges with ``x < y``, lexicographically sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        mask = src < self.indices
        out = np.column_stack([src[mask], self.indices[mask]])
        out.flags.writeable = False
        return out

    @cached_property
    def edge_codes(self):
        """Sorted ``x * n + y`` codes of the edges, for vectorized membership tests."""
        e = self.edges
        codes = e[:, 0] * np.int64(self.n) + e[:, 1]
        codes.flags.writeable = False
        return codes

    def contains_pairs(self, x, y):
        """Vectorized edge membership for pair arrays."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        codes = np.minimum(x, y) * np.int64(self.n) + np.maximum(x, y)
        pos = np.searchsorted(self.edge_codes, codes)
        pos = np.minimum(pos, max(len(self.edge_codes) - 1, 0))
        if len(self.edge_codes) == 0:
            return np.zeros(len(codes), dtype=bool)
        return self.edge_codes[pos] == codes

    def adjacency(self):
        """Sparse CSR adjacency matrix A (float64)."""
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def laplacian(self):
        return LaplacianView.of(self)

    def subgraph(self, vertices):
        """Induced subgraph on ``vertices`` (reindexed in the given order)."""
        vertices = np.asarray(vertices, dtype=np.int64)
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[vertices] = np.arange(len(vertices))
        e = self.edges
        keep = (remap[e[:, 0]] >= 0) & (remap[e[:, 1]] >= 0)
        pairs = remap[e[keep]]
        return build_graph(pairs, len(vertices), labels=[self.labels[v] for v in vertices])


@dataclass(frozen=True)
class LaplacianView:
    """Sparse matrices A, D and L = D - A of a graph."""

    graph: Graph
    A: sp.csr_matrix
    D: sp.dia_matrix
    L: sp.csr_matrix

    @classmethod
    def of(cls, g):
        A = g.adjacency()
        D = sp.diags(g.degrees.astype(np.float64))
        L = (D - A).tocsr()
        L.sort_indices()
        return cls(g, A, D, L)


def build_graph(edge_pairs, n, labels=None):
    """Build a :class:`Graph` from unordered vertex-id pairs.

    Self-loops are dropped and parallel edges collapsed.

    Raises
    ------
    InputError
        If any id lies outside ``[0, n)``.
    """
    n = int(n)
    pairs = np.asarray(edge_pairs, dtype=np.int64).reshape(-1, 2)
    if len(pairs) and (pairs.min() < 0 or pairs.max() >= n):
        bad = pairs[(pairs < 0).any(axis=1) | (pairs >= n).any(axis=1)][0]
        raise InputError(f"vertex id out of range [0, {n}): {tuple(bad)}")
    pairs = pairs[pairs[:, 0] != pairs[:, 1]]
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    codes = np.unique(lo * np.int64(n) + hi) if n else np.empty(0, np.int64)
    lo, hi = np.divmod(codes, np.int64(max(n, 1)))
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return Graph(n, indptr, dst, labels=labels)


def degree(g, x):
    return g.degree(x)


def common_neighbor_count(g, x, y):
    """Number of shared neighbors, by merging the two sorted neighbor lists."""
    a, b = g.neighbors(x), g.neighbors(y)
    i = j = count = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        if a[i] < b[j]:
            i += 1
        elif a[i] > b[j]:
            j += 1
        else:
            count += 1
            i += 1
            j += 1
    return count


def bfs_distances(g, source):
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    indptr, indices = g.indptr, g.indices
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in indices[indptr[u] : indptr[u + 1]]:
            if dist[v] < 0:
                dist[v] = du
                queue.append(v)
    return dist


def shortest_path_length(g, x, y):
    """BFS hop distance between ``x`` and ``y``, or ``None`` if unreachable."""
    if x == y:
        return 0
    dist = {x: 0}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            v = int(v)
            if v not in dist:
                if v == y:
                    return dist[u] + 1
                dist[v] = dist[u] + 1
                queue.append(v)
    return None


def connected_components(g):
    """Return ``(count, label per vertex)``."""
    if g.n == 0:
        return 0, np.empty(0, dtype=np.int64)
    count, labels = csgraph.connected_components(g.adjacency(), directed=False)
    return count, labels.astype(np.int64)


def is_connected(g):
    return g.n > 0 and connected_components(g)[0] == 1
