"""spec_euclid and spec_cosine: link prediction on the resistance distance embedding."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .closest_pairs import k_closest_pairs_excluding
from .errors import ConfigError, DisconnectedGraphError
from .graph import is_connected
from .ranking import ScoredPair, order_descending, to_scored_pairs
from .spectral import compute_embedding

SCORES = ("euclid", "cosine")


@dataclass(frozen=True)
class EmbeddingPredictorConfig:
    dim: int = 8
    score: str = "euclid"
    k: int = 100
    enforce_k_limit: bool = True

    def __post_init__(self):
        if self.score not in SCORES:
            raise ConfigError(f"score must be one of {SCORES}, got {self.score!r}")
        if self.dim < 1:
            raise ConfigError("embedding dimension must be >= 1")
        if self.k < 1:
            raise ConfigError("k must be >= 1")

    @property
    def name(self):
        return f"spec_{self.score}{self.dim}"


def _check(g, config):
    if not is_connected(g):
        raise DisconnectedGraphError(
            "spectral predictors need a connected graph; reduce it to its largest "
            "connected component first"
        )
    if config.enforce_k_limit and config.k > max(g.num_edges, 1):
        raise ConfigError(
            f"k={config.k} exceeds |E|={g.num_edges}; pass enforce_k_limit=False to allow it"
        )


def euclid_from_embedding(g, coords, k):
    """Top-k non-edges by ``-|f(x) - f(y)|^2``."""
    res = k_closest_pairs_excluding(coords, k, g.edges)
    return to_scored_pairs(res.i, res.j, -res.sqdist)


def cosine_from_embedding(g, coords, k):
    """Top-k non-edges by cosine similarity of embedding rows.

    Rows are normalized and searched with the Euclidean machinery, since
    ``|g(x) - g(y)|^2 = 2 - 2 cos``. Zero rows have no direction; they are
    kept out of the search and score 0 against every vertex.
    """
    norms = np.linalg.norm(coords, axis=1)
    live = np.flatnonzero(norms > 0)
    unit = coords[live] / norms[live, None]
    # edges among live vertices, reindexed into the live point set
    pos = np.full(g.n, -1, dtype=np.int64)
    pos[live] = np.arange(len(live))
    e = pos[g.edges]
    e = e[(e >= 0).all(axis=1)]
    out = []
    if len(live) >= 2:
        res = k_closest_pairs_excluding(unit, k, e)
        gx, gy = live[res.i], live[res.j]
        # derived from the searched distance so scores agree with the ranking
        cos = np.clip(1.0 - 0.5 * res.sqdist, -1.0, 1.0)
        out = to_scored_pairs(np.minimum(gx, gy), np.maximum(gx, gy), cos)
        # live indices are increasing, so (i, j) order maps to (x, y) order
    dead = np.flatnonzero(norms == 0)
    if len(dead) == 0:
        return out
    return _merge_zero_rows(g, out, dead, k)


def _merge_zero_rows(g, ranked, dead, k):
    """Merge score-0 pairs touching zero-norm rows into a ranked list."""
    extra = []
    dead_set = set(dead.tolist())
    for x in range(g.n):
        if len(extra) >= k:
            break
        ys = range(x + 1, g.n) if x in dead_set else sorted(v for v in dead_set if v > x)
        for y in ys:
            if not g.has_edge(x, y):
                extra.append(ScoredPair(x, y, 0.0))
                if len(extra) >= k:
                    break
    pairs = ranked + extra
    x = np.array([p.x for p in pairs], dtype=np.int64)
    y = np.array([p.y for p in pairs], dtype=np.int64)
    s = np.array([p.score for p in pairs], dtype=np.float64)
    order = order_descending(x, y, s)[:k]
    return [pairs[t] for t in order]


def predict_spec_euclid(g, config, embedding=None):
    """Approximate resistance distance predictor of dimension ``config.dim``.

    Returns non-edges with score ``-|f(x) - f(y)|^2`` in descending order.
    A precomputed embedding can be passed to share it across runs.
    """
    _check(g, config)
    if embedding is None:
        embedding = compute_embedding(g, config.dim)
    return euclid_from_embedding(g, embedding.coords, config.k)


def predict_spec_cosine(g, config, embedding=None):
    _check(g, config)
    if embedding is None:
        embedding = compute_embedding(g, config.dim)
    return cosine_from_embedding(g, embedding.coords, config.k)


def predict_embedding(g, config, embedding=None):
    if config.score == "euclid":
        return predict_spec_euclid(g, config, embedding)
    return predict_spec_cosine(g, config, embedding)


@dataclass(frozen=True)
class ComplexityReport:
    n: int
    num_edges: int
    dim: int
    k: int
    search_seconds: float
    bound: float  # d |E| log^2 n

    @property
    def seconds_per_bound_unit(self):
        return self.search_seconds / self.bound if self.bound else float("nan")


def predicted_pair_count_bound_check(g, k, dim=8, score="euclid", embedding=None):
    """Time the search stage alone (embedding excluded) against ``d |E| log^2 n``."""
    if embedding is None:
        embedding = compute_embedding(g, dim)
    dim = embedding.dim
    run = euclid_from_embedding if score == "euclid" else cosine_from_embedding
    start = time.perf_counter()
    run(g, embedding.coords, k)
    elapsed = time.perf_counter() - start
    bound = dim * g.num_edges * math.log(max(g.n, 2)) ** 2
    return ComplexityReport(g.n, g.num_edges, dim, k, elapsed, bound)


def fit_exponent(sizes, seconds):
    """Least-squares slope of log(seconds) against log(size)."""
    slope, _ = np.polyfit(np.log(np.asarray(sizes, float)), np.log(np.asarray(seconds, float)), 1)
    return float(slope)
