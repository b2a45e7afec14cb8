"""Exact k closest pairs of a point set in R^d.

The search follows the distance-threshold idea: find a radius r holding at
least k admissible pairs, enumerate every pair within r, then keep the k
smallest. Ball queries on a k-d tree supply the enumeration. The starting radius comes
from a random sample of pair distances and grows until it is large enough,
so the work tracks the number of pairs near the threshold rather than n^2.

Excluded pairs (graph edges, for link prediction) are accounted for exactly:
their distances are computed directly and subtracted from the counts, so the
radius only has to reach k surviving pairs, not ``|excluded| + k``.

Ordering is by squared Euclidean distance (snapped to ~1e-12 relative, see
:mod:`speclink.ranking`) and then lexicographically by ``(i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain

import numpy as np
from scipy.spatial import cKDTree

from .ranking import pair_codes, snap

# below this many points the n^2 / 2 pairs are cheaper than building a tree
SMALL_N = 64
# sampled pair distances used to place the first radius
_SAMPLE_CAP = 4_000_000
_SAMPLE_HITS = 32
_SAMPLE_PER_POINT = 16
_CHUNK = 500_000
_QUERY_BLOCK = 20_000
# aim past k so one enumeration usually suffices
_OVERSHOOT = 2.0
_PAD = 1e-9


@dataclass(frozen=True)
class PairDistanceResult:
    """Pairs ``i[t] < j[t]`` with squared distances, in rank order."""

    i: np.ndarray
    j: np.ndarray
    sqdist: np.ndarray

    @property
    def distance(self):
        return np.sqrt(self.sqdist)

    def __len__(self):
        return len(self.i)

    def __iter__(self):
        return iter(zip(self.i.tolist(), self.j.tolist(), self.distance.tolist()))

    def pairs(self):
        return list(zip(self.i.tolist(), self.j.tolist()))


def _as_points(points):
    P = np.ascontiguousarray(points, dtype=np.float64)
    if P.ndim == 1:
        P = P[:, None]
    if P.ndim != 2:
        raise ValueError("points must be an (n, d) array")
    if not np.isfinite(P).all():
        raise ValueError("points must have finite coordinates")
    return P


def _sqdist(P, i, j):
    diff = P[i] - P[j]
    return (diff * diff).sum(axis=1)


def _select(P, i, j, K):
    sq = _sqdist(P, i, j)
    key = snap(sq)
    if K < len(key):
        kth = np.partition(key, K - 1)[K - 1]
        keep = np.flatnonzero(key <= kth)
        i, j, sq, key = i[keep], j[keep], sq[keep], key[keep]
    order = np.lexsort((j, i, key))[:K]
    return PairDistanceResult(i[order], j[order], sq[order])


def _all_pairs(n):
    i, j = np.triu_indices(n, k=1)
    return i.astype(np.int64), j.astype(np.int64)


def _pairs_within(tree, r2):
    # pad the radius so pairs tied with the K-th distance are never lost
    reach = np.sqrt(r2) * (1.0 + _PAD)
    # one ball query per point; in 8-D this beats the dual-tree query_pairs
    # and scales close to linearly once balls hold few points
    I, J = [], []
    for start in range(0, tree.n, _QUERY_BLOCK):
        lists = tree.query_ball_point(tree.data[start:start + _QUERY_BLOCK], reach, return_sorted=False)
        counts = np.fromiter(map(len, lists), dtype=np.int64, count=len(lists))
        j = np.fromiter(chain.from_iterable(lists), dtype=np.int64, count=int(counts.sum()))
        i = np.repeat(np.arange(start, start + len(lists), dtype=np.int64), counts)
        keep = i < j
        I.append(i[keep])
        J.append(j[keep])
    return np.concatenate(I), np.concatenate(J)


def _initial_radius(P, K, total, excluded_sq, rng):
    """Squared radius expected to hold about ``1.5 K`` admissible pairs.

    Estimated from a random sample of pair distances; when the target
    quantile is too small to sample, the sample's lower tail is extrapolated
    with its local growth exponent.
    """
    n, dim = P.shape
    target = _OVERSHOOT * K
    # linear in n; the growth loop corrects a rough start
    cap = min(_SAMPLE_CAP, _SAMPLE_PER_POINT * n)
    size = int(min(cap, max(1000, np.ceil(_SAMPLE_HITS * total / target))))
    chunks = []
    for start in range(0, size, _CHUNK):
        m = min(_CHUNK, size - start)
        i = rng.integers(0, n, m)
        j = rng.integers(0, n, m)
        i, j = i[i != j], j[i != j]
        chunks.append(_sqdist(P, i, j))
    sample = np.sort(np.concatenate(chunks))
    if len(sample) < _SAMPLE_HITS:
        return float(sample[-1]) if len(sample) else 0.0
    hits = np.searchsorted(sample, sample, side="right")
    est = total * hits / len(sample) - np.searchsorted(excluded_sq, sample, side="right")
    reached = np.flatnonzero(est >= target)
    if len(reached) and hits[reached[0]] >= 8:
        return float(sample[reached[0]])
    if not len(reached):
        return float(sample[-1])
    lo, hi = sample[7], sample[_SAMPLE_HITS - 1]
    if lo <= 0.0:
        return 0.0
    alpha = 2.0 * np.log(_SAMPLE_HITS / 8) / np.log(hi / lo) if hi > lo else float(dim)
    alpha = float(np.clip(alpha, 1.0, dim))
    ratio = target / (total * 8 / len(sample))
    return float(lo * ratio ** (2.0 / alpha))


def _closest(P, K, codes):
    """The K smallest admissible pairs; ``codes`` lists excluded pair codes."""
    n, dim = P.shape
    total = n * (n - 1) // 2
    if n <= SMALL_N or 4 * (K + len(codes)) >= total:
        i, j = _all_pairs(n)
        if len(codes):
            keep = ~np.isin(pair_codes(i, j, n), codes)
            i, j = i[keep], j[keep]
        return _select(P, i, j, K)
    excluded_sq = np.sort(_sqdist(P, codes // n, codes % n)) if len(codes) else np.empty(0)
    span = P.max(axis=0) - P.min(axis=0)
    ceiling = float(span @ span)  # every pair lies within this squared radius
    tree = cKDTree(P)
    r2 = _initial_radius(P, K, total, excluded_sq, np.random.default_rng(0))
    alpha, last = float(dim), None
    while True:
        i, j = _pairs_within(tree, r2)
        if len(codes):
            keep = ~np.isin(pair_codes(i, j, n), codes)
            i, j = i[keep], j[keep]
        inside = int(np.count_nonzero(_sqdist(P, i, j) <= r2))
        if inside >= K or r2 >= ceiling:
            return _select(P, i, j, K)
        if inside == 0 or r2 == 0.0:
            grown = 4.0 * r2 if r2 > 0 else ceiling * 1e-12
        else:
            if last is not None and last[1] > 0 and r2 > last[0]:
                # local growth exponent of the pair count, from the last two radii
                seen = 2.0 * np.log(inside / last[1]) / np.log(r2 / last[0])
                alpha = float(np.clip(seen, 1.0, dim))
            grown = r2 * max((_OVERSHOOT * K / inside) ** (2.0 / alpha), 1.21)
        last = (r2, inside)
        r2 = min(grown, ceiling)


def _exclusion_codes(excluded, n):
    arr = np.asarray(
        list(excluded) if not isinstance(excluded, np.ndarray) else excluded, dtype=np.int64
    ).reshape(-1, 2)
    arr = arr[arr[:, 0] != arr[:, 1]]
    if len(arr) and (arr.min() < 0 or arr.max() >= n):
        raise ValueError("excluded pair refers to a point outside the set")
    return np.unique(pair_codes(arr[:, 0], arr[:, 1], n))


def _empty():
    empty = np.empty(0, dtype=np.int64)
    return PairDistanceResult(empty, empty.copy(), np.empty(0))


def k_closest_pairs(points, k):
    """The k pairs of minimal Euclidean distance, exactly.

    Parameters
    ----------
    points : array_like, shape (n, d)
    k : int
        Requested pairs; capped at n(n-1)/2.

    Returns
    -------
    PairDistanceResult
        ``min(k, n(n-1)/2)`` pairs sorted by distance, ties by ``(i, j)``.
    """
    return k_closest_pairs_excluding(points, k, ())


def k_closest_pairs_excluding(points, k, excluded):
    """The k closest pairs that are not in ``excluded``.

    ``excluded`` holds unordered index pairs. Fewer than k pairs come back
    only when fewer than k admissible pairs exist.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    P = _as_points(points)
    n = len(P)
    codes = _exclusion_codes(excluded, n) if len(excluded) else np.empty(0, np.int64)
    K = min(int(k), n * (n - 1) // 2 - len(codes))
    if K <= 0:
        return _empty()
    return _closest(P, K, codes)
