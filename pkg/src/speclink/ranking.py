"""Scored pairs and the deterministic top-k ordering used by every predictor.

Ordering is always: higher score first, then lexicographic ``(x, y)``.
Scores are compared after snapping to a relative grid of 2**-40 (about
1e-12), so values that differ only by floating-point summation order are
treated as ties.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

SNAP_BITS = 40


class ScoredPair(NamedTuple):
    x: int
    y: int
    score: float


def snap(values):
    """Round to 40 significant bits so near-equal floats compare as ties."""
    values = np.asarray(values, dtype=np.float64)
    mant, expo = np.frexp(values)
    with np.errstate(invalid="ignore"):
        snapped = np.ldexp(np.round(mant * 2.0**SNAP_BITS), expo - SNAP_BITS)
    # frexp leaves infinities in the mantissa; keep them as-is
    return np.where(np.isfinite(values), snapped, values)


def canonical(x, y):
    """Return ``(min, max)`` elementwise for pair index arrays."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    return np.minimum(x, y), np.maximum(x, y)


def pair_codes(x, y, n):
    """Encode canonical pairs as ``x * n + y`` int64 codes."""
    lo, hi = canonical(x, y)
    return lo * np.int64(n) + hi


def order_descending(x, y, score):
    """Indices sorting pairs by score descending, ties lexicographic."""
    return np.lexsort((np.asarray(y), np.asarray(x), -snap(score)))


def top_k_arrays(x, y, score, k):
    """Select the k best pairs; returns ``(x, y, score)`` arrays in rank order."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    score = np.asarray(score, dtype=np.float64)
    if k <= 0 or len(score) == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), np.empty(0)
    if k < len(score):
        key = snap(score)
        # keep everything tied with the k-th best so tie-breaking stays exact
        kth = np.partition(-key, k - 1)[k - 1]
        keep = np.flatnonzero(-key <= kth)
        x, y, score = x[keep], y[keep], score[keep]
    order = order_descending(x, y, score)[:k]
    return x[order], y[order], score[order]


def to_scored_pairs(x, y, score):
    return [ScoredPair(int(a), int(b), float(s)) for a, b, s in zip(x, y, score)]


def top_k(x, y, score, k):
    """Top-k pairs as a list of :class:`ScoredPair`."""
    return to_scored_pairs(*top_k_arrays(x, y, score, k))
