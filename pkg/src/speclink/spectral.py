"""Smallest nonzero Laplacian eigenpairs and the resistance distance embedding.

For a connected graph with Laplacian eigenpairs ``(lam_i, v_i)``, the
embedding ``f(x) = [v_2[x] / sqrt(lam_2), ..., v_{d+1}[x] / sqrt(lam_{d+1})]``
satisfies ``|f(x) - f(y)|^2 = (e_x - e_y)^T S (e_x - e_y)`` where
``S = sum_i v_i v_i^T / lam_i`` is the best rank-d approximation of L^+.
"""

from __future__ import annotations

import logging
import struct
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
import scipy.linalg as la
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from .errors import ConfigError, ConvergenceError, DisconnectedGraphError
from .graph import is_connected

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
DEFAULT_MAXITER = 10_000
# below this size a dense symmetric eigensolve is both exact and fastest
DENSE_LIMIT = 1000
BINARY_MAGIC = b"SPLEMB\x00\x01"


@dataclass(frozen=True)
class EigenPairs:
    """Eigenvalues ``lam_2 <= ... <= lam_{d+1}`` and unit eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray
    next_value: float | None = None
    method: str = ""
    residuals: np.ndarray | None = None

    @property
    def dim(self):
        return len(self.values)

    @property
    def gap(self):
        """``lam_{d+2} - lam_{d+1}``; None when d = n - 1."""
        if self.next_value is None:
            return None
        return float(self.next_value - self.values[-1])


@dataclass(frozen=True)
class SpectralEmbedding:
    coords: np.ndarray
    eigenvalues: np.ndarray
    normalized: bool = False
    gap: float | None = None
    notes: tuple = field(default_factory=tuple)

    @property
    def n(self):
        return self.coords.shape[0]

    @property
    def dim(self):
        return self.coords.shape[1]


def residual_norms(L, values, vectors):
    return np.linalg.norm(L @ vectors - vectors * values, axis=0)


def _fix_signs(V):
    # make the largest-magnitude entry of each column positive (first on ties)
    idx = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[idx, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


def _rayleigh_ritz(L, V):
    """Deflate the all-ones direction, orthonormalize, and re-diagonalize."""
    V = V - V.mean(axis=0)
    Q, _ = np.linalg.qr(V)
    H = Q.T @ (L @ Q)
    theta, W = np.linalg.eigh(0.5 * (H + H.T))
    return theta, Q @ W


def _dense(L, d):
    n = L.shape[0]
    top = min(d + 1, n - 1)
    w, V = la.eigh(L.toarray(), subset_by_index=[0, top])
    nxt = float(w[d + 1]) if d + 1 <= top else None
    return w[1 : d + 1], V[:, 1 : d + 1], nxt


def _lanczos(L, d, tol, maxiter, seed):
    """Implicitly restarted Lanczos on ``L + c J / n`` with c above lam_max.

    The shift moves the constant vector's zero eigenvalue to the top of the
    spectrum, so the smallest eigenpairs of the shifted operator are exactly
    the smallest nonzero eigenpairs of L.
    """
    n = L.shape[0]
    # Gershgorin: lam_max(L) <= 2 * max degree
    shift = 2.0 * float(L.diagonal().max())

    def matvec(x):
        x = x.reshape(n, -1)
        return L @ x + shift * x.mean(axis=0)

    op = LinearOperator((n, n), matvec=matvec, matmat=matvec, dtype=np.float64)
    want = min(d + 1, n - 2)
    v0 = np.random.default_rng(seed).standard_normal(n)
    v0 -= v0.mean()
    ncv = min(n - 1, max(2 * want + 1, 40))
    try:
        w, V = eigsh(op, k=want, which="SA", tol=tol, maxiter=maxiter, v0=v0, ncv=ncv)
    except ArpackNoConvergence as exc:
        best = None
        if len(exc.eigenvalues):
            best = float(residual_norms(L, exc.eigenvalues, exc.eigenvectors).max())
        raise ConvergenceError(
            f"Lanczos did not converge within {maxiter} restarts", best_residual=best
        ) from None
    order = np.argsort(w)
    w, V = w[order], V[:, order]
    nxt = float(w[d]) if want > d else None
    return w[:d], V[:, :d], nxt


def smallest_nonzero_eigenpairs(
    g, d, tol=DEFAULT_TOL, maxiter=DEFAULT_MAXITER, method="auto", seed=0
):
    """The d smallest nonzero Laplacian eigenpairs of a connected graph.

    Parameters
    ----------
    g : Graph
    d : int
        Number of eigenpairs, ``1 <= d <= n - 1``.
    tol : float
        Required residual ``|L v - lam v| <= tol * max(1, lam)``.
    method : {"auto", "dense", "lanczos"}
        ``auto`` picks dense for small graphs or when d is close to n.
    """
    n = g.n
    if not 1 <= d <= n - 1:
        raise ConfigError(f"embedding dimension must be in [1, {n - 1}], got {d}")
    if not is_connected(g):
        raise DisconnectedGraphError()
    L = g.laplacian().L
    if method == "auto":
        method = "dense" if n <= DENSE_LIMIT or d + 3 >= n else "lanczos"
    if method == "dense":
        values, vectors, nxt = _dense(L, d)
    elif method == "lanczos":
        if d + 3 >= n:
            raise ConfigError("lanczos needs d + 3 < n; use method='dense'")
        values, vectors, nxt = _lanczos(L, d, tol, maxiter, seed)
    else:
        raise ConfigError(f"unknown eigensolver {method!r}")

    values, vectors = _rayleigh_ritz(L, vectors)
    vectors = _fix_signs(vectors)
    res = residual_norms(L, values, vectors)
    bound = tol * np.maximum(1.0, np.abs(values))
    if values[0] <= tol * max(1.0, float(values[-1])):
        raise DisconnectedGraphError("second Laplacian eigenvalue is numerically zero")
    if np.any(res > bound):
        raise ConvergenceError(
            f"eigenpair residuals exceed tolerance (worst {res.max():.3e})",
            best_residual=float(res.max()),
        )
    if nxt is not None and nxt - values[-1] <= tol * max(1.0, nxt):
        log.info("eigenvalue %d is repeated; the embedding basis is not unique", d + 1)
    return EigenPairs(values, vectors, nxt, method, res)


def resistance_embedding(pairs):
    """Scale each eigenvector by ``1 / sqrt(lam)``; row x is f(x)."""
    values = np.asarray(pairs.values, dtype=np.float64)
    if np.any(values <= 0):
        raise ConfigError("resistance embedding needs strictly positive eigenvalues")
    coords = np.ascontiguousarray(pairs.vectors / np.sqrt(values))
    return SpectralEmbedding(coords, values.copy(), gap=pairs.gap)


def compute_embedding(g, d, **solver_kwargs):
    return resistance_embedding(smallest_nonzero_eigenpairs(g, d, **solver_kwargs))


def normalize_embedding(emb):
    """Scale every row to unit length; all-zero rows stay zero (with a warning)."""
    norms = np.linalg.norm(emb.coords, axis=1)
    zero = norms == 0
    coords = emb.coords / np.where(zero, 1.0, norms)[:, None]
    notes = emb.notes
    if zero.any():
        msg = f"{int(zero.sum())} embedding rows have zero norm and were left as zero"
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
        notes = notes + (msg,)
    return replace(emb, coords=coords, normalized=True, notes=notes)


def squared_distances(coords, x, y):
    """``|coords[x] - coords[y]|^2`` for index arrays."""
    diff = coords[np.asarray(x)] - coords[np.asarray(y)]
    return (diff * diff).sum(axis=1)


def save_embedding(emb, path, binary=None):
    """Write an embedding as text (``.txt``/``.tsv``) or binary (anything else).

    Binary layout, all little-endian: 8-byte magic ``SPLEMB\\0\\1``, uint64 n,
    uint64 d, uint8 normalized flag, d float64 eigenvalues, then the n x d
    coordinates as float64 in row-major order.
    """
    path = Path(path)
    if binary is None:
        binary = path.suffix not in (".txt", ".tsv")
    n, d = emb.coords.shape
    if binary:
        with open(path, "wb") as fh:
            fh.write(BINARY_MAGIC)
            fh.write(struct.pack("<QQB", n, d, int(emb.normalized)))
            fh.write(np.asarray(emb.eigenvalues, dtype="<f8").tobytes())
            fh.write(np.ascontiguousarray(emb.coords, dtype="<f8").tobytes())
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# n={n} d={d} normalized={int(emb.normalized)}\n")
        fh.write("# eigenvalues " + " ".join(repr(float(v)) for v in emb.eigenvalues) + "\n")
        for row in emb.coords:
            fh.write("\t".join(repr(float(v)) for v in row) + "\n")


def load_embedding(path):
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(len(BINARY_MAGIC))
    if head == BINARY_MAGIC:
        raw = path.read_bytes()
        off = len(BINARY_MAGIC)
        n, d, normalized = struct.unpack_from("<QQB", raw, off)
        off += struct.calcsize("<QQB")
        values = np.frombuffer(raw, dtype="<f8", count=d, offset=off).astype(np.float64)
        off += 8 * d
        coords = np.frombuffer(raw, dtype="<f8", count=n * d, offset=off).astype(np.float64)
        return SpectralEmbedding(coords.reshape(n, d), values, normalized=bool(normalized))
    with open(path, encoding="utf-8") as fh:
        meta = dict(tok.split("=") for tok in fh.readline()[1:].split())
        values = np.array([float(v) for v in fh.readline().split()[2:]])
        n, d = int(meta["n"]), int(meta["d"])
        coords = np.loadtxt(fh, dtype=np.float64, ndmin=2).reshape(n, d)
    return SpectralEmbedding(coords, values, normalized=bool(int(meta["normalized"])))
