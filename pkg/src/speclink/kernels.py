"""Dense graph kernels: Katz, rooted PageRank, effective resistance, shortest path.

These are desk-scale predictors (one dense n x n solve each). They also
serve as exact references for the spectral approximations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as la
from scipy.sparse import csgraph

from .errors import ConfigError, DenseSizeError, DisconnectedGraphError, DivergenceError
from .graph import is_connected
from .ranking import top_k

DEFAULT_DENSE_GUARD = 5000
DEFAULT_KATZ_BETA = 0.01
DEFAULT_PAGERANK_ALPHA = 0.15


@dataclass(frozen=True)
class GraphKernel:
    """An n x n score matrix; larger entries mean stronger predicted affinity."""

    name: str
    matrix: np.ndarray

    @property
    def n(self):
        return self.matrix.shape[0]

    def score(self, x, y):
        return float(self.matrix[x, y])


@dataclass(frozen=True)
class KatzParams:
    beta: float = DEFAULT_KATZ_BETA

    def __post_init__(self):
        if not 0 < self.beta < 1:
            raise ConfigError(f"Katz beta must lie in (0, 1), got {self.beta}")


@dataclass(frozen=True)
class PageRankParams:
    alpha: float = DEFAULT_PAGERANK_ALPHA

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ConfigError(f"PageRank alpha must lie in (0, 1), got {self.alpha}")


def _guard(g, dense_guard):
    if dense_guard is not None and g.n > dense_guard:
        raise DenseSizeError(
            f"dense kernel needs an {g.n}x{g.n} matrix, above the guard of {dense_guard} "
            "vertices; raise --dense-guard or use spec_euclid/spec_cosine"
        )


def spectral_radius(g, iters=1000, tol=1e-12, seed=0):
    """Power-iteration estimate of the largest adjacency eigenvalue.

    Iterates on ``A + I`` so bipartite graphs (spectrum symmetric about 0)
    still converge.
    """
    if g.num_edges == 0:
        return 0.0
    A = g.adjacency()
    v = np.random.default_rng(seed).random(g.n) + 0.5
    v /= np.linalg.norm(v)
    est = 0.0
    for _ in range(iters):
        w = A @ v + v
        new = float(v @ w) - 1.0
        norm = np.linalg.norm(w)
        v = w / norm
        if abs(new - est) <= tol * max(1.0, abs(new)):
            est = new
            break
        est = new
    return est


def katz_kernel(g, params=KatzParams(), dense_guard=DEFAULT_DENSE_GUARD):
    """``(I - beta A)^-1 - I``, the summed beta-discounted path counts.

    The Cholesky factorization of ``I - beta A`` exists exactly when
    ``beta * rho(A) < 1``, so a failed factorization is the divergence test.
    """
    _guard(g, dense_guard)
    n = g.n
    M = np.eye(n) - params.beta * g.adjacency().toarray()
    try:
        factor = la.cho_factor(M, lower=True)
    except la.LinAlgError:
        rho = spectral_radius(g)
        raise DivergenceError(
            f"Katz series diverges: beta={params.beta} but 1/rho(A) ~= {1.0 / rho:.6g}"
        ) from None
    K = la.cho_solve(factor, np.eye(n))
    K = 0.5 * (K + K.T)
    K[np.diag_indices(n)] -= 1.0
    return GraphKernel("katz", K)


def rooted_pagerank_kernel(g, params=PageRankParams(), dense_guard=DEFAULT_DENSE_GUARD):
    """``(1 - alpha) (I - alpha D^-1 A)^-1``; row x is the walk rooted at x.

    Raises
    ------
    ConfigError
        If some vertex is isolated (D is singular).
    """
    _guard(g, dense_guard)
    deg = g.degrees
    if g.n and deg.min() == 0:
        raise ConfigError("rooted PageRank needs every vertex to have degree >= 1")
    P = g.adjacency().toarray() / deg[:, None]
    K = (1.0 - params.alpha) * la.solve(np.eye(g.n) - params.alpha * P, np.eye(g.n))
    return GraphKernel("pagerank", K)


def laplacian_pseudoinverse(g):
    """L^+ via ``(L + J/n)^-1 - J/n``; exact for connected graphs."""
    n = g.n
    L = g.laplacian().L.toarray()
    J = np.full((n, n), 1.0 / n)
    Lp = la.solve(L + J, np.eye(n), assume_a="pos") - J
    return 0.5 * (Lp + Lp.T)


def resistance_matrix(g, dense_guard=DEFAULT_DENSE_GUARD):
    """All-pairs effective resistance ``r[x, y] = (e_x - e_y)^T L^+ (e_x - e_y)``."""
    _guard(g, dense_guard)
    if not is_connected(g):
        raise DisconnectedGraphError()
    Lp = laplacian_pseudoinverse(g)
    diag = np.diag(Lp)
    r = diag[:, None] + diag[None, :] - 2.0 * Lp
    r[np.diag_indices(g.n)] = 0.0
    return r


def exact_resistance_kernel(g, dense_guard=DEFAULT_DENSE_GUARD):
    """Negated effective resistance.

    Commute time is resistance times a graph-wide constant, so this kernel
    ranks pairs exactly as negated commute time does.
    """
    return GraphKernel("resistance", -resistance_matrix(g, dense_guard))


def shortest_path_kernel(g, dense_guard=DEFAULT_DENSE_GUARD):
    """Negated hop distance; unreachable pairs score ``-inf``."""
    _guard(g, dense_guard)
    dist = csgraph.shortest_path(g.adjacency(), method="D", directed=False, unweighted=True)
    return GraphKernel("shortest-path", -dist)


def predict_from_kernel(g, kernel, k):
    """Top-k non-edges by kernel score, scanning every non-edge.

    Asymmetric kernels are scored as ``(K[x, y] + K[y, x]) / 2``.
    """
    if kernel.n != g.n:
        raise ValueError(f"kernel is {kernel.n}x{kernel.n} but graph has {g.n} vertices")
    x, y = np.triu_indices(g.n, k=1)
    x = x.astype(np.int64)
    y = y.astype(np.int64)
    keep = ~g.contains_pairs(x, y)
    x, y = x[keep], y[keep]
    M = kernel.matrix
    scores = 0.5 * (M[x, y] + M[y, x])
    return top_k(x, y, scores, k)
