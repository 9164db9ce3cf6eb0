"""Spectral radii of A(G) and Q(G) = D(G) + A(G) by power iteration."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .graph import Graph, GraphError

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 100_000


@dataclass(frozen=True)
class SpectralEstimate:
    value: float
    residual: float
    iterations: int
    converged: bool
    disconnected: bool = False


def _estimate(G: Graph, mat, shift: float, tol: float, max_iter: int) -> SpectralEstimate:
    if G.n < 1:
        raise GraphError("spectral radius needs n >= 1")
    if tol <= 0:
        raise GraphError(f"tol must be positive, got {tol}")
    value, resid, its, ok = kernels.power_iteration(mat, shift, tol, max_iter)
    return SpectralEstimate(float(value), float(resid), int(its), bool(ok),
                            disconnected=not G.is_connected())


def q_spectral_radius(G: Graph, tol: float = DEFAULT_TOL,
                      max_iter: int = DEFAULT_MAX_ITER) -> SpectralEstimate:
    # Q is positive semidefinite, so no shift is needed.
    return _estimate(G, G.signless_laplacian(), 0.0, tol, max_iter)


def a_spectral_radius(G: Graph, tol: float = DEFAULT_TOL,
                      max_iter: int = DEFAULT_MAX_ITER) -> SpectralEstimate:
    # Bipartite graphs have -rho in the spectrum; iterating on A + I makes
    # rho + 1 strictly dominant.
    return _estimate(G, G.adjacency_matrix(), 1.0, tol, max_iter)


def das_bound(G: Graph) -> Fraction:
    """Upper bound 2e/(n-1) + n - 2 on q(G), exact."""
    if G.n < 2:
        raise GraphError("das_bound needs n >= 2")
    return Fraction(2 * G.edge_count, G.n - 1) + G.n - 2
