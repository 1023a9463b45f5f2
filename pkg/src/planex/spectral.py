"""Spectral radius by power iteration and Perron-vector diagnostics.

Iteration runs on A + I rather than A: the shift keeps every eigenvalue
of a bipartite graph away from -rho, so the iterates converge instead of
oscillating between the two ends of the spectrum. The Rayleigh quotient
of A is reported, never the shifted value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .errors import InvalidParameter, SpectralConvergenceError
from .graph import Graph, LinearForest, complete, join

DEFAULT_TOL = 1e-10
MAX_ITER = 1_000_000
COMPARE_EPS = 1e-8  # |drho| below this is reported as indistinguishable
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    x: np.ndarray  # max entry 1; zero outside the maximising component(s)
    residual: float  # max |A x - rho x|
    iterations: int
    edgeless: bool = False

    def to_dict(self, with_vector: bool = False) -> dict:
        out = {
            "rho": self.rho,
            "residual": self.residual,
            "iterations": self.iterations,
            "edgeless": self.edgeless,
        }
        if with_vector:
            out["x"] = [float(v) for v in self.x]
        return out


def adjacency_matrix(g: Graph) -> sparse.csr_matrix:
    edges = g.edges()
    if not edges:
        return sparse.csr_matrix((g.n, g.n))
    u, v = np.array(edges).T
    rows = np.concatenate([u, v])
    cols = np.concatenate([v, u])
    return sparse.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(g.n, g.n))


def _power(a: sparse.csr_matrix, tol: float, max_iter: int) -> tuple[float, np.ndarray, float, int]:
    n = a.shape[0]
    x = np.ones(n)
    rho_prev = math.inf
    for it in range(1, max_iter + 1):
        ax = a @ x
        rho = float(x @ ax) / float(x @ x)
        y = ax + x  # (A + I) x
        y /= y.max()
        res_vec = a @ y - rho * y
        residual = float(np.abs(res_vec).max())
        if abs(rho - rho_prev) < tol and residual < tol:
            ay = a @ y
            rho = float(y @ ay) / float(y @ y)
            residual = float(np.abs(ay - rho * y).max())
            return rho, y, residual, it
        rho_prev = rho
        x = y
    raise SpectralConvergenceError(f"no convergence to tol={tol} within {max_iter} iterations")


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SpectralResult:
    """Largest adjacency eigenvalue with a max-normalised Perron vector.

    For a disconnected graph rho is the maximum over components and the
    vector is supported on the component(s) attaining it. An edgeless
    graph gives rho = 0 with ``edgeless`` set.
    """
    if tol <= 0:
        raise InvalidParameter("tolerance must be positive")
    n = g.n
    if g.num_edges == 0:
        return SpectralResult(0.0, np.ones(n), 0.0, 0, edgeless=True)
    comps = [c for c in g.components() if len(c) > 1]
    if len(comps) == 1 and len(comps[0]) == n:
        rho, x, residual, its = _power(adjacency_matrix(g), tol, max_iter)
        return SpectralResult(rho, x, residual, its)
    parts = []
    for comp in comps:
        rho, x, residual, its = _power(adjacency_matrix(g.induced(comp)), tol, max_iter)
        parts.append((rho, comp, x, residual, its))
    best = max(p[0] for p in parts)
    full = np.zeros(n)
    res = 0.0
    total_its = 0
    for rho, comp, x, residual, its in parts:
        total_its += its
        if best - rho < tol:
            full[comp] = x
            res = max(res, residual)
    return SpectralResult(best, full, res, total_its)


def dense_spectral_radius(g: Graph) -> float:
    """Independent route via a symmetric eigensolver (cross-checks only)."""
    if g.n == 0:
        return 0.0
    return float(np.linalg.eigvalsh(adjacency_matrix(g).toarray())[-1])


def compare(a: float, b: float, eps: float = COMPARE_EPS) -> int:
    """Sign of a - b, or 0 when the difference is within ``eps``."""
    d = a - b
    if abs(d) < eps:
        return 0
    return 1 if d > 0 else -1


# -- K_2 + H ----------------------------------------------------------------


def k2_join(h: LinearForest) -> Graph:
    """K_2 + h with the apexes labelled 0 and 1."""
    return join(complete(2), h.realize())


@dataclass(frozen=True)
class PerronProfile:
    rho: float
    apex: tuple[float, float]
    r_min: float
    r_max: float
    bound_lo: float
    bound_hi: float
    residual: float
    # isolated vertices of h sit exactly on the lower bound (rho x = 2), so
    # comparisons allow the accuracy of the computed entries
    slack: float = BOUND_SLACK

    @property
    def within_bounds(self) -> bool:
        return self.bound_lo - self.slack <= self.r_min and self.r_max <= self.bound_hi + self.slack

    @property
    def apex_is_max(self) -> bool:
        return all(abs(a - 1.0) <= 1e-9 for a in self.apex)

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "apex": list(self.apex),
            "r_min": self.r_min,
            "r_max": self.r_max,
            "bound_lo": self.bound_lo,
            "bound_hi": self.bound_hi,
            "within_bounds": self.within_bounds,
            "apex_is_max": self.apex_is_max,
            "residual": self.residual,
            "slack": self.slack,
        }


def perron_profile(h: LinearForest, n: int | None = None, tol: float = DEFAULT_TOL) -> PerronProfile:
    """Perron entries of K_2 + h against the window [2/rho, 2/rho + 6/rho^2]."""
    if n is not None and n != h.total + 2:
        raise InvalidParameter(f"n={n} does not match forest total {h.total} + 2")
    res = spectral_radius(k2_join(h), tol)
    rho = res.rho
    xr = res.x[2:]
    return PerronProfile(
        rho=rho,
        apex=(float(res.x[0]), float(res.x[1])),
        r_min=float(xr.min()),
        r_max=float(xr.max()),
        bound_lo=2 / rho,
        bound_hi=2 / rho + 6 / rho**2,
        residual=res.residual,
    )


def transform(h: LinearForest, s1: int, s2: int) -> LinearForest:
    """Move one vertex from a path of order s2 to a path of order s1 >= s2.

    The two chosen paths become P_{s1+1} and P_{s2-1} (the latter vanishes
    when s2 = 1); all other paths are kept.
    """
    if not s1 >= s2 >= 1:
        raise InvalidParameter(f"need s1 >= s2 >= 1, got ({s1}, {s2})")
    rest = list(h.parts)
    try:
        rest.remove(s1)
        rest.remove(s2)
    except ValueError:
        raise InvalidParameter(f"{h} has no parts {s1} and {s2}") from None
    if s2 >= 2:
        return LinearForest(tuple(rest) + (s1 + 1, s2 - 1))
    return LinearForest(tuple(rest) + (s1 + s2,))


def gain_threshold(s2: int) -> int:
    """Order from which a transformation with this s2 is guaranteed to help."""
    return 9 * 2 ** (s2 + 1) + 3


@dataclass(frozen=True)
class Gain:
    before: float
    after: float
    delta: float
    dense_delta: float  # same difference from the dense eigensolver
    verdict: int  # compare(after, before)


def transformation_gain(h: LinearForest, s1: int, s2: int, n: int | None = None,
                        tol: float = DEFAULT_TOL) -> Gain:
    if n is not None and n != h.total + 2:
        raise InvalidParameter(f"n={n} does not match forest total {h.total} + 2")
    h2 = transform(h, s1, s2)
    g1, g2 = k2_join(h), k2_join(h2)
    before = spectral_radius(g1, tol).rho
    after = spectral_radius(g2, tol).rho
    dense = dense_spectral_radius(g2) - dense_spectral_radius(g1)
    return Gain(before, after, after - before, dense, compare(after, before))
