"""Exact extremal searches at small order.

Edge maxima and spectral maxima are taken over one graph per
isomorphism class from :mod:`planex.enumeration`. Pattern-freeness is
closed under subgraphs, so a graph containing the pattern can be
discarded together with everything grown from it; ``prune=False``
turns that off and filters only complete graphs, which is slower but
gives an independent route to the same answer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator

from .canon import canonical_form
from .constructions import h_linear_forest, spex_cl_forest
from .enumeration import Scope, enumerate_parallel
from .errors import InvalidParameter
from .graph import LinearForest
from .patterns import Mode, Pattern, PatternTag, contains_pattern, joined_freeness
from .spectral import COMPARE_EPS, DEFAULT_TOL, k2_join, spectral_radius

DEFAULT_CAP = 1_000_000


class Objective:
    EDGES = "EDGES"
    RHO = "RHO"


@dataclass
class SearchReport:
    n: int
    pattern: str
    scope: str
    objective: str
    optimum: float | int | None
    witnesses: list[str]
    graphs_visited: int
    elapsed: float = 0.0
    partial: bool = False
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pattern": self.pattern,
            "scope": self.scope,
            "objective": self.objective,
            "optimum": self.optimum,
            "witnesses": list(self.witnesses),
            "graphs_visited": self.graphs_visited,
            "elapsed": self.elapsed,
            "partial": self.partial,
            "details": self.details,
        }


class PatternPrune:
    """Picklable predicate: discard graphs containing ``pattern``."""

    def __init__(self, pattern: Pattern):
        self.pattern = pattern

    def __call__(self, g) -> bool:
        return contains_pattern(g, self.pattern)


def _free_graphs(scope: Scope, n: int, pattern: Pattern, prune: bool, jobs: int):
    pred = PatternPrune(pattern)
    graphs, visited = enumerate_parallel(scope, n, pred if prune else None, jobs=jobs)
    if not prune:
        graphs = [g for g in graphs if not pred(g)]
    return graphs, visited


def turan_number(scope: Scope | str, n: int, pattern: Pattern, prune: bool = True,
                 jobs: int = 1) -> SearchReport:
    """Maximum edge count of a pattern-free graph in ``scope`` on n vertices."""
    scope = Scope(scope)
    if scope is Scope.K2_JOIN_LINEAR_FOREST:
        raise InvalidParameter("edge maxima are not searched over the linear-forest family")
    start = time.perf_counter()
    graphs, visited = _free_graphs(scope, n, pattern, prune, jobs)
    best = max((g.num_edges for g in graphs), default=None)
    witnesses = sorted(canonical_form(g) for g in graphs if g.num_edges == best)
    return SearchReport(n, str(pattern), scope.value, Objective.EDGES, best, witnesses,
                        visited, time.perf_counter() - start,
                        details={"free_graphs": len(graphs)})


def spex_argmax(scope: Scope | str, n: int, pattern: Pattern, tol: float = COMPARE_EPS,
                prune: bool = True, jobs: int = 1) -> SearchReport:
    """Largest spectral radius among pattern-free graphs; ties within ``tol`` are all kept."""
    scope = Scope(scope)
    if scope is Scope.K2_JOIN_LINEAR_FOREST:
        if pattern.tag is PatternTag.CL:
            return linear_forest_spex(n, pattern.ell, Mode.SINGLE, tol=tol)
        if pattern.tag is PatternTag.T_CL and pattern.t == 2:
            return linear_forest_spex(n, pattern.ell, Mode.DOUBLE, tol=tol)
        raise InvalidParameter(f"linear-forest search supports C<l> and 2C<l>, not {pattern}")
    start = time.perf_counter()
    graphs, visited = _free_graphs(scope, n, pattern, prune, jobs)
    results = [(spectral_radius(g, DEFAULT_TOL), g) for g in graphs]
    if not results:
        return SearchReport(n, str(pattern), scope.value, Objective.RHO, None, [], visited,
                            time.perf_counter() - start)
    best = max(r.rho for r, _ in results)
    top = sorted((canonical_form(g), r) for r, g in results if best - r.rho <= tol)
    return SearchReport(
        n, str(pattern), scope.value, Objective.RHO, best, [f for f, _ in top], visited,
        time.perf_counter() - start,
        details={
            "rho": [r.rho for _, r in top],
            "residual": [r.residual for _, r in top],
            "free_graphs": len(graphs),
        },
    )


# -- K_2 + linear forest -----------------------------------------------------------


def _partitions(total: int, first_max: int, rest_max: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` (parts descending) with n1 <= first_max and n2.. <= rest_max."""

    def rec(left: int, cap: int) -> Iterator[tuple[int, ...]]:
        if left == 0:
            yield ()
            return
        for p in range(min(left, cap), 0, -1):
            for tail in rec(left - p, p):
                yield (p,) + tail

    for n1 in range(min(total, first_max), 0, -1):
        for tail in rec(total - n1, min(n1, rest_max)):
            yield (n1,) + tail


def feasible_forests(n: int, ell: int, mode: Mode | str, cap: int = DEFAULT_CAP) -> tuple[list[LinearForest], bool]:
    """Forests H on n - 2 vertices (at least two paths) with K_2 + H pattern-free.

    Returns the forests and whether the cap cut the list short.
    """
    mode = Mode(mode)
    total = n - 2
    if mode is Mode.DOUBLE:
        first, rest = 2 * ell - 3, ell - 2
    else:
        first, rest = ell - 4, ell - 4
    out = []
    for parts in _partitions(total, max(first, 0), max(rest, 0)):
        if len(parts) < 2:
            continue
        h = LinearForest(parts)
        if joined_freeness(h, ell, mode):
            out.append(h)
            if len(out) >= cap:
                return out, True
    return out, False


def predicted_forest(n: int, ell: int, mode: Mode | str) -> LinearForest | None:
    mode = Mode(mode)
    try:
        if mode is Mode.DOUBLE:
            return h_linear_forest(n, 2 * ell - 3, ell - 2)
        if ell >= 5:
            return spex_cl_forest(n, ell)
    except InvalidParameter:
        return None
    return None


def linear_forest_spex(n: int, ell: int, mode: Mode | str, tol: float = COMPARE_EPS,
                       cap: int = DEFAULT_CAP) -> SearchReport:
    """Spectral maximum of K_2 + H over forests H keeping K_2 + H pattern-free."""
    mode = Mode(mode)
    if mode is Mode.SINGLE and ell < 5:
        raise InvalidParameter("SINGLE mode needs ell >= 5")
    if ell < 3:
        raise InvalidParameter(f"cycle length must be >= 3, got {ell}")
    if not 4 <= n <= 300:
        raise InvalidParameter(f"n must lie in 4..300, got {n}")
    start = time.perf_counter()
    forests, partial = feasible_forests(n, ell, mode, cap)
    scored = []
    for h in forests:
        res = spectral_radius(k2_join(h), DEFAULT_TOL)
        scored.append((res.rho, res.residual, h))
    scored.sort(key=lambda t: (-t[0], t[2].parts))
    pattern = Pattern.cycle(ell) if mode is Mode.SINGLE else Pattern.disjoint_cycles(2, ell)
    if not scored:
        return SearchReport(n, str(pattern), Scope.K2_JOIN_LINEAR_FOREST.value, Objective.RHO,
                            None, [], 0, time.perf_counter() - start, partial)
    best = scored[0][0]
    top = [t for t in scored if best - t[0] <= tol]
    runner = next((t for t in scored if best - t[0] > tol), None)
    predicted = predicted_forest(n, ell, mode)
    winners = [list(t[2].parts) for t in top]
    details = {
        "mode": mode.value,
        "ell": ell,
        "candidates": len(scored),
        "winners": winners,
        "rho": [t[0] for t in top],
        "residual": [t[1] for t in top],
        "predicted": list(predicted.parts) if predicted else None,
        "matches_prediction": predicted is not None and list(predicted.parts) in winners,
        "runner_up": list(runner[2].parts) if runner else None,
        "gap_to_runner_up": best - runner[0] if runner else None,
    }
    witnesses = [canonical_form(k2_join(t[2])) for t in top]
    return SearchReport(n, str(pattern), Scope.K2_JOIN_LINEAR_FOREST.value, Objective.RHO,
                        best, witnesses, len(scored), time.perf_counter() - start, partial,
                        details)


def ex_2c3_reference(n: int) -> int:
    """Published value ceil(5n/2) - 5 for the planar Turán number of 2C_3."""
    return -(-5 * n // 2) - 5
