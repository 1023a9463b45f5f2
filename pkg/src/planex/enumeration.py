"""Isomorph-free generation of small planar and outerplanar graphs.

Graphs are grown one vertex at a time by canonical augmentation: a child
is kept only when its new vertex is equivalent, under the child's
automorphism group, to the child's canonical deletion vertex. The
deletion vertex is the canonically first vertex among those minimising
(degree, sum of neighbour degrees). Neighbour sets of the new vertex are
tried once per orbit of the parent's automorphism group. Together these
give exactly one graph per isomorphism class.

Scope and pruning predicates must be closed under vertex deletion. The
one exception is a minimum-degree bound d, which is handled through the
deletion rule: deleting a minimum-degree vertex lowers the minimum degree
by at most one, so every ancestor on k vertices has minimum degree at
least d - (n - k).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Iterator

from .canon import canonical_form, canonical_labeling
from .errors import CapacityError, InvalidParameter
from .graph import Graph
from .graph6 import decode, encode
from .planarity import is_outerplanar, is_planar


class Scope(str, Enum):
    PLANAR = "PLANAR"
    OUTERPLANAR = "OUTERPLANAR"
    PLANAR_MINDEG3 = "PLANAR_MINDEG3"
    K2_JOIN_LINEAR_FOREST = "K2_JOIN_LINEAR_FOREST"


MAX_N = {Scope.PLANAR: 10, Scope.PLANAR_MINDEG3: 10, Scope.OUTERPLANAR: 11}

Prune = Callable[[Graph], bool]  # True means discard (and all descendants)


@dataclass
class _Config:
    n: int
    outer: bool
    min_degree: int
    prune: Prune | None

    def edge_cap(self, k: int) -> int:
        if self.outer:
            return 2 * k - 3 if k >= 2 else 0
        return 3 * k - 6 if k >= 3 else k * (k - 1) // 2

    def degree_floor(self, k: int) -> int:
        return max(0, self.min_degree - (self.n - k))

    def admits(self, g: Graph) -> bool:
        if g.num_edges > self.edge_cap(g.n):
            return False
        if g.min_degree() < self.degree_floor(g.n):
            return False
        ok = is_outerplanar(g) if self.outer else is_planar(g)
        if not ok:
            return False
        return self.prune is None or not self.prune(g)


def _subset_orbit(s: int, gens: tuple[tuple[int, ...], ...]) -> list[int]:
    orbit = {s}
    frontier = [s]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            img = 0
            m = cur
            while m:
                low = m & -m
                img |= 1 << g[low.bit_length() - 1]
                m ^= low
            if img not in orbit:
                orbit.add(img)
                frontier.append(img)
    return list(orbit)


def _accept(g: Graph) -> bool:
    """Is the last vertex the canonical deletion vertex (up to automorphism)?"""
    n = g.n
    v = n - 1
    deg = g.degrees()
    adj = g.adj
    inv = []
    for u in range(n):
        s = 0
        m = adj[u]
        while m:
            low = m & -m
            s += deg[low.bit_length() - 1]
            m ^= low
        inv.append((deg[u], s))
    best = min(inv)
    if inv[v] != best:
        return False
    cands = [u for u in range(n) if inv[u] == best]
    if len(cands) == 1:
        return True
    lab = canonical_labeling(g)
    pos = lab.position
    c = min(cands, key=lambda u: pos[u])
    if c == v:
        return True
    orb = lab.orbits()
    return orb[c] == orb[v]


def _children(p: Graph, cfg: _Config) -> Iterator[Graph]:
    k = p.n
    deg = p.degrees()
    gens = canonical_labeling(p).generators if k > 1 else ()
    floor = cfg.degree_floor(k + 1)
    cap = cfg.edge_cap(k + 1) - p.num_edges
    seen: set[int] = set()
    for d in range(max(floor, 0), min(k, cap) + 1):
        # the new vertex must have minimum degree in the child
        if any(x < d - 1 for x in deg):
            continue
        must = 0
        for u, x in enumerate(deg):
            if x < d:
                must |= 1 << u
        if must.bit_count() > d:
            continue
        free = [u for u in range(k) if not must >> u & 1]
        for extra in combinations(free, d - must.bit_count()):
            s = must
            for u in extra:
                s |= 1 << u
            if s in seen:
                continue
            if gens:
                seen.update(_subset_orbit(s, gens))
            child = p.add_vertex(u for u in range(k) if s >> u & 1)
            if child.min_degree() < floor:
                continue
            if not _accept(child):
                continue
            if cfg.admits(child):
                yield child


def _walk(g: Graph, cfg: _Config, counter: list[int]) -> Iterator[Graph]:
    counter[0] += 1
    if g.n == cfg.n:
        if g.min_degree() >= cfg.min_degree or cfg.n == 0:
            yield g
        return
    for child in _children(g, cfg):
        yield from _walk(child, cfg, counter)


def _config(scope: Scope | str, n: int, prune: Prune | None, limit_check: bool) -> _Config:
    scope = Scope(scope)
    if scope is Scope.K2_JOIN_LINEAR_FOREST:
        raise InvalidParameter("K2_JOIN_LINEAR_FOREST is searched through linear forests, not enumerated")
    if n < 0:
        raise InvalidParameter(f"n must be non-negative, got {n}")
    if limit_check and n > MAX_N[scope]:
        raise CapacityError(f"{scope.value} enumeration is limited to n <= {MAX_N[scope]}")
    return _Config(
        n=n,
        outer=scope is Scope.OUTERPLANAR,
        min_degree=3 if scope is Scope.PLANAR_MINDEG3 else 0,
        prune=prune,
    )


class Enumeration:
    """Iterable over one representative per isomorphism class.

    ``visited`` counts every accepted node of the augmentation tree,
    intermediate orders included.
    """

    def __init__(self, scope: Scope | str, n: int, prune: Prune | None = None,
                 limit_check: bool = True):
        self.cfg = _config(scope, n, prune, limit_check)
        self._counter = [0]

    @property
    def visited(self) -> int:
        return self._counter[0]

    def __iter__(self) -> Iterator[Graph]:
        cfg = self.cfg
        if cfg.n == 0:
            self._counter[0] += 1
            yield Graph(0)
            return
        root = Graph(1)
        if cfg.admits(root):
            yield from _walk(root, cfg, self._counter)


def enumerate_graphs(scope: Scope | str, n: int, prune: Prune | None = None) -> Iterator[Graph]:
    return iter(Enumeration(scope, n, prune))


# -- parallel -------------------------------------------------------------


def _worker(args: tuple) -> tuple[list[str], int]:
    scope, n, prune, g6 = args
    cfg = _config(scope, n, prune, limit_check=False)
    counter = [0]
    out = [encode(g) for g in _walk(decode(g6), cfg, counter)]
    return out, counter[0]


def enumerate_parallel(scope: Scope | str, n: int, prune: Prune | None = None,
                       jobs: int = 1, split: int | None = None) -> tuple[list[Graph], int]:
    """All representatives, sorted by canonical form, and the visit count.

    Subtrees below order ``split`` are handed to ``jobs`` processes; the
    result does not depend on ``jobs``. ``prune`` must be picklable.
    """
    cfg = _config(scope, n, prune, limit_check=True)
    if jobs <= 1 or n < 4:
        en = Enumeration(scope, n, prune)
        graphs = list(en)
        visited = en.visited
    else:
        split = split if split is not None else max(1, n - 3)
        frontier = [Graph(1)] if cfg.admits(Graph(1)) else []
        visited = 0
        for _ in range(1, split):
            visited += len(frontier)
            frontier = [c for p in frontier for c in _children(p, cfg)]
        tasks = [(Scope(scope), n, prune, encode(p)) for p in frontier]
        graphs = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for out, count in pool.map(_worker, tasks, chunksize=max(1, len(tasks) // (4 * jobs))):
                graphs.extend(decode(s) for s in out)
                visited += count
    keyed = sorted((canonical_form(g), g) for g in graphs)
    return [g for _, g in keyed], visited
