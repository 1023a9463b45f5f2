"""Canonical labelling and automorphism generators.

The search is the classic individualise-and-refine scheme: refine the
vertex partition to an equitable one, branch on the first smallest
non-singleton cell, and take the lexicographically least relabelled
adjacency over all leaves. Two prunings keep the tree small:

* twin pruning: vertices with identical open or closed neighbourhoods in
  the same cell are interchangeable, so one representative is explored and
  the transposition is recorded as an automorphism;
* first-path pruning: a leaf equivalent to the first leaf yields an
  automorphism, which lets the search jump back to the first-path node it
  branched from and skip siblings already in a known orbit.

The automorphisms collected this way generate the full automorphism group
(of the coloured graph), so :func:`automorphism_orbits` is exact.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .graph import Graph, iter_bits
from .graph6 import encode


@dataclass(frozen=True)
class CanonicalLabeling:
    order: tuple[int, ...]  # order[i] = vertex placed at canonical position i
    certificate: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def position(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos

    def orbits(self) -> list[int]:
        return _orbits(len(self.order), self.generators)


def _mask(vertices: Sequence[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _refine(adj: Sequence[int], cells: list[list[int]], queue: deque[int], n: int) -> list[list[int]]:
    while queue and len(cells) < n:
        w = queue.popleft()
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            c0 = (adj[cell[0]] & w).bit_count()
            uniform = True
            for v in cell:
                if (adj[v] & w).bit_count() != c0:
                    uniform = False
                    break
            if uniform:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & w).bit_count(), []).append(v)
            for key in sorted(groups):
                frag = groups[key]
                out.append(frag)
                queue.append(_mask(frag))
        cells = out
    return cells


def _orbits(n: int, gens: Sequence[Sequence[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


class _Search:
    def __init__(self, adj: Sequence[int], n: int, colors: Sequence[int] | None):
        self.adj = adj
        self.n = n
        self.gens: list[tuple[int, ...]] = []
        self.first_order: tuple[int, ...] | None = None
        self.first_cert: tuple[int, ...] | None = None
        self.best_order: tuple[int, ...] | None = None
        self.best_cert: tuple[int, ...] | None = None
        self.first_path: list[int] = []
        self.colors = colors
        # twin key per vertex: identical open (or closed) neighbourhood and colour
        self.twin_key: list[tuple] = []
        groups: dict[tuple, list[int]] = {}
        for v in range(n):
            col = colors[v] if colors is not None else 0
            row = adj[v]
            key_open = (0, row, col)
            key_closed = (1, row | (1 << v), col)
            groups.setdefault(key_open, []).append(v)
            groups.setdefault(key_closed, []).append(v)
        key_of = [(2, v) for v in range(n)]
        for key, members in groups.items():
            if len(members) > 1:
                for a, b in zip(members, members[1:]):
                    perm = list(range(n))
                    perm[a], perm[b] = b, a
                    self.gens.append(tuple(perm))
                for v in members:
                    key_of[v] = key
        self.twin_key = key_of

    def _leaf(self, cells: list[list[int]], path: list[int]) -> int | None:
        order = tuple(c[0] for c in cells)
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        adj = self.adj
        cert = []
        for v in order:
            row = 0
            for w in iter_bits(adj[v]):
                row |= 1 << pos[w]
            cert.append(row)
        cert_t = tuple(cert)
        if self.first_cert is None:
            self.first_cert = self.best_cert = cert_t
            self.first_order = self.best_order = order
            return None
        if cert_t == self.first_cert:
            gamma = [0] * self.n
            for a, b in zip(self.first_order, order):
                gamma[a] = b
            self.gens.append(tuple(gamma))
            depth = 0
            for a, b in zip(path, self.first_path):
                if a != b:
                    break
                depth += 1
            return depth
        if cert_t < self.best_cert:
            self.best_cert = cert_t
            self.best_order = order
        return None

    def _individualize(self, cells: list[list[int]], idx: int, v: int) -> list[list[int]]:
        cell = cells[idx]
        rest = [w for w in cell if w != v]
        new = cells[:idx] + [[v], rest] + cells[idx + 1:]
        return _refine(self.adj, new, deque([1 << v]), self.n)

    def visit(self, cells: list[list[int]], path: list[int], on_first: bool) -> int | None:
        if len(cells) == self.n:
            return self._leaf(cells, path)
        # first smallest non-singleton cell
        idx = -1
        size = self.n + 1
        for i, c in enumerate(cells):
            if 1 < len(c) < size:
                idx, size = i, len(c)
                if size == 2:
                    break
        cell = cells[idx]
        depth = len(path)
        explored: list[int] = []
        used_keys: set = set()
        for v in cell:
            key = self.twin_key[v]
            if key in used_keys:
                continue
            if on_first and explored:
                fixing = [g for g in self.gens if all(g[p] == p for p in path)]
                orb = _orbits(self.n, fixing)
                if any(orb[v] == orb[u] for u in explored):
                    continue
            used_keys.add(key)
            child = self._individualize(cells, idx, v)
            first_child = on_first and not explored
            explored.append(v)
            if first_child:
                self.first_path.append(v)
            r = self.visit(child, path + [v], first_child)
            if r is not None and r < depth:
                return r
        return None


def _initial_cells(n: int, colors: Sequence[int] | None) -> list[list[int]]:
    if colors is None:
        return [list(range(n))] if n else []
    groups: dict = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    return [groups[k] for k in sorted(groups)]


def canonical_labeling(g: Graph, colors: Sequence[int] | None = None) -> CanonicalLabeling:
    """Canonical order, certificate, and automorphism-group generators.

    ``colors`` optionally assigns a sortable colour to each vertex;
    isomorphisms must then preserve colours.
    """
    n = g.n
    if n == 0:
        return CanonicalLabeling((), (), ())
    cells = _initial_cells(n, colors)
    cells = _refine(g.adj, cells, deque(_mask(c) for c in cells), n)
    search = _Search(g.adj, n, colors)
    search.visit(cells, [], True)
    return CanonicalLabeling(search.best_order, search.best_cert, tuple(search.gens))


def canonical_graph(g: Graph) -> Graph:
    lab = canonical_labeling(g)
    return g.relabel(lab.position)


def canonical_form(g: Graph) -> str:
    """graph6 text of the canonical relabelling; equal iff isomorphic."""
    return encode(canonical_graph(g))


def automorphism_orbits(g: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """Orbit representative (smallest member) for each vertex."""
    return canonical_labeling(g, colors).orbits()


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_labeling(g).certificate == canonical_labeling(h).certificate


def canonical_form_bruteforce(g: Graph) -> str:
    """Reference canonical form by trying every permutation (small n only)."""
    n = g.n
    if n > 9:
        raise ValueError("brute-force canonical form is limited to n <= 9")
    best = None
    edges = g.edges()
    for perm in permutations(range(n)):
        key = sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges)
        if best is None or key < best:
            best = key
    return encode(Graph.from_edges(n, best or []))
