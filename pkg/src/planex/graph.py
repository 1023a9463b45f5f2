"""Simple undirected graphs stored as per-vertex adjacency bitsets.

Vertices are the dense integers ``0..n-1``. Row ``adj[v]`` is a Python int
whose bit ``w`` is set iff ``vw`` is an edge. Graphs are immutable; every
operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, InvalidParameter

MAX_ORDER = 512


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _check_order(n: int) -> None:
    if n < 0:
        raise InvalidParameter(f"vertex count must be non-negative, got {n}")
    if n > MAX_ORDER:
        raise CapacityError(f"{n} vertices exceeds capacity {MAX_ORDER}")


class Graph:
    """An immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, adj: Sequence[int] | None = None, *, check: bool = True):
        _check_order(n)
        rows = tuple(adj) if adj is not None else (0,) * n
        if check:
            if len(rows) != n:
                raise InvalidParameter(f"expected {n} adjacency rows, got {len(rows)}")
            full = (1 << n) - 1
            for v, row in enumerate(rows):
                if row < 0 or row & ~full:
                    raise InvalidParameter(f"row {v} references a vertex outside 0..{n - 1}")
                if row >> v & 1:
                    raise InvalidParameter(f"self-loop at vertex {v}")
                for w in iter_bits(row):
                    if not rows[w] >> v & 1:
                        raise InvalidParameter(f"adjacency not symmetric at {v}-{w}")
        self.n = n
        self.adj = rows
        self._m = -1

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        _check_order(n)
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise InvalidParameter(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameter(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    # -- basic queries -------------------------------------------------

    @property
    def num_edges(self) -> int:
        if self._m < 0:
            self._m = sum(row.bit_count() for row in self.adj) // 2
        return self._m

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        return min((row.bit_count() for row in self.adj), default=0)

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self.adj), default=0)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def edges_within(self, mask: int) -> int:
        """e(S) for the vertex set encoded by ``mask``."""
        return sum((self.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def edges_between(self, s_mask: int, t_mask: int) -> int:
        """e(S,T) for disjoint vertex sets."""
        return sum((self.adj[v] & t_mask).bit_count() for v in iter_bits(s_mask))

    # -- derived graphs ------------------------------------------------

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Subgraph induced by ``vertices``, relabelled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise InvalidParameter("duplicate vertices in induced()")
        rows = []
        for v in vertices:
            row = 0
            for w in iter_bits(self.adj[v]):
                i = index.get(w)
                if i is not None:
                    row |= 1 << i
            rows.append(row)
        return Graph(len(vertices), rows, check=False)

    def delete_vertices(self, vertices: Iterable[int]) -> Graph:
        gone = set(vertices)
        return self.induced([v for v in range(self.n) if v not in gone])

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidParameter(f"bad edge ({u},{v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows, check=False)

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, rows, check=False)

    def add_vertex(self, neighbors: Iterable[int] = ()) -> Graph:
        """Append vertex ``n`` adjacent to ``neighbors``."""
        _check_order(self.n + 1)
        rows = list(self.adj)
        new = self.n
        row = 0
        for w in neighbors:
            if not 0 <= w < self.n:
                raise InvalidParameter(f"neighbor {w} out of range")
            rows[w] |= 1 << new
            row |= 1 << w
        rows.append(row)
        return Graph(self.n + 1, rows, check=False)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v, row in enumerate(self.adj):
            new_row = 0
            for w in iter_bits(row):
                new_row |= 1 << perm[w]
            rows[perm[v]] = new_row
        return Graph(self.n, rows, check=False)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp = 1 << s
            frontier = comp
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(iter_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    # -- dunder --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.num_edges})"


class BasicKind(str, Enum):
    PATH = "PATH"
    CYCLE = "CYCLE"
    EMPTY = "EMPTY"
    COMPLETE = "COMPLETE"


def build_basic(kind: BasicKind | str, n: int) -> Graph:
    """P_n, C_n, the edgeless graph nK_1, or K_n."""
    kind = BasicKind(kind)
    if n < 1:
        raise InvalidParameter(f"{kind.value} needs n >= 1, got {n}")
    if kind is BasicKind.PATH:
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind is BasicKind.CYCLE:
        if n < 3:
            raise InvalidParameter(f"a cycle needs at least 3 vertices, got {n}")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if kind is BasicKind.EMPTY:
        return Graph(n)
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)], check=False)


def path(n: int) -> Graph:
    return build_basic(BasicKind.PATH, n)


def cycle(n: int) -> Graph:
    return build_basic(BasicKind.CYCLE, n)


def empty(n: int) -> Graph:
    return Graph(n)


def complete(n: int) -> Graph:
    return build_basic(BasicKind.COMPLETE, n)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Vertex-disjoint union; the i-th graph's vertices follow those of earlier graphs."""
    total = sum(g.n for g in graphs)
    _check_order(total)
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph(total, rows, check=False)


def join(g1: Graph, g2: Graph) -> Graph:
    """g1 + g2: disjoint union plus every edge between the parts (g1 first)."""
    n1, n2 = g1.n, g2.n
    _check_order(n1 + n2)
    left = (1 << n1) - 1
    right = ((1 << n2) - 1) << n1
    rows = [row | right for row in g1.adj]
    rows.extend((row << n1) | left for row in g2.adj)
    return Graph(n1 + n2, rows, check=False)


def degree_peel(g: Graph, d: int) -> Graph:
    """Largest induced subgraph with minimum degree greater than ``d``.

    Vertices of degree at most ``d`` are removed until none remain; the
    survivors keep their relative order.
    """
    alive = g.vertex_mask
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            if (g.adj[v] & alive).bit_count() <= d:
                alive &= ~(1 << v)
                changed = True
    return g.induced(list(iter_bits(alive)))


def peel_mask(adj: Sequence[int], mask: int, d: int) -> int:
    """Bitset form of :func:`degree_peel` restricted to ``mask``."""
    changed = True
    while changed:
        changed = False
        for v in iter_bits(mask):
            if (adj[v] & mask).bit_count() <= d:
                mask &= ~(1 << v)
                changed = True
    return mask


@dataclass(frozen=True)
class LinearForest:
    """A disjoint union of paths, recorded by its component orders."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p < 1 for p in parts):
            raise InvalidParameter(f"path orders must be >= 1, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> LinearForest:
        return cls(tuple(parts))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def n_i(self, i: int) -> int:
        """Order of the i-th longest path (1-based); 0 when absent."""
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def __len__(self) -> int:
        return len(self.parts)

    def realize(self) -> Graph:
        """The forest itself, paths laid out consecutively, longest first."""
        return disjoint_union([path(p) for p in self.parts])

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"
