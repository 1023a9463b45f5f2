"""Planarity and outerplanarity testing, embeddings, and face statistics.

The planarity decision and rotation system come from networkx's
left-right planarity test; faces are traced here from the rotation system
so every face walk is a cycle of darts (directed edges). Each component
is embedded on its own and keeps its own outer walk, so for a
disconnected graph the merged outer face of the plane drawing is the
union of the components' outer walks.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

import networkx as nx

from .errors import CapacityError
from .graph import MAX_ORDER, Graph, iter_bits, join, complete


@dataclass(frozen=True)
class Embedding:
    """Rotation system plus face walks.

    ``rotation[v]`` lists the neighbours of ``v`` in clockwise order.
    Each face is the vertex sequence of a dart cycle: the walk enters
    ``v`` from ``u`` and leaves towards the clockwise successor of ``u``
    around ``v``.
    """

    n: int
    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[int, ...], ...]
    outer_face: int = 0

    def with_outer_face(self, index: int) -> Embedding:
        if not 0 <= index < max(len(self.faces), 1):
            raise IndexError(f"face index {index} out of range")
        return Embedding(self.n, self.rotation, self.faces, index)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def dart_faces(self) -> dict[tuple[int, int], int]:
        out = {}
        for idx, face in enumerate(self.faces):
            k = len(face)
            for i in range(k):
                out[(face[i], face[(i + 1) % k])] = idx
        return out

    def dump(self) -> str:
        """One line per vertex, ``v: cyclic neighbour list``."""
        return "\n".join(f"{v}: {' '.join(map(str, rot))}" for v, rot in enumerate(self.rotation))

    def to_json(self) -> str:
        return json.dumps(
            {
                "rotation": {str(v): list(r) for v, r in enumerate(self.rotation)},
                "faces": [list(f) for f in self.faces],
                "outer_face": self.outer_face,
            }
        )


@dataclass(frozen=True)
class FaceCensus:
    face_sizes: dict[int, int] = field(default_factory=dict)  # size -> f_size
    e3: int = 0  # edges on at least one 3-face
    e33: int = 0  # edges on two 3-faces

    def f(self, size: int) -> int:
        return self.face_sizes.get(size, 0)

    @property
    def num_faces(self) -> int:
        return sum(self.face_sizes.values())


def trace_faces(rotation: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    succ: dict[tuple[int, int], int] = {}
    for v, rot in enumerate(rotation):
        k = len(rot)
        for i, u in enumerate(rot):
            succ[(v, u)] = rot[(i + 1) % k]
    seen: set[tuple[int, int]] = set()
    faces = []
    for v, rot in enumerate(rotation):
        for w in rot:
            if (v, w) in seen:
                continue
            face = []
            a, b = v, w
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                a, b = b, succ[(b, a)]
            faces.append(tuple(face))
    return tuple(faces)


def _to_nx(g: Graph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return G


def _cyclomatic_small(g: Graph) -> bool:
    """True when g is certainly planar from counting alone."""
    if g.n <= 4:
        return True
    # a Kuratowski subdivision needs cycle rank >= 4
    comps = len(g.components())
    return g.num_edges - g.n + comps < 4


def is_planar(g: Graph) -> bool:
    n, m = g.n, g.num_edges
    if n >= 3 and m > 3 * n - 6:
        return False
    if _cyclomatic_small(g):
        return True
    return nx.check_planarity(_to_nx(g))[0]


def planar_embedding(g: Graph) -> Embedding | None:
    """A combinatorial embedding of ``g``, or ``None`` if ``g`` is not planar."""
    n, m = g.n, g.num_edges
    if n >= 3 and m > 3 * n - 6:
        return None
    ok, emb = nx.check_planarity(_to_nx(g))
    if not ok:
        return None
    rotation = tuple(tuple(emb.neighbors_cw_order(v)) for v in range(n))
    faces = trace_faces(rotation)
    outer = max(range(len(faces)), key=lambda i: (len(faces[i]), -i)) if faces else 0
    return Embedding(n, rotation, faces, outer)


def is_outerplanar(g: Graph) -> bool:
    """All vertices can lie on one face: tested as planarity of K_1 + g."""
    n, m = g.n, g.num_edges
    if n >= 2 and m > 2 * n - 3:
        return False
    if n + 1 > MAX_ORDER:
        raise CapacityError("outerplanarity test needs one spare vertex of capacity")
    return is_planar(join(complete(1), g))


def face_census(emb: Embedding) -> FaceCensus:
    sizes = Counter(len(f) for f in emb.faces)
    tri = {i for i, f in enumerate(emb.faces) if len(f) == 3}
    dart = emb.dart_faces()
    e3 = e33 = 0
    for (u, v), fa in dart.items():
        if u > v:
            continue
        fb = dart[(v, u)]
        k = (fa in tri) + (fb in tri and fb != fa)
        if k >= 1:
            e3 += 1
        if k == 2:
            e33 += 1
    return FaceCensus(dict(sorted(sizes.items())), e3, e33)


def embedding_problems(g: Graph, emb: Embedding) -> list[str]:
    """Consistency checks on an embedding; empty list means valid.

    Checks that rotations permute neighbourhoods, every dart lies on
    exactly one face walk, and Euler's formula n - e + f = 2 holds on
    every component with at least one edge.
    """
    problems = []
    for v in range(g.n):
        if sorted(emb.rotation[v]) != g.neighbors(v):
            problems.append(f"rotation at {v} is not a permutation of its neighbours")
    darts = Counter()
    for face in emb.faces:
        k = len(face)
        for i in range(k):
            darts[(face[i], face[(i + 1) % k])] += 1
    for u, v in g.edges():
        for d in ((u, v), (v, u)):
            if darts[d] != 1:
                problems.append(f"dart {d} appears {darts[d]} times")
    face_of = emb.dart_faces()
    for comp in g.components():
        if len(comp) < 2:
            continue
        cset = set(comp)
        e = sum(1 for u, v in g.edges() if u in cset)
        f = len({idx for (a, _), idx in face_of.items() if a in cset})
        if len(comp) - e + f != 2:
            problems.append(f"Euler fails on component {comp[:5]}...: n={len(comp)} e={e} f={f}")
    return problems


def kuratowski_subdivision_search(g: Graph) -> bool:
    """Brute-force search for a K_5 or K_{3,3} subdivision.

    Exponential; meant as an independent check for n <= 7.
    Returns True iff a subdivision exists (so g is non-planar).
    """
    from itertools import combinations

    n = g.n
    adj = g.adj
    if n < 5:
        return False

    def routable(pairs: list[tuple[int, int]], free: int) -> bool:
        if not pairs:
            return True
        (a, b), rest = pairs[0], pairs[1:]
        if adj[a] >> b & 1 and routable(rest, free):
            return True
        # internally disjoint path a .. b through free vertices
        stack = [(a, 0)]
        while stack:
            v, used = stack.pop()
            for w in iter_bits(adj[v] & free & ~used):
                nused = used | (1 << w)
                if adj[w] >> b & 1 and routable(rest, free & ~nused):
                    return True
                stack.append((w, nused))
        return False

    full = g.vertex_mask
    for five in combinations(range(n), 5):
        if any(g.degree(v) < 4 for v in five):
            continue
        pairs = list(combinations(five, 2))
        if routable(pairs, full & ~sum(1 << v for v in five)):
            return True
    for six in combinations(range(n), 6):
        if any(g.degree(v) < 3 for v in six):
            continue
        first = six[0]
        for side in combinations(six[1:], 2):
            left = (first,) + side
            right = tuple(v for v in six if v not in left)
            pairs = [(a, b) for a in left for b in right]
            if routable(pairs, full & ~sum(1 << v for v in six)):
                return True
    return False
