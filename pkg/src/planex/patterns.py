"""Forbidden-substructure detection.

Cycles are reported as vertex tuples in a normal form: the smallest
vertex first, followed by its smaller cycle neighbour. Comparing these
tuples lexicographically gives a fixed order on cycles, used wherever
a reproducible witness is required.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .canon import are_isomorphic
from .errors import InvalidParameter, PlanexError, PreconditionError
from .graph import Graph, LinearForest, complete, cycle, empty, iter_bits, join, peel_mask
from .planarity import is_planar


class PatternTag(str, Enum):
    CL = "CL"  # one cycle of length ell
    T_CL = "T_CL"  # t vertex-disjoint cycles of length ell
    T_C = "T_C"  # t vertex-disjoint cycles of any lengths
    K1_PK = "K1_PK"  # K_1 joined to a path on k vertices


@dataclass(frozen=True)
class Pattern:
    tag: PatternTag
    ell: int = 0
    t: int = 1
    k: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "tag", PatternTag(self.tag))
        if self.tag in (PatternTag.CL, PatternTag.T_CL) and self.ell < 3:
            raise InvalidParameter(f"cycle length must be >= 3, got {self.ell}")
        if self.t < 1:
            raise InvalidParameter(f"packing count must be >= 1, got {self.t}")
        if self.tag is PatternTag.K1_PK and self.k < 2:
            raise InvalidParameter(f"path order must be >= 2, got {self.k}")

    @classmethod
    def cycle(cls, ell: int) -> Pattern:
        return cls(PatternTag.CL, ell=ell)

    @classmethod
    def disjoint_cycles(cls, t: int, ell: int | None = None) -> Pattern:
        if ell is None:
            return cls(PatternTag.T_C, t=t)
        if t == 1:
            return cls(PatternTag.CL, ell=ell)
        return cls(PatternTag.T_CL, ell=ell, t=t)

    @classmethod
    def fan(cls, k: int) -> Pattern:
        return cls(PatternTag.K1_PK, k=k)

    @classmethod
    def parse(cls, text: str) -> Pattern:
        """Parse ``C5``, ``2C4``, ``2C`` or ``K1P4``."""
        s = text.strip()
        m = re.fullmatch(r"(\d*)C(\d*)", s)
        if m:
            t = int(m.group(1)) if m.group(1) else 1
            if m.group(2):
                return cls.disjoint_cycles(t, int(m.group(2)))
            if not m.group(1):
                raise InvalidParameter("bare 'C' needs a length or a count, e.g. C5 or 2C")
            return cls(PatternTag.T_C, t=t)
        m = re.fullmatch(r"K1P(\d+)", s)
        if m:
            return cls.fan(int(m.group(1)))
        raise InvalidParameter(f"unrecognised pattern {text!r}")

    def __str__(self) -> str:
        if self.tag is PatternTag.CL:
            return f"C{self.ell}"
        if self.tag is PatternTag.T_CL:
            return f"{self.t}C{self.ell}"
        if self.tag is PatternTag.T_C:
            return f"{self.t}C" if self.t > 1 else "1C"
        return f"K1P{self.k}"


# -- cycles --------------------------------------------------------------


def iter_cycles(adj: Sequence[int], mask: int, length: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every cycle inside ``mask`` once, in lexicographic order of normal forms."""
    for s in iter_bits(mask):
        allowed = mask & ~((2 << s) - 1)  # vertices greater than s
        close = adj[s]
        path = [s]

        def extend(x: int, used: int) -> Iterator[tuple[int, ...]]:
            k = len(path)
            if k >= 3 and close >> x & 1 and path[1] < x and (length is None or k == length):
                yield tuple(path)
            if length is not None and k >= length:
                return
            for w in iter_bits(adj[x] & allowed & ~used):
                path.append(w)
                yield from extend(w, used | (1 << w))
                path.pop()

        yield from extend(s, 1 << s)


def find_cycle(g: Graph, length: int | None = None, mask: int | None = None) -> tuple[int, ...] | None:
    if mask is None:
        mask = g.vertex_mask
    if length is None:
        mask = peel_mask(g.adj, mask, 1)
        if not mask:
            return None
    return next(iter_cycles(g.adj, mask, length), None)


def _chordless_through(adj: Sequence[int], mask: int, v: int) -> Iterator[tuple[int, ...]]:
    """Induced cycles through ``v`` inside ``mask``, each once."""
    nv = adj[v] & mask
    for p1 in iter_bits(nv):
        path = [v, p1]
        # blocked: vertices adjacent to an interior path vertex (not the last one)

        def extend(x: int, used: int, blocked: int) -> Iterator[tuple[int, ...]]:
            cand = adj[x] & mask & ~used & ~blocked
            for w in iter_bits(cand):
                if nv >> w & 1:
                    if p1 < w:
                        yield tuple(path) + (w,)
                    continue
                path.append(w)
                yield from extend(w, used | (1 << w), blocked | adj[x])
                path.pop()

        yield from extend(p1, (1 << v) | (1 << p1), 0)


def _disjoint_any(adj: Sequence[int], mask: int, t: int, memo: dict) -> list[tuple[int, ...]] | None:
    mask = peel_mask(adj, mask, 1)
    if t == 0:
        return []
    if not mask:
        return None
    if t == 1:
        return [next(iter_cycles(adj, mask))]
    key = (mask, t)
    if key in memo:
        return None
    # branch on a minimum-degree vertex: either it is unused, or some
    # cycle of the packing passes through it, and then an induced cycle
    # through it on the same vertex set (or a subset) also works
    v = min(iter_bits(mask), key=lambda u: ((adj[u] & mask).bit_count(), u))
    for c in _chordless_through(adj, mask, v):
        cm = 0
        for u in c:
            cm |= 1 << u
        rest = _disjoint_any(adj, mask & ~cm, t - 1, memo)
        if rest is not None:
            return [c] + rest
    rest = _disjoint_any(adj, mask & ~(1 << v), t, memo)
    if rest is not None:
        return rest
    memo[key] = False
    return None


def _disjoint_fixed(adj: Sequence[int], mask: int, t: int, ell: int) -> list[tuple[int, ...]] | None:
    by_set: dict[int, tuple[int, ...]] = {}
    for c in iter_cycles(adj, peel_mask(adj, mask, 1), ell):
        cm = 0
        for u in c:
            cm |= 1 << u
        by_set.setdefault(cm, c)
    if t == 1:
        return [next(iter(by_set.values()))] if by_set else None
    sets = sorted(by_set)
    contain: dict[int, int] = {}
    for i, cm in enumerate(sets):
        for u in iter_bits(cm):
            contain[u] = contain.get(u, 0) | (1 << i)
    conflict = []
    for cm in sets:
        c = 0
        for u in iter_bits(cm):
            c |= contain[u]
        conflict.append(c)

    def pick(cands: int, need: int) -> list[int] | None:
        if need == 0:
            return []
        if cands.bit_count() < need:
            return None
        for i in iter_bits(cands):
            higher = cands & ~((2 << i) - 1)
            rest = pick(higher & ~conflict[i], need - 1)
            if rest is not None:
                return [i] + rest
        return None

    chosen = pick((1 << len(sets)) - 1, t)
    if chosen is None:
        return None
    return [by_set[sets[i]] for i in chosen]


def _fan(adj: Sequence[int], mask: int, k: int) -> tuple[int, tuple[int, ...]] | None:
    for a in iter_bits(mask):
        nb = adj[a] & mask
        if nb.bit_count() < k:
            continue
        path: list[int] = []

        def extend(x: int, used: int) -> bool:
            if len(path) == k:
                return True
            for w in iter_bits(adj[x] & nb & ~used):
                path.append(w)
                if extend(w, used | (1 << w)):
                    return True
                path.pop()
            return False

        for s in iter_bits(nb):
            path[:] = [s]
            if extend(s, 1 << s):
                return a, tuple(path)
    return None


def find_pattern(g: Graph, p: Pattern):
    """A witness for ``p`` in ``g``, or ``None``.

    Cycle patterns return a list of vertex-disjoint cycles; the fan
    pattern returns ``(apex, path)``.
    """
    mask = g.vertex_mask
    if p.tag is PatternTag.CL:
        c = find_cycle(g, p.ell)
        return [c] if c is not None else None
    if p.tag is PatternTag.T_CL:
        if g.n < p.t * p.ell:
            return None
        return _disjoint_fixed(g.adj, mask, p.t, p.ell)
    if p.tag is PatternTag.T_C:
        if g.n < 3 * p.t:
            return None
        return _disjoint_any(g.adj, mask, p.t, {})
    return _fan(g.adj, mask, p.k)


def contains_pattern(g: Graph, p: Pattern) -> bool:
    """True iff ``g`` has a (not necessarily induced) subgraph matching ``p``."""
    return find_pattern(g, p) is not None


# -- two disjoint cycles ---------------------------------------------------


class Certificate(str, Enum):
    DOUBLE_APEX_TRIANGLE = "double_apex_triangle"  # 2K_1 + C_3
    WHEEL = "wheel"  # K_1 + C_{n-1}


@dataclass(frozen=True)
class TwoCyclesVerdict:
    cycles: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    certificate: Certificate | None = None

    @property
    def has_witness(self) -> bool:
        return self.cycles is not None

    def to_dict(self) -> dict:
        if self.cycles is not None:
            return {"cycles": [list(c) for c in self.cycles]}
        return {"certificate": self.certificate.value}


def is_cycle_of(g: Graph, c: Sequence[int]) -> bool:
    k = len(c)
    if k < 3 or len(set(c)) != k:
        return False
    return all(g.has_edge(c[i], c[(i + 1) % k]) for i in range(k))


def double_apex_triangle() -> Graph:
    return join(empty(2), cycle(3))


def wheel(n: int) -> Graph:
    return join(complete(1), cycle(n - 1))


def lex_least_disjoint_pair(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Lexicographically least pair (c1 < c2) of vertex-disjoint cycles."""
    adj = g.adj
    core = peel_mask(adj, g.vertex_mask, 1)
    for c in iter_cycles(adj, core):
        cm = 0
        for u in c:
            cm |= 1 << u
        rest = peel_mask(adj, core & ~cm, 1)
        if rest:
            return c, next(iter_cycles(adj, rest))
    return None


def two_cycles_or_certificate(g: Graph) -> TwoCyclesVerdict:
    """Two disjoint cycles of a planar graph with minimum degree >= 3, or
    a certificate that ``g`` is one of the two graphs without them.

    The witness is the lexicographically least disjoint pair.
    """
    if g.n == 0 or g.min_degree() < 3:
        raise PreconditionError("minimum degree must be at least 3")
    if not is_planar(g):
        raise PreconditionError("graph must be planar")
    pair = lex_least_disjoint_pair(g)
    if pair is not None:
        assert is_cycle_of(g, pair[0]) and is_cycle_of(g, pair[1])
        assert not set(pair[0]) & set(pair[1])
        return TwoCyclesVerdict(cycles=pair)
    if g.n == 5 and are_isomorphic(g, double_apex_triangle()):
        return TwoCyclesVerdict(certificate=Certificate.DOUBLE_APEX_TRIANGLE)
    if g.n >= 4 and are_isomorphic(g, wheel(g.n)):
        return TwoCyclesVerdict(certificate=Certificate.WHEEL)
    raise PlanexError("no two disjoint cycles and no certificate: dichotomy violated")


# -- quadrilaterals and linear forests ----------------------------------------


def quadrilateral_apex(g: Graph) -> list[int]:
    """Vertices lying on every 4-cycle (all vertices when there is none)."""
    adj = g.adj
    common = g.vertex_mask
    found = False
    for a in range(g.n):
        for c in range(a + 1, g.n):
            mid = adj[a] & adj[c]
            if mid.bit_count() < 2:
                continue
            found = True
            base = (1 << a) | (1 << c)
            mids = list(iter_bits(mid))
            if len(mids) >= 3:
                # distinct pairs of middles already cover each middle vertex in
                # some cycle and miss it in another
                common &= base
            else:
                common &= base | mid
            if not common:
                return []
    if not found:
        return list(range(g.n))
    return list(iter_bits(common))


def linear_forest_profile(g: Graph) -> LinearForest | None:
    """Path orders of ``g`` if every component is a path, else ``None``."""
    if g.max_degree() > 2:
        return None
    parts = []
    for comp in g.components():
        mask = 0
        for v in comp:
            mask |= 1 << v
        if g.edges_within(mask) != len(comp) - 1:
            return None
        parts.append(len(comp))
    return LinearForest(tuple(parts))


class Mode(str, Enum):
    SINGLE = "SINGLE"  # forbid one C_ell
    DOUBLE = "DOUBLE"  # forbid two disjoint C_ell


def joined_freeness(h: LinearForest, ell: int, mode: Mode | str) -> bool:
    """Closed-form test of whether K_2 + h avoids the cycle pattern.

    DOUBLE: free of 2C_ell iff n1 <= 2*ell - 3 and n2 <= ell - 2.
    SINGLE: free of C_ell iff n1 + n2 <= ell - 3, since the longest
    cycle of K_2 + h runs through both apexes and the two longest paths.
    Both need at least two path components.
    """
    mode = Mode(mode)
    if len(h) < 2:
        raise PreconditionError("the closed form needs at least two path components")
    if ell < 3:
        raise InvalidParameter(f"cycle length must be >= 3, got {ell}")
    n1, n2 = h.n_i(1), h.n_i(2)
    if mode is Mode.DOUBLE:
        return n1 <= 2 * ell - 3 and n2 <= ell - 2
    return n1 + n2 <= ell - 3


def joined_pattern(ell: int, mode: Mode | str) -> Pattern:
    return Pattern.cycle(ell) if Mode(mode) is Mode.SINGLE else Pattern.disjoint_cycles(2, ell)
