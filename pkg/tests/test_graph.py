from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from planex.canon import (
    are_isomorphic,
    automorphism_orbits,
    canonical_form,
    canonical_form_bruteforce,
    canonical_labeling,
)
from planex.errors import CapacityError, GraphFormatError, InvalidParameter
from planex.graph import (
    MAX_ORDER,
    BasicKind,
    Graph,
    LinearForest,
    build_basic,
    complete,
    cycle,
    degree_peel,
    disjoint_union,
    empty,
    join,
    path,
)
from planex.graph6 import decode, encode, read_lines, write_lines


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, max_n: int = 12):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


# -- construction and algebra ------------------------------------------------------


def test_build_basic_examples():
    p1 = build_basic(BasicKind.PATH, 1)
    assert (p1.n, p1.num_edges) == (1, 0)
    c5 = build_basic("CYCLE", 5)
    assert c5.n == 5 and c5.num_edges == 5 and set(c5.degrees()) == {2}
    assert build_basic(BasicKind.COMPLETE, 4).num_edges == 6
    assert build_basic(BasicKind.EMPTY, 3).num_edges == 0


@pytest.mark.parametrize("n", [0, 1, 2])
def test_short_cycle_rejected(n):
    with pytest.raises(InvalidParameter):
        build_basic(BasicKind.CYCLE, n)


def test_capacity_enforced():
    assert empty(MAX_ORDER).n == MAX_ORDER
    with pytest.raises(CapacityError):
        empty(MAX_ORDER + 1)
    with pytest.raises(CapacityError):
        join(empty(300), empty(300))


def test_invalid_adjacency_rejected():
    with pytest.raises(InvalidParameter):
        Graph(2, [0b10, 0])  # not symmetric
    with pytest.raises(InvalidParameter):
        Graph(1, [0b1])  # self-loop
    with pytest.raises(InvalidParameter):
        Graph.from_edges(3, [(0, 3)])


def test_join_examples():
    g = join(empty(2), cycle(3))
    assert (g.n, g.num_edges) == (5, 9)
    assert join(complete(2), empty(4)).num_edges == 9
    fan = join(complete(1), path(4))
    assert fan.num_edges == 7


def test_disjoint_union_examples():
    g = disjoint_union([path(3), path(1), path(1)])
    assert (g.n, g.num_edges) == (5, 2)
    assert disjoint_union([cycle(3), cycle(3)]).num_edges == 6
    assert disjoint_union([]).n == 0


@settings(max_examples=100, deadline=None)
@given(graphs(8), graphs(8))
def test_join_edge_count(g1, g2):
    assert join(g1, g2).num_edges == g1.num_edges + g2.num_edges + g1.n * g2.n


def test_degree_peel_examples():
    rng = random.Random(3)
    # random tree
    edges = [(v, rng.randrange(v)) for v in range(1, 15)]
    assert degree_peel(Graph.from_edges(15, edges), 2).n == 0
    assert degree_peel(complete(4), 2) == complete(4)
    member = join(complete(3), empty(2)).add_vertex((0, 1)).add_vertex((0, 2)).add_vertex((1, 2))
    assert are_isomorphic(degree_peel(member, 2), join(empty(2), cycle(3)))


@settings(max_examples=100, deadline=None)
@given(graphs(12), st.randoms(use_true_random=False))
def test_degree_peel_order_independent(g, rnd):
    core = degree_peel(g, 2)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    core2 = degree_peel(g.relabel(perm), 2)
    assert canonical_form(core) == canonical_form(core2)
    assert degree_peel(core, 2) == core
    assert core.n == 0 or core.min_degree() >= 3


def test_linear_forest_basics():
    h = LinearForest.of(2, 5, 1, 2)
    assert h.parts == (5, 2, 2, 1) and h.total == 10 and len(h) == 4
    assert (h.n_i(1), h.n_i(2), h.n_i(5)) == (5, 2, 0)
    g = h.realize()
    assert g.n == 10 and g.num_edges == 6
    assert str(h) == "[5,2,2,1]"
    with pytest.raises(InvalidParameter):
        LinearForest.of(3, 0)


# -- graph6 -------------------------------------------------------------------------


def test_graph6_k4():
    assert encode(complete(4)) == "C~"
    assert decode("C~") == complete(4)


def test_graph6_matches_networkx():
    rng = random.Random(7)
    for n in list(range(0, 12)) + [62, 63, 100]:
        g = random_graph(rng, n, 0.3)
        G = nx.Graph()
        G.add_nodes_from(range(n))
        G.add_edges_from(g.edges())
        assert encode(g) == nx.to_graph6_bytes(G, header=False).decode().strip()


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 50), st.floats(0, 1), st.integers(0, 2**32))
def test_graph6_roundtrip(n, p, seed):
    g = random_graph(random.Random(seed), n, p)
    assert decode(encode(g)) == g


def test_graph6_large_order_roundtrip():
    g = random_graph(random.Random(1), MAX_ORDER, 0.01)
    assert decode(encode(g)) == g


@pytest.mark.parametrize(
    "text, offset",
    [("garbage\x01", 7), ("C~~", 2), ("C", 1), ("", 0), ("Ao", 1), ("~???", 0)],
)
def test_graph6_errors_report_offsets(text, offset):
    with pytest.raises(GraphFormatError) as info:
        decode(text)
    assert info.value.offset == offset
    assert f"byte offset {offset}" in str(info.value)


def test_graph6_rejects_order_above_capacity():
    with pytest.raises(GraphFormatError):
        decode(encode(empty(1)).replace("@", "~?H?"))  # n = 513 prefix, no data


def test_graph6_stream_helpers(tmp_path):
    gs = [cycle(5), complete(4), empty(3)]
    f = tmp_path / "g.g6"
    with f.open("w") as fh:
        write_lines(gs, fh)
    with f.open() as fh:
        assert list(read_lines(fh)) == gs


# -- canonical form -------------------------------------------------------------------


def test_canonical_form_examples():
    p3 = path(3)
    assert canonical_form(p3) == canonical_form(p3.relabel([2, 0, 1]))
    assert canonical_form(cycle(4)) != canonical_form(path(4))


def test_eleven_graphs_on_four_vertices():
    pairs = list(combinations(range(4), 2))
    forms = set()
    for mask in range(1 << 6):
        g = Graph.from_edges(4, [e for i, e in enumerate(pairs) if mask >> i & 1])
        forms.add(canonical_form(g))
    assert len(forms) == 11


def test_canonical_form_agrees_with_bruteforce():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(1, 7)
        g = random_graph(rng, n, rng.random())
        h = random_graph(rng, n, rng.random())
        same_brute = canonical_form_bruteforce(g) == canonical_form_bruteforce(h)
        assert (canonical_form(g) == canonical_form(h)) == same_brute


def test_canonical_forms_separate_atlas():
    from networkx.generators.atlas import graph_atlas_g

    forms = set()
    atlas = graph_atlas_g()
    for G in atlas:
        forms.add(canonical_form(Graph.from_edges(G.number_of_nodes(), G.edges())))
    assert len(forms) == len(atlas)


@settings(max_examples=1000, deadline=None)
@given(graphs(14), st.randoms(use_true_random=False))
def test_canonical_form_invariant_under_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert canonical_form(g) == canonical_form(g.relabel(perm))


def test_symmetric_graphs():
    petersen = Graph.from_edges(10, nx.petersen_graph().edges())
    assert set(automorphism_orbits(petersen)) == {0}
    k2_matching = join(complete(2), LinearForest((2,) * 20).realize())
    orbits = automorphism_orbits(k2_matching)
    assert len(set(orbits)) == 2
    assert are_isomorphic(k2_matching, k2_matching.relabel(list(range(41, -1, -1))))


def test_orbits_match_networkx_automorphisms():
    rng = random.Random(5)
    for _ in range(80):
        n = rng.randint(1, 8)
        g = random_graph(rng, n, rng.random())
        G = nx.Graph()
        G.add_nodes_from(range(n))
        G.add_edges_from(g.edges())
        expected = list(range(n))
        for m in GraphMatcher(G, G).isomorphisms_iter():
            for v, w in m.items():
                expected[v] = min(expected[v], w)
        # an orbit's smallest member maps onto every other member
        assert automorphism_orbits(g) == [min(expected[u] for u in range(n) if expected[u] == expected[v]) for v in range(n)]


def test_generators_are_automorphisms():
    rng = random.Random(9)
    for _ in range(50):
        g = random_graph(rng, rng.randint(2, 12), rng.random())
        for gen in canonical_labeling(g).generators:
            assert g.relabel(gen) == g
