from __future__ import annotations

import random
from functools import lru_cache

import pytest

from planex.canon import are_isomorphic, canonical_form
from planex.enumeration import Scope, enumerate_graphs
from planex.errors import ConstructionError, InvalidParameter
from planex.graph import complete, degree_peel
from planex.graph6 import encode
from planex.patterns import Pattern, double_apex_triangle, contains_pattern, quadrilateral_apex
from planex.planarity import is_outerplanar, is_planar
from planex.constructions import (
    GADGET_EDGES,
    GADGET_ORDER,
    PINNED_BASES,
    PINNED_GADGET,
    ConstructionReport,
    Family,
    FamilySpec,
    base_piece_edges,
    chain_base,
    chain_gadget,
    ex_op_c4_shifted,
    ex_op_formula,
    gn_family,
    gn_member,
    gstar_forms,
    gstar_member,
    h_linear_forest,
    named_extremal,
    outerplanar_c4_extremal,
    random_gn_member,
    spex_cl_forest,
    turan_2c4_lower,
    turan_2c4_value,
)


@lru_cache(maxsize=None)
def outerplanar_max_edges(n: int, k: int) -> int:
    """Exhaustive maximum over C_k-free outerplanar graphs on n vertices."""
    p = Pattern.cycle(k)
    return max(g.num_edges for g in enumerate_graphs(Scope.OUTERPLANAR, n, prune=lambda g: contains_pattern(g, p)))


# -- formulas -----------------------------------------------------------------------------


@pytest.mark.parametrize("k", [3, 4, 5])
def test_outerplanar_formula_matches_enumeration(k):
    for n in range(k, 10):
        assert ex_op_formula(n, k) == outerplanar_max_edges(n, k), (n, k)


def test_formula_arguments():
    with pytest.raises(InvalidParameter):
        ex_op_formula(3, 4)
    with pytest.raises(InvalidParameter):
        ex_op_c4_shifted(3)
    with pytest.raises(InvalidParameter):
        turan_2c4_value(3)


def test_shifted_and_turan_forms_agree():
    for n in range(5, 400):
        assert ex_op_c4_shifted(n) == ex_op_formula(n - 1, 4)
        assert turan_2c4_value(n) == ex_op_formula(n - 1, 4) + n - 1


def test_base_piece_edges():
    assert base_piece_edges(3) == 3
    for m in range(4, 10):
        assert base_piece_edges(m) == ex_op_formula(m, 4)


def test_h_linear_forest():
    h = h_linear_forest(20, 5, 3)
    assert h.parts == (5, 3, 3, 3, 3, 1) and h.total == 18
    h = h_linear_forest(20, 5, 2)
    assert h.parts[0] == 5 and h.total == 18 and 1 <= h.parts[-1] <= 2
    with pytest.raises(InvalidParameter):
        h_linear_forest(20, 2, 3)
    with pytest.raises(InvalidParameter):
        h_linear_forest(9, 5, 2)
    assert spex_cl_forest(30, 7) == h_linear_forest(30, 2, 2)
    with pytest.raises(InvalidParameter):
        spex_cl_forest(30, 4)


# -- named families ---------------------------------------------------------------------------


@pytest.mark.parametrize("family, n, ell, edges", [
    ("K2_N2", 10, None, 16),
    ("J_N", 9, None, 12),
    ("J_N", 10, None, 13),
    ("DOUBLE_WHEEL", 10, None, 24),
    ("SPEX_2CL", 12, 3, 23),
    ("SPEX_2CL", 20, 5, 50),
    ("SPEX_CL", 12, 3, 20),
    ("SPEX_CL", 12, 4, 16),
    ("SPEX_CL", 20, 7, None),
    ("K2_P3_REST", 9, None, 17),
    ("GSTAR_2C", 9, None, 17),
    ("OP_C4_EXTREMAL", 16, None, None),
    ("TURAN_2C4", 17, None, None),
])
def test_named_extremal(family, n, ell, edges):
    rep = named_extremal(FamilySpec(family, n, ell))
    assert rep.passed and rep.graph.n == n
    if edges is not None:
        assert rep.edge_count == edges
    assert rep.edge_count == rep.formula_value
    d = rep.to_dict()
    assert d["family"] == family and d["graph6"] == encode(rep.graph)
    assert all(c["pass"] for c in d["checks"])


def test_spex_cl_small_lengths_map_to_classical_families():
    assert are_isomorphic(named_extremal(FamilySpec("SPEX_CL", 11, 3)).graph,
                          named_extremal(FamilySpec("K2_N2", 11)).graph)
    assert are_isomorphic(named_extremal(FamilySpec("SPEX_CL", 11, 4)).graph,
                          named_extremal(FamilySpec("J_N", 11)).graph)


def test_named_extremal_rejects_bad_parameters():
    with pytest.raises(InvalidParameter):
        named_extremal(FamilySpec("DOUBLE_WHEEL", 4))
    with pytest.raises(InvalidParameter):
        named_extremal(FamilySpec("SPEX_2CL", 12))
    with pytest.raises(ValueError):
        FamilySpec("NOT_A_FAMILY", 5)


def test_report_finish_raises_on_failed_check():
    rep = ConstructionReport(complete(3), FamilySpec(Family.K2_N2, 3), formula_value=99)
    with pytest.raises(ConstructionError):
        rep.finish()


def test_spex_2cl_forest_is_extremal_shape():
    rep = named_extremal(FamilySpec("SPEX_2CL", 30, 4))
    assert rep.forest.parts[0] == 5 and set(rep.forest.parts[1:-1]) == {2}


# -- triangle-based 2C-free families --------------------------------------------------------


def test_gstar_members():
    assert [len(gstar_forms(n)) for n in range(5, 10)] == [1, 1, 2, 3, 4]
    a = gstar_member(8, [0, 0, 1]).graph
    b = gstar_member(8, [(1, 2), (1, 2), (0, 2)]).graph
    c = gstar_member(8, [0, 1, 2]).graph
    assert are_isomorphic(a, b) and not are_isomorphic(a, c)
    for g in (a, c):
        assert g.num_edges == 15 and is_planar(g)
    with pytest.raises(InvalidParameter):
        gstar_member(7, [(0, 3), 1])
    with pytest.raises(InvalidParameter):
        gstar_member(7, [0])


def test_gn_member_examples():
    g = gn_member(7, [(0, 3), (0, 1)])  # an apex plus a triangle vertex, then a triangle edge
    assert g.n == 7 and g.num_edges == 13 and is_planar(g)
    assert are_isomorphic(degree_peel(g, 2), double_apex_triangle())
    with pytest.raises(InvalidParameter):
        gn_member(6, [(3, 4)])  # the two apexes: K_5 minor
    with pytest.raises(InvalidParameter):
        gn_member(6, [(0, 0)])
    with pytest.raises(InvalidParameter):
        gn_member(6, [])


def test_gn_family_sizes():
    assert [len(gn_family(n)) for n in range(5, 9)] == [1, 2, 13, 88]


def test_gn_family_members_planar_and_edge_count():
    for g in gn_family(8).values():
        assert is_planar(g) and g.num_edges == 9 + 2 * 3
        assert are_isomorphic(degree_peel(g, 2), double_apex_triangle())


def test_random_gn_member_reproducible():
    g1, s1 = random_gn_member(12, random.Random(5))
    g2, s2 = random_gn_member(12, random.Random(5))
    assert g1 == g2 and s1 == s2 and len(s1) == 7
    assert gn_member(12, s1) == g1


# -- C_4-free outerplanar chains --------------------------------------------------------------


def test_pinned_pieces():
    gadget = chain_gadget()
    assert (gadget.graph.n, gadget.graph.num_edges) == (GADGET_ORDER, GADGET_EDGES)
    assert canonical_form(gadget.graph) == PINNED_GADGET
    for m in range(3, 10):
        base = chain_base(m)
        assert canonical_form(base.graph) == PINNED_BASES[m]
        assert base.graph.num_edges == base_piece_edges(m)
    with pytest.raises(InvalidParameter):
        chain_base(10)


@pytest.mark.parametrize("order", list(range(3, 40)))
def test_outerplanar_c4_extremal(order):
    rep = outerplanar_c4_extremal(order)
    g = rep.graph
    assert g.n == order and g.is_connected()
    assert is_outerplanar(g) and not contains_pattern(g, Pattern.cycle(4))
    if order >= 4:
        assert g.num_edges == ex_op_formula(order, 4)


def test_outerplanar_c4_extremal_matches_enumeration():
    for order in range(4, 10):
        assert outerplanar_c4_extremal(order).edge_count == outerplanar_max_edges(order, 4)


def test_turan_2c4_lower_examples():
    rep = turan_2c4_lower(8)
    assert rep.edge_count == turan_2c4_value(8) == 16
    g = rep.graph
    assert quadrilateral_apex(g)
    assert not contains_pattern(g, Pattern.disjoint_cycles(2, 4))
    assert are_isomorphic(turan_2c4_lower(4).graph, complete(4))


def test_turan_2c4_lower_edge_identity_all_orders():
    for n in range(4, 301):
        rep = turan_2c4_lower(n)
        assert rep.passed
        assert rep.edge_count == (ex_op_formula(n - 1, 4) if n >= 5 else 3) + n - 1
        assert rep.edge_count == turan_2c4_value(n)
