from __future__ import annotations

import math
import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from planex.errors import InvalidParameter, SpectralConvergenceError
from planex.graph import Graph, LinearForest, complete, complete_bipartite, cycle, disjoint_union, empty, join, path
from planex.spectral import (
    adjacency_matrix,
    compare,
    dense_spectral_radius,
    gain_threshold,
    k2_join,
    perron_profile,
    spectral_radius,
    transform,
    transformation_gain,
)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


@pytest.mark.parametrize("g, rho", [
    (complete(4), 3.0),
    (cycle(7), 2.0),
    (path(2), 1.0),
    (path(3), math.sqrt(2)),
    (complete_bipartite(3, 3), 3.0),
    (join(complete(1), cycle(5)), 1 + math.sqrt(6)),  # wheel W_6
])
def test_known_values(g, rho):
    res = spectral_radius(g)
    assert res.rho == pytest.approx(rho, abs=1e-9)
    assert res.residual < 1e-9
    assert res.x.max() == pytest.approx(1.0)


@pytest.mark.parametrize("n", [4, 5, 10, 37, 100])
def test_k2_complete_bipartite(n):
    assert spectral_radius(complete_bipartite(2, n - 2)).rho == pytest.approx(math.sqrt(2 * n - 4), abs=1e-9)


def test_path_endpoint_eigen_equation():
    g = path(9)
    res = spectral_radius(g)
    assert res.rho == pytest.approx(2 * math.cos(math.pi / 10), abs=1e-10)
    # the endpoint sees only its neighbour
    assert res.rho * res.x[0] == pytest.approx(res.x[1], abs=1e-9)


def test_edgeless():
    res = spectral_radius(empty(4))
    assert res.edgeless and res.rho == 0.0 and res.iterations == 0
    assert spectral_radius(empty(0)).rho == 0.0


def test_disconnected_support():
    g = disjoint_union([cycle(4), complete(4), path(2)])
    res = spectral_radius(g)
    assert res.rho == pytest.approx(3.0, abs=1e-9)
    assert np.all(res.x[:4] == 0) and np.all(res.x[8:] == 0)
    assert np.allclose(res.x[4:8], 1.0)
    # two components tie for the maximum; both carry the vector
    tied = spectral_radius(disjoint_union([cycle(5), cycle(3)]))
    assert np.allclose(tied.x, 1.0)


def test_bad_arguments():
    with pytest.raises(InvalidParameter):
        spectral_radius(cycle(4), tol=0)
    with pytest.raises(SpectralConvergenceError):
        spectral_radius(path(40), tol=1e-14, max_iter=3)


def test_to_dict():
    d = spectral_radius(path(3)).to_dict(with_vector=True)
    assert set(d) == {"rho", "residual", "iterations", "edgeless", "x"}
    assert len(d["x"]) == 3


def test_compare():
    assert compare(1.0, 1.0 + 1e-10) == 0
    assert compare(1.0, 1.1) == -1
    assert compare(1.1, 1.0) == 1


def test_adjacency_matrix_symmetric():
    a = adjacency_matrix(cycle(5)).toarray()
    assert (a == a.T).all() and a.sum() == 10


# -- dual-route agreement and invariants -------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 25), st.floats(0, 1), st.integers(0, 2**32))
def test_power_iteration_matches_dense(n, p, seed):
    g = random_graph(random.Random(seed), n, p)
    assert spectral_radius(g).rho == pytest.approx(dense_spectral_radius(g), abs=1e-8)


def test_monotone_under_edge_addition():
    rng = random.Random(12)
    for _ in range(50):
        n = rng.randint(3, 20)
        g = random_graph(rng, n, 0.3)
        missing = [(u, v) for u, v in combinations(range(n), 2) if not g.has_edge(u, v)]
        if not missing:
            continue
        h = Graph.from_edges(n, g.edges() + [rng.choice(missing)])
        assert spectral_radius(h).rho >= spectral_radius(g).rho - 1e-9


@pytest.mark.parametrize("n", [6, 10, 25, 60])
def test_k2_join_lower_bound(n):
    # every K_2 + H contains K_{2, n-2}
    for parts in [(n - 2,), (2,) * ((n - 2) // 2) + ((1,) if n % 2 else ()), (1,) * (n - 2)]:
        h = LinearForest(parts)
        assert spectral_radius(k2_join(h)).rho >= math.sqrt(2 * n - 4) - 1e-12


# -- K_2 + H ------------------------------------------------------------------------------


def test_perron_profile_examples():
    prof = perron_profile(LinearForest.of(3, 2, 2, 1, 1), n=11)
    assert prof.apex_is_max and prof.within_bounds
    assert prof.bound_lo == pytest.approx(2 / prof.rho)
    assert prof.to_dict()["within_bounds"] is True
    with pytest.raises(InvalidParameter):
        perron_profile(LinearForest.of(3), n=9)


def test_transform_examples():
    assert transform(LinearForest.of(3, 2, 1), 3, 2) == LinearForest.of(4, 1, 1)
    assert transform(LinearForest.of(3, 2, 1), 2, 1) == LinearForest.of(3, 3)
    assert transform(LinearForest.of(2, 2), 2, 2) == LinearForest.of(3, 1)
    with pytest.raises(InvalidParameter):
        transform(LinearForest.of(3, 2), 2, 3)
    with pytest.raises(InvalidParameter):
        transform(LinearForest.of(3, 3), 3, 2)
    with pytest.raises(InvalidParameter):
        transform(LinearForest.of(2, 1), 2, 2)  # needs two parts of order 2


def test_gain_threshold():
    assert [gain_threshold(s) for s in (1, 2, 3)] == [39, 75, 147]


def test_transformation_gain_positive_above_threshold():
    n = gain_threshold(1)
    h = LinearForest((3,) + (1,) * (n - 5))
    gain = transformation_gain(h, 3, 1, n=n)
    assert gain.verdict == 1 and gain.delta > 0
    assert gain.delta == pytest.approx(gain.dense_delta, abs=1e-8)
    assert gain.after > gain.before
