"""Graph constructors, Cartesian products, and the edge functionals."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blocklex import (
    Graph,
    VertexSet,
    boundary_edges,
    cartesian_product,
    clique,
    complete_bipartite,
    cycle,
    disjoint_union,
    graph_power,
    induced_edges,
    parse_graph_spec,
    path,
    permute_factors,
    petersen,
    subproduct,
)


def test_petersen_shape():
    g = petersen()
    assert g.n == 10
    assert g.num_edges == 15
    assert g.regular_degree() == 3


def test_clique_single_vertex():
    g = clique(1)
    assert g.n == 1 and g.num_edges == 0


def test_union_of_cliques():
    g = disjoint_union([clique(5), clique(4)])
    assert g.n == 9
    assert g.num_edges == 16  # 10 + 6


def test_cycle_requires_three():
    with pytest.raises(ValueError):
        cycle(2)


def test_square_is_four_cycle():
    g = cartesian_product([clique(2), clique(2)])
    assert g.n == 4 and g.num_edges == 4
    assert g.regular_degree() == 2


def test_three_cube():
    g = graph_power(clique(2), 3)
    assert g.n == 8 and g.num_edges == 12
    assert g.regular_degree() == 3


def test_petersen_times_k2_edge_count():
    g = cartesian_product([petersen(), clique(2)])
    assert g.n == 20
    assert g.num_edges == 15 * 2 + 1 * 10


@pytest.mark.parametrize(
    "factors",
    [
        [clique(3), clique(4)],
        [path(3), cycle(5)],
        [petersen(), clique(2)],
    ],
)
def test_product_edge_count_formula(factors):
    g = cartesian_product(factors)
    a, b = factors
    assert g.num_edges == a.num_edges * b.n + b.num_edges * a.n


def test_induced_edges_whole_clique():
    g = clique(3)
    assert induced_edges(g, VertexSet.full(3)) == 3


def test_induced_edges_lex_prefix_cube(cube3):
    assert induced_edges(cube3, VertexSet.from_ids(8, range(4))) == 4


def test_induced_edges_empty(pet):
    assert induced_edges(pet, VertexSet.empty(10)) == 0


def test_induced_edges_two_sets():
    g = path(3)  # 0-1-2
    assert induced_edges(g, [0], [1]) == 1
    assert induced_edges(g, [0], [2]) == 0
    assert induced_edges(g, [0, 1], [1, 2]) == 2


def test_boundary_single_vertex(cube3):
    assert boundary_edges(cube3, [0]) == 3


def test_boundary_full(pet):
    assert boundary_edges(pet, VertexSet.full(10)) == 0


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_regular_degree_identity(data):
    """boundary + 2 * induced = degree * |A| on regular graphs."""
    g = data.draw(
        st.sampled_from(
            [petersen(), cycle(7), clique(5), graph_power(clique(2), 3)]
        )
    )
    ids = data.draw(st.sets(st.integers(0, g.n - 1)))
    a = VertexSet.from_ids(g.n, ids)
    d = g.regular_degree()
    assert boundary_edges(g, a) + 2 * induced_edges(g, a) == d * len(a)


def test_subproduct_single_factor():
    g = cartesian_product([clique(2), clique(3), clique(4)])
    s = subproduct(g, [1])
    assert s.n == 3 and s.num_edges == 3


def test_subproduct_pair():
    g = cartesian_product([clique(2), clique(3), clique(4)])
    s = subproduct(g, [0, 2])
    direct = cartesian_product([clique(2), clique(4)])
    assert s.n == 8
    assert s.edges() == direct.edges()


def test_subproduct_full_set():
    g = cartesian_product([clique(2), clique(3), clique(4)])
    s = subproduct(g, [0, 1, 2])
    assert s.edges() == g.edges()


def test_subproduct_rejects_empty():
    g = cartesian_product([clique(2), clique(3)])
    with pytest.raises(ValueError):
        subproduct(g, [])


def test_permute_factors_identity():
    g = cartesian_product([clique(2), clique(3)])
    h, psi = permute_factors(g, [0, 1])
    assert h.edges() == g.edges()
    assert np.array_equal(psi, np.arange(g.n))


def test_permute_factors_swap_preserves_counts():
    g = cartesian_product([clique(2), clique(3)])
    h, psi = permute_factors(g, [1, 0])
    assert h.factor_shape == (3, 2)
    rng = np.random.default_rng(7)
    for _ in range(20):
        ids = rng.choice(g.n, size=rng.integers(0, g.n + 1), replace=False)
        a = VertexSet.from_ids(g.n, ids)
        b = VertexSet.from_ids(h.n, psi[a.mask])
        assert induced_edges(g, a) == induced_edges(h, b)
        assert boundary_edges(g, a) == boundary_edges(h, b)


def test_permute_equal_factors_same_graph():
    g = graph_power(clique(2), 3)
    for pi in [(0, 1, 2), (2, 0, 1), (1, 2, 0)]:
        h, _ = permute_factors(g, pi)
        assert h.edges() == g.edges()


def test_mixed_radix_coding():
    g = cartesian_product([clique(2), clique(3), clique(4)])
    # factor 0 is the most significant digit
    assert g.vertex_id((1, 0, 0)) == 12
    assert g.vertex_tuple(12) == (1, 0, 0)
    assert g.vertex_id((0, 2, 3)) == 11


def test_graph_json_roundtrip():
    g = cartesian_product([petersen(), clique(2)])
    h = Graph.from_json(g.to_json())
    assert h == g
    assert h.factor_shape == (10, 2)
    assert h.factors[0].edges() == petersen().edges()


def test_graph_json_rejects_fake_factors():
    g = petersen()
    data = g.to_json()
    data["factors"] = [2, 5]
    with pytest.raises(ValueError):
        Graph.from_json(data)


@pytest.mark.parametrize(
    "spec,n,edges",
    [
        ("K5", 5, 10),
        ("P4", 4, 3),
        ("C5", 5, 5),
        ("petersen", 10, 15),
        ("K3,3", 6, 9),
        ("union(K5,K4)", 9, 16),
        ("K2^3", 8, 12),
        ("petersen^2", 100, 300),
        ("petersenxK2", 20, 40),
        ("C5xC4xC3", 60, 180),
    ],
)
def test_spec_grammar(spec, n, edges):
    g = parse_graph_spec(spec)
    assert g.n == n and g.num_edges == edges


def test_spec_grammar_rejects_garbage():
    for bad in ["", "Q7", "K5x", "union(K5", "K5^"]:
        with pytest.raises(ValueError):
            parse_graph_spec(bad)


def test_no_loops_or_parallel_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    g = Graph(3, [(0, 1), (1, 0)])
    assert g.num_edges == 1


def test_complete_bipartite():
    g = complete_bipartite(3, 3)
    assert g.n == 6 and g.num_edges == 9
    degs = g.degrees()
    assert all(d == 3 for d in degs)
