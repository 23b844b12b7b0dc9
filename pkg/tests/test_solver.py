"""The exact solver: profiles, delta-sequences, chain search, verification.

Expected values for the small cases were frozen from independent
brute-force enumeration over all subsets.
"""

import numpy as np
import pytest

from blocklex import (
    Graph,
    SizeCapExceeded,
    TotalOrder,
    VertexSet,
    cartesian_product,
    clique,
    cycle,
    delta_sequence,
    disjoint_union,
    exact_profile,
    factor_profile_and_order,
    find_nested_chain,
    graph_power,
    path,
    petersen,
    prefix_edge_counts,
    theta_profile,
    verify_order_optimal,
)

PETERSEN_DELTA = (0, 1, 1, 1, 2, 1, 2, 2, 2, 3)


def test_petersen_profile(pet_profile):
    assert pet_profile.i_values == (0, 0, 1, 2, 3, 5, 6, 8, 10, 12, 15)
    assert delta_sequence(pet_profile).values == PETERSEN_DELTA


def test_cube_profile(cube3):
    prof = exact_profile(cube3)
    assert prof.i_values == (0, 0, 1, 2, 4, 5, 7, 9, 12)


def test_single_vertex_profile():
    prof = exact_profile(clique(1))
    assert prof.i_values == (0, 0)


def test_profile_endpoints_and_monotonicity(pet, pet_profile):
    vals = pet_profile.i_values
    assert vals[0] == 0
    assert vals[-1] == pet.num_edges
    assert all(vals[i + 1] >= vals[i] for i in range(len(vals) - 1))


def test_witnesses_achieve_values(pet, pet_profile):
    prof = exact_profile(pet)  # with witnesses
    from blocklex import induced_edges

    for m in range(pet.n + 1):
        w = prof.witness(m)
        assert len(w) == m
        assert induced_edges(pet, VertexSet.from_ids(pet.n, w)) == prof.value(m)


def test_full_enumeration_cap():
    g = path(30)
    with pytest.raises(SizeCapExceeded):
        exact_profile(g, "full")


@pytest.mark.parametrize(
    "g,expect",
    [
        (clique(5), (0, 1, 2, 3, 4)),
        (path(6), (0, 1, 1, 1, 1, 1)),
        (disjoint_union([clique(5), clique(4)]), (0, 1, 2, 3, 4, 0, 1, 2, 3)),
    ],
)
def test_delta_examples(g, expect):
    assert delta_sequence(exact_profile(g)).values == expect


def test_delta_requires_complete_profile():
    from blocklex.solver import Profile

    p = Profile("induced_max", None, None, False, "full", "x", "budget exceeded")
    with pytest.raises(ValueError):
        delta_sequence(p)


def test_delta_step_bound_on_isoperimetric_graphs():
    for g in [petersen(), clique(6), path(7), cycle(6), graph_power(clique(2), 3)]:
        prof = exact_profile(g)
        res = find_nested_chain(g, prof)
        assert res.status == "order"
        assert delta_sequence(prof).step_bound_holds()


def test_theta_cube(cube3):
    full = theta_profile(cube3)
    assert full.i_values[4] == 4
    assert full.i_values[0] == 0
    via = theta_profile(cube3, "via_regular")
    assert via.i_values == full.i_values


def test_theta_c5_pair():
    assert theta_profile(cycle(5)).i_values[2] == 2


def test_theta_via_regular_rejects_irregular():
    with pytest.raises(ValueError):
        theta_profile(path(4), "via_regular")


def test_regular_complement_identity():
    """For regular graphs, complements of optimal sets are optimal."""
    for g in [petersen(), cycle(6), graph_power(clique(2), 3)]:
        vals = exact_profile(g).i_values
        d, n, e = g.regular_degree(), g.n, g.num_edges
        for m in range(n + 1):
            assert vals[n - m] == e - d * m + vals[m]


def test_chain_on_clique():
    g = clique(5)
    prof = exact_profile(g)
    res = find_nested_chain(g, prof)
    assert res.status == "order"
    assert prof.i_values == tuple(m * (m - 1) // 2 for m in range(6))


def test_chain_on_petersen_matches_delta(pet, pet_profile):
    res = find_nested_chain(pet, pet_profile)
    assert res.status == "order"
    prefix = prefix_edge_counts(pet, res.order)
    assert tuple(np.diff(prefix)) == PETERSEN_DELTA


def test_chain_star_center_first():
    g = Graph(4, [(0, 1), (0, 2), (0, 3)])  # star, center 0
    prof = exact_profile(g)
    res = find_nested_chain(g, prof)
    assert res.status == "order"
    # deterministic lowest-id-first search starts at the center
    assert res.order.vertex_at(1) == 0
    # an order with the center last is not optimal
    center_last = TotalOrder.from_sequence([1, 2, 3, 0])
    ok, m = verify_order_optimal(g, center_last, prof)
    assert not ok and m == 2


def test_chain_inconclusive_vs_negative():
    g = petersen()
    prof = exact_profile(g)
    res = find_nested_chain(g, prof, node_cap=3)
    assert res.status == "inconclusive"
    assert res.order is None


def test_lex_optimal_on_cube_powers(k2_order):
    from blocklex import lex_order

    for d in (2, 3, 4):
        g = graph_power(clique(2), d)
        prof = exact_profile(g, with_witnesses=False)
        o = lex_order(g, [k2_order] * d)
        ok, _ = verify_order_optimal(g, o, prof)
        assert ok


def test_lex_optimal_on_ascending_cliques():
    from blocklex import lex_order

    g = cartesian_product([clique(2), clique(3)])
    prof = exact_profile(g)
    orders = [factor_profile_and_order(f)[1] for f in g.factors]
    ok, _ = verify_order_optimal(g, lex_order(g, orders), prof)
    assert ok


def test_path_orders():
    g = path(4)
    prof = exact_profile(g)
    # end-first orders are optimal, from either end
    ok, _ = verify_order_optimal(g, TotalOrder.identity(4), prof)
    assert ok
    from blocklex import reverse_order

    ok, _ = verify_order_optimal(g, reverse_order(TotalOrder.identity(4)), prof)
    assert ok
    # an order whose first two vertices are non-adjacent fails at m=2
    ok, m = verify_order_optimal(g, TotalOrder.from_sequence([1, 3, 0, 2]), prof)
    assert not ok and m == 2


def test_bnb_agrees_with_full():
    for g in [
        petersen(),
        cartesian_product([clique(2), clique(3)]),
        cycle(8),
        disjoint_union([clique(3), path(4)]),
    ]:
        a = exact_profile(g, "full")
        b = exact_profile(g, "bnb")
        assert a.i_values == b.i_values
        from blocklex import VertexSet, induced_edges

        for m in range(g.n + 1):
            w = b.witness(m)
            assert len(w) == m
            assert induced_edges(g, VertexSet.from_ids(g.n, w)) == b.value(m)


def test_compressed_strategy_agrees_with_full():
    for factors in [
        [clique(2)] * 3,
        [clique(2), clique(3)],
        [cycle(5), clique(2)],
        [cycle(4), cycle(3)],
        [path(3), path(4)],
    ]:
        g = cartesian_product(factors)
        full = exact_profile(g, "full")
        comp = exact_profile(g, "compressed")
        assert comp.i_values == full.i_values, factors


def test_compressed_rejects_suboptimal_factor_order():
    g = cartesian_product([petersen(), clique(2)])
    bad = [TotalOrder.identity(10), TotalOrder.identity(2)]
    with pytest.raises(ValueError, match="not optimal"):
        exact_profile(g, "compressed", factor_orders=bad)


def test_budget_flags_incomplete():
    g = graph_power(clique(2), 4)
    prof = exact_profile(g, budget_seconds=0.0)
    assert not prof.complete
    assert prof.note == "budget exceeded"
