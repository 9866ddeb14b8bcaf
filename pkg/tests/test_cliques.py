from itertools import combinations
from math import comb

import pytest

from cliquecav import (
    cocktail_party_network,
    complex_from_json,
    complex_to_json,
    cross_polytope_count,
    edge_text_checksum,
    enumerate_cliques,
    euler_characteristic,
    expand_maximal_cliques,
    generate_smallest_cavity_complex,
    max_clique_order,
    maximal_cliques,
    network_from_edges,
)

from oracles import bernoulli_graph

TRIANGLES_14 = [
    ("1", "2", "3"), ("1", "2", "4"), ("1", "2", "5"), ("1", "3", "4"),
    ("2", "3", "4"), ("9", "10", "11"), ("9", "10", "13"), ("9", "11", "12"),
    ("9", "12", "13"), ("10", "11", "14"), ("10", "13", "14"),
    ("11", "12", "14"), ("12", "13", "14"),
]


def _labeled(net, level):
    return [tuple(net.node_labels[u] for u in c) for c in level]


def test_sample14_census(sample14):
    cx = enumerate_cliques(sample14)
    assert cx.counts == (14, 26, 13, 1)
    assert cx.truncated_at is None
    assert euler_characteristic(cx).chi == 0


def test_sample14_triangles_and_tetrahedron_exact(sample14):
    cx = enumerate_cliques(sample14)
    assert _labeled(sample14, cx.levels[2]) == TRIANGLES_14
    assert _labeled(sample14, cx.levels[3]) == [("1", "2", "3", "4")]


def test_k4_census():
    labels = ["1", "2", "3", "4"]
    pairs = [(a, b) for a, b in combinations(labels, 2)]
    cx = enumerate_cliques(network_from_edges(labels, pairs))
    assert cx.counts == (4, 6, 4, 1)


def test_complete_graph_counts_are_binomials():
    labels = [str(i) for i in range(1, 7)]
    pairs = [(a, b) for a, b in combinations(labels, 2)]
    cx = enumerate_cliques(network_from_edges(labels, pairs))
    assert cx.counts == tuple(comb(6, j + 1) for j in range(6))


def test_levels_are_downward_closed(sample14):
    for net in [sample14, bernoulli_graph(25, 0.35, 3)]:
        cx = enumerate_cliques(net)
        for k in range(1, len(cx.levels)):
            below = set(cx.levels[k - 1])
            for c in cx.levels[k]:
                for face in combinations(c, k):
                    assert face in below


def test_levels_are_sorted_and_deduplicated(sample14):
    cx = enumerate_cliques(sample14)
    for level in cx.levels:
        assert list(level) == sorted(set(level))


def test_matches_maximal_clique_expansion_on_random_graphs():
    for seed in range(20):
        net = bernoulli_graph(30, 0.3, seed)
        cx = enumerate_cliques(net)
        assert list(cx.levels) == expand_maximal_cliques(maximal_cliques(net)), f"seed {seed}"


def test_budget_truncation_is_loud(sample14):
    cx = enumerate_cliques(sample14, budget=20)
    assert cx.truncated_at == 1
    assert cx.counts == (14,)
    assert "budget" in cx.warning
    with pytest.raises(ValueError, match="truncated"):
        euler_characteristic(cx)


def test_budget_truncation_at_level_zero(sample14):
    cx = enumerate_cliques(sample14, budget=10)
    assert cx.truncated_at == 0
    assert cx.counts == ()


def test_max_order_stops_cleanly(sample14):
    cx = enumerate_cliques(sample14, max_order=1)
    assert cx.counts == (14, 26)
    assert cx.truncated_at is None
    assert euler_characteristic(cx).chi == 14 - 26


def test_max_clique_order(sample14):
    assert max_clique_order(sample14) == 3
    path = network_from_edges(["1", "2", "3"], [("1", "2"), ("2", "3")])
    assert max_clique_order(path) == 1
    assert max_clique_order(network_from_edges([], [])) == -1


def test_enumeration_is_deterministic(sample14):
    a = enumerate_cliques(sample14)
    b = enumerate_cliques(sample14)
    assert a == b
    checksum = edge_text_checksum(sample14)
    assert complex_to_json(a, checksum) == complex_to_json(b, checksum)


def test_complex_json_round_trip(sample14):
    cx = enumerate_cliques(sample14)
    doc = complex_to_json(cx, edge_text_checksum(sample14))
    again, checksum = complex_from_json(doc)
    assert again == cx
    assert checksum == edge_text_checksum(sample14)


def test_complex_json_rejects_inconsistent_counts(sample14):
    cx = enumerate_cliques(sample14)
    doc = complex_to_json(cx, edge_text_checksum(sample14))
    doc["counts"] = [1, 2]
    with pytest.raises(ValueError):
        complex_from_json(doc)


def test_cocktail_party_structure():
    net = cocktail_party_network(2)
    # three antipodal pairs, each node adjacent to all but its partner
    assert net.node_count == 6
    assert all(net.degree(u) == 4 for u in range(6))


def test_smallest_cavity_counts_match_formula():
    for k in range(1, 9):
        cx = generate_smallest_cavity_complex(k)
        assert cx.top_order == k
        for j, m in enumerate(cx.counts):
            assert m == cross_polytope_count(k, j), (k, j)
        chi = euler_characteristic(cx).chi
        assert chi == 1 + (-1) ** k


def test_cocktail_party_rejects_out_of_range():
    with pytest.raises(ValueError):
        cocktail_party_network(0)
    with pytest.raises(ValueError):
        cocktail_party_network(13)
