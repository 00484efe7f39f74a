import itertools

import networkx as nx
import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from wmlq.core import simplify, validate
from wmlq.gen import (
    gen_hub3,
    gen_inapprox,
    gen_mis_cubic,
    gen_outdegree,
    gen_random,
    gen_series_parallel,
    gen_theta,
    gen_tight_a,
    gen_tight_b,
)
from wmlq.greedy import solve_greedy
from wmlq.oracle import OracleCaps, brute_force
from wmlq.twdp import dp_solve

BIG = OracleCaps(max_posts=12, max_edges=64)


def edges_of(g):
    return sorted((min(u, v), max(u, v)) for u, v in nx.convert_node_labels_to_integers(g).edges())


def mis_size(n, edges):
    best = 0
    for mask in range(1 << n):
        if all(not (mask >> u & 1 and mask >> v & 1) for u, v in edges):
            best = max(best, bin(mask).count("1"))
    return best


def can_orient(n, edges, weights, bound):
    for dirs in itertools.product((0, 1), repeat=len(edges)):
        out = [0] * n
        for (u, v), d, w in zip(edges, dirs, weights):
            out[u if d == 0 else v] += w
        if max(out, default=0) <= bound:
            return True
    return False


# -- reductions ---------------------------------------------------------------------------

def test_mis_cubic_shape():
    inst = gen_mis_cubic(4, edges_of(nx.complete_graph(4)))
    assert inst.num_posts == 4 and inst.num_applicants == 6
    assert all(inst.quota(p) == (3, 3) and inst.post_degree(p) == 3 for p in range(1, 5))
    assert all(len(adj) == 2 for adj in inst.applicant_adjacency[1:])


@pytest.mark.parametrize("graph, mis", [(nx.complete_graph(4), 1),
                                        (nx.complete_bipartite_graph(3, 3), 3)])
def test_mis_cubic_examples(graph, mis):
    edges = edges_of(graph)
    n = graph.number_of_nodes()
    assert mis_size(n, edges) == mis
    assert brute_force(gen_mis_cubic(n, edges), BIG).objective == 3 * mis


def test_mis_cubic_on_larger_cubic_graphs():
    # dp is exact and independent of the oracle; these exceed the oracle caps
    graphs = [nx.circular_ladder_graph(3), nx.cubical_graph(), nx.circular_ladder_graph(4),
              nx.petersen_graph(), nx.circular_ladder_graph(5)]
    graphs += [nx.random_regular_graph(3, n, seed=s) for n in (8, 10) for s in range(4)]
    for g in graphs:
        n, edges = g.number_of_nodes(), edges_of(g)
        value = dp_solve(simplify(gen_mis_cubic(n, edges))).objective
        assert value % 3 == 0 and value == 3 * mis_size(n, edges)


def test_mis_cubic_rejects_non_cubic():
    with pytest.raises(ValueError):
        gen_mis_cubic(3, [(0, 1), (1, 2)])


def test_inapprox_examples():
    one = gen_inapprox(2, [(0, 1)])
    assert one.num_posts == 2 and one.num_applicants == 3
    assert all(one.quota(p) == (2, 2) for p in (1, 2))
    assert brute_force(one).objective == 2
    assert brute_force(gen_inapprox(3, [])).objective == 9


def test_inapprox_small_graphs():
    for g in nx.graph_atlas_g()[1:19]:  # all graphs with at most 4 vertices
        n, edges = g.number_of_nodes(), edges_of(g)
        inst = gen_inapprox(n, edges)
        assert inst.num_applicants == n * n - len(edges)
        value = brute_force(inst, OracleCaps(max_edges=10**3, max_enum_edges=0)).objective
        assert value % n == 0 and value == n * mis_size(n, edges)


def test_outdegree_examples():
    tri = [(0, 1), (1, 2), (0, 2)]
    full = gen_outdegree(3, tri, [1, 1, 1], 1)
    assert full.num_applicants == 9
    assert dp_solve(simplify(full)).objective == 9
    assert dp_solve(simplify(gen_outdegree(3, tri, [1, 1, 1], 0))).objective < 9
    edge = gen_outdegree(2, [(0, 1)], [2], 2)
    assert edge.num_applicants == 5
    assert edge.quota(3) == edge.quota(4) == (3, 3)
    assert brute_force(edge, BIG).objective == 5


def test_outdegree_matches_orientation_search():
    checked = 0
    for g in nx.graph_atlas_g()[1:]:
        if g.number_of_edges() > 4 or g.number_of_edges() == 0 or g.number_of_nodes() > 5:
            continue
        n, edges = g.number_of_nodes(), edges_of(g)
        for weights in itertools.product((1, 2), repeat=len(edges)):
            for bound in range(0, 3):
                inst = gen_outdegree(n, edges, weights, bound)
                served = dp_solve(simplify(inst)).objective == inst.num_applicants
                assert served == can_orient(n, edges, weights, bound)
                checked += 1
    assert checked > 100


def test_outdegree_rejects_bad_weights():
    with pytest.raises(ValueError):
        gen_outdegree(2, [(0, 1)], [0], 1)
    with pytest.raises(ValueError):
        gen_outdegree(2, [(0, 1)], [50], 1, max_applicants=10)


# -- tightness -----------------------------------------------------------------------------

def test_tight_a_counts_and_ratio():
    for k in range(1, 5):
        inst = gen_tight_a(k)
        assert inst.num_posts == k + 1 and inst.num_applicants == k * (k + 1)
        opt = brute_force(inst, OracleCaps(max_edges=64)).objective
        assert opt == k * (k + 1)
        assert solve_greedy(inst).objective * (k + 1) == opt


def test_tight_b_values():
    assert brute_force(gen_tight_b(5, 1000), BIG).objective == 5000
    assert brute_force(gen_tight_b(2, 2)).objective == 4


# -- random families -------------------------------------------------------------------------

def test_random_is_deterministic():
    assert gen_random(1, 8, 4).edges == gen_random(1, 8, 4).edges
    assert gen_random(1, 8, 4) == gen_random(1, 8, 4)


def test_random_rejects_inconsistent_ranges():
    with pytest.raises(ValueError):
        gen_random(0, 3, 3, degree=(3, 1))
    with pytest.raises(ValueError):
        gen_random(0, 3, 2, degree=(3, 3))


def test_unit_quotas_reduce_to_assignment():
    for seed in range(40):
        inst = gen_random(seed, 9, 6, lower=(1, 1), upper=(1, 1), degree=(1, 4))
        cost = np.zeros((inst.num_applicants, inst.num_posts))
        for a, p, w in inst.edges:
            cost[a - 1, p - 1] = w
        rows, cols = linear_sum_assignment(cost, maximize=True)
        expected = int(cost[rows, cols].sum())
        assert dp_solve(simplify(inst)).objective == expected


def test_every_generator_output_validates():
    outputs = [gen_mis_cubic(4, edges_of(nx.complete_graph(4))), gen_inapprox(3, [(0, 1)]),
               gen_outdegree(3, [(0, 1), (1, 2)], [1, 2], 1), gen_tight_a(3), gen_tight_b(3, 7),
               gen_theta(2, 3), gen_theta(2, 3, seed=5), gen_hub3(4, 1, 2),
               gen_series_parallel(1, 30)]
    outputs += [gen_random(s, 10, 5, degree_side=side) for s in range(20)
                for side in ("applicant", "post")]
    for inst in outputs:
        assert validate(inst) == []
        assert inst.comments
