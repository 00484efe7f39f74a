import pytest
from hypothesis import given, settings

from conftest import exhaustive_optimum, instances
from wmlq.core import Infeasible, Instance, PreconditionError, evaluate, simplify
from wmlq.gen import gen_random, gen_series_parallel
from wmlq.oracle import OracleCaps, brute_force, brute_force_forced_open
from wmlq.special import (
    AlgorithmChoice,
    build_u2_graph,
    degree2_helper_graph,
    solve,
    solve_all_open,
    solve_degree2_posts,
    solve_u2,
)
from wmlq.twdp import dp_solve


# -- posts of degree two -------------------------------------------------------------

def test_degree2_contracts_full_pair():
    inst = Instance.from_quotas(2, [(2, 2)], [(1, 1, 2), (2, 1, 3)])
    graph, origin = degree2_helper_graph(inst)
    assert (0, 1, 5) in graph.edges
    res = solve_degree2_posts(inst)
    assert res.objective == 5 and res.assignment == {(1, 1), (2, 1)}


def test_degree2_splits_flexible_post():
    inst = Instance.from_quotas(2, [(0, 2)], [(1, 1, 4), (2, 1, 6)])
    assert solve_degree2_posts(inst).objective == 10


def test_degree2_rejects_high_degree():
    inst = Instance.from_quotas(3, [(1, 3)], [(a, 1, 1) for a in (1, 2, 3)])
    with pytest.raises(PreconditionError):
        solve_degree2_posts(inst)


@settings(max_examples=300)
@given(instances(max_applicants=6, max_posts=4, max_edges=8).filter(
    lambda i: i.max_post_degree <= 2))
def test_degree2_matches_exhaustive(inst):
    res = solve_degree2_posts(inst)
    assert evaluate(inst, res.assignment) == res.objective == exhaustive_optimum(inst)


# -- upper quotas at most two ---------------------------------------------------------

def _figure_instance():
    edges = [(1, 1), (2, 1), (3, 1), (2, 2), (3, 3), (2, 3), (4, 3),
             (4, 4), (6, 4), (4, 5), (3, 5), (5, 5), (6, 5)]
    quotas = [(2, 2), (1, 1), (1, 1), (2, 2), (2, 2)]
    return Instance.from_quotas(6, quotas, [(a, p, 1) for a, p in edges])


def test_u2_construction_shape():
    c = build_u2_graph(_figure_instance())
    name = c.labels
    nbrs = {name[v]: set() for v in range(c.graph.num_vertices)}
    for u, v, w in c.graph.edges:
        nbrs[name[u]].add(name[v])
        nbrs[name[v]].add(name[u])
    assert {f"a{i}" for i in range(1, 7)} <= nbrs["p_d"]
    for q in (2, 3):
        assert nbrs[f"q{q}^1"] == {f"p{q}", "p_d"}
    for q in (1, 4, 5):
        assert nbrs[f"q{q}^1"] == {f"p{q}", f"q{q}^2"}
        assert nbrs[f"q{q}^2"] == {f"p{q}", f"q{q}^1"}
    # ceil((6 applicants + 2 single posts) / 2) hub triangles
    assert sum(1 for label in nbrs if label.startswith("t") and label.endswith("^1")) == 4
    assert c.hub_targets == (8, 9)
    assert all(w == 0 for k, (u, v, w) in enumerate(c.graph.edges) if k not in c.pairs_of_edge)


def test_u2_figure_instance_exact():
    inst = _figure_instance()
    assert solve_u2(inst).objective == exhaustive_optimum(inst)


def test_u2_unreachable_lower_quota():
    inst = Instance.from_quotas(1, [(2, 2)], [(1, 1, 5)])
    assert solve_u2(inst).objective == 0


def test_u2_rejects_large_quota():
    inst = Instance.from_quotas(3, [(1, 3)], [(a, 1, 1) for a in (1, 2, 3)])
    with pytest.raises(PreconditionError):
        solve_u2(inst)


@settings(max_examples=300)
@given(instances(max_applicants=6, max_posts=3, max_upper=2, max_edges=10))
def test_u2_matches_exhaustive(inst):
    res = solve_u2(inst)
    assert evaluate(inst, res.assignment) == res.objective == exhaustive_optimum(inst)


def test_exact_paths_agree():
    checked = 0
    for seed in range(80):
        inst = gen_random(seed, 6, 5, degree=(1, 2), upper=(1, 2), degree_side="post")
        expected = brute_force(inst).objective
        assert solve_u2(inst).objective == expected
        assert solve_degree2_posts(inst).objective == expected
        assert dp_solve(simplify(inst)).objective == expected
        checked += 1
    assert checked == 80


# -- all posts open ---------------------------------------------------------------------

def test_all_open_degree_deficit():
    with pytest.raises(Infeasible):
        solve_all_open(Instance.from_quotas(1, [(2, 3)], [(1, 1, 1)]))


def test_all_open_counting():
    inst = Instance.from_quotas(1, [(0, 1), (0, 1)], [(1, 1, 5), (1, 2, 3)])
    with pytest.raises(Infeasible):
        solve_all_open(inst)


def test_all_open_matches_forced_oracle():
    for seed in range(60):
        inst = gen_random(seed, 7, 3, lower=(1, 1), upper=(1, 3), degree=(1, 3))
        posts = range(1, inst.num_posts + 1)
        try:
            expected = brute_force_forced_open(inst, posts)[0]
        except Infeasible:
            with pytest.raises(Infeasible):
                solve_all_open(inst)
            continue
        res = solve_all_open(inst)
        assert res.objective == expected == evaluate(inst, res.assignment)


@settings(max_examples=200)
@given(instances(max_applicants=6, max_posts=3, max_edges=10))
def test_all_open_never_beats_optimum(inst):
    opt = brute_force(inst)
    try:
        res = solve_all_open(inst)
    except Infeasible:
        return
    assert res.objective <= opt.objective
    opened = {p for _, p in opt.assignment}
    if opened == {p for p in range(1, inst.num_posts + 1) if inst.upper[p - 1] > 0}:
        assert res.objective == opt.objective


# -- dispatcher -------------------------------------------------------------------------

def test_choice_validation():
    with pytest.raises(ValueError):
        AlgorithmChoice("fastest")
    with pytest.raises(ValueError):
        AlgorithmChoice("auto", cell_budget=0)


def test_auto_routes_u2():
    inst = gen_random(4, 8, 4, upper=(1, 2))
    res = solve(inst)
    assert res.branch == "u2" and res.exact
    assert res.objective == brute_force(inst).objective


def test_auto_routes_dp_on_series_parallel():
    inst = gen_series_parallel(2, 90, u_max=3)
    assert inst.num_applicants + inst.num_posts >= 300
    res = solve(inst)
    assert res.branch == "twdp" and res.exact and res.width <= 2
    assert evaluate(inst, res.assignment) == res.objective


def test_auto_falls_back_to_greedy_on_dense_instance():
    inst = gen_random(0, 80, 60, degree=(40, 50), upper=(3, 4))
    res = solve(inst)
    assert res.branch == "greedy" and not res.exact
    assert res.guarantee == min(60, 80, simplify(inst).u_max + 1)
    assert evaluate(inst, res.assignment) == res.objective


@pytest.mark.parametrize("variant", ["greedy", "twdp", "u2", "degree2", "oracle", "auto"])
def test_explicit_variants_return_original_post_ids(variant):
    # post 1 is deleted by simplification, so ids must be lifted back
    inst = Instance.from_quotas(2, [(3, 3), (1, 2)], [(1, 1, 9), (1, 2, 4), (2, 2, 5)])
    res = solve(inst, AlgorithmChoice(variant, oracle_caps=OracleCaps()))
    assert res.assignment == {(1, 2), (2, 2)} and res.objective == 9
