import pytest
from hypothesis import given, settings, strategies as st

from mpgsd import (ContractError, InstanceSpec, InvalidInstanceError, Partition,
                   ProblemGraph, candidates, extend, generate, greedy_solve, init_state,
                   is_feasible, neighbors, objective, subgraph_surplus)
from mpgsd.exact import exact_optimum

from oracles import brute_force


def reference_greedy(g):
    """Greedy built from the public incremental operations."""
    state = init_state(g)
    while True:
        live = [i for i in range(g.n_supply) if candidates(state, g, i)]
        if not live:
            return state.partial
        i = max(live, key=lambda j: (state.surplus[j], -j))
        v = max(candidates(state, g, i), key=lambda u: (-g.values[u], -u))
        extend(state, g, i, v)


def test_neighbors(g1):
    assert neighbors(g1, 0) == {1, 2}
    assert neighbors(g1, 3) == {1}
    iso = ProblemGraph([2, -1, -1], [(0, 1)])
    assert neighbors(iso, 2) == set()


def test_init_state(g1):
    st_ = init_state(g1)
    assert st_.surplus.tolist() == [5]
    assert st_.frontier[0] == {1, 2}

    two = ProblemGraph([3, 4, -1, -2], [(0, 2), (1, 3)])
    s2 = init_state(two)
    assert s2.frontier == [{2}, {3}]

    only_supply = ProblemGraph([3, 4, -1], [(0, 1), (1, 2)])
    assert init_state(only_supply).frontier[0] == set()

    with pytest.raises(InvalidInstanceError):
        init_state(ProblemGraph([-1, -2], [(0, 1)]))


def test_candidates_and_extend(g1):
    state = init_state(g1)
    assert candidates(state, g1, 0) == {1, 2}
    extend(state, g1, 0, 1)
    assert state.surplus[0] == 2
    assert {2, 3} <= state.frontier[0]
    assert candidates(state, g1, 0) == {2}
    assert is_feasible(g1, state.partial).ok
    extend(state, g1, 0, 2)
    assert state.surplus[0] == 0
    assert candidates(state, g1, 0) == set()


def test_extend_rejects_non_candidate(g1):
    state = init_state(g1)
    with pytest.raises(ContractError):
        extend(state, g1, 0, 3)


def test_greedy_examples(g1, t1):
    pi = greedy_solve(g1)
    assert pi == Partition.from_mapping(g1, {1: 0, 2: 0})
    assert objective(g1, pi) == 5

    pi = greedy_solve(t1)
    assert pi == Partition.from_mapping(t1, {3: 0})
    assert objective(t1, pi) == 5
    assert brute_force(t1.values.tolist(), t1.edges.tolist())[0] == 5


def test_greedy_nothing_fits():
    g = ProblemGraph([2, 3, -4, -5, -6], [(0, 2), (1, 3), (2, 4)])
    pi = greedy_solve(g)
    assert objective(g, pi) == 0
    assert (pi.assignment[g.demand_indices] == -1).all()


def test_greedy_ties_lowest_index():
    # two equal supplies, equal demands: subgraph 0 and vertex 2 go first
    g = ProblemGraph([4, 4, -4, -4], [(0, 2), (0, 3), (1, 2), (1, 3)])
    pi = greedy_solve(g)
    assert pi.assignment.tolist() == [0, 1, 0, 1]


instance_specs = st.builds(
    InstanceSpec,
    n_supply=st.integers(1, 4),
    n_demand=st.integers(4, 20),
    kind=st.sampled_from(["tree", "general"]),
    seed=st.integers(0, 2**32),
)


@settings(max_examples=80, deadline=None)
@given(instance_specs)
def test_kernel_greedy_matches_reference(spec):
    g = generate(spec)
    a, b = greedy_solve(g), greedy_solve(g)
    assert a == b
    assert a == reference_greedy(g)
    assert is_feasible(g, a).ok


@settings(max_examples=60, deadline=None)
@given(instance_specs, st.randoms(use_true_random=False))
def test_incremental_bookkeeping(spec, rnd):
    g = generate(spec)
    state = init_state(g)
    while True:
        live = [i for i in range(g.n_supply) if candidates(state, g, i)]
        if not live:
            break
        i = rnd.choice(live)
        extend(state, g, i, rnd.choice(sorted(candidates(state, g, i))))
        pi = state.partial
        assert is_feasible(g, pi).ok
        for j in range(g.n_supply):
            assert state.surplus[j] == subgraph_surplus(g, pi, j)
            members = set(pi.members(j).tolist())
            adjacent = {int(u) for m in members for u in g.neighbors(m)}
            fresh = {u for u in adjacent - members
                     if g.values[u] < 0 and pi.assignment[u] == -1}
            assert {u for u in state.frontier[j] if pi.assignment[u] == -1} == fresh
            assert candidates(state, g, j) == {
                u for u in fresh if -g.values[u] <= state.surplus[j]}


@settings(max_examples=40, deadline=None)
@given(st.builds(InstanceSpec, n_supply=st.integers(1, 3), n_demand=st.integers(3, 9),
                 kind=st.sampled_from(["tree", "general"]), seed=st.integers(0, 2**32)))
def test_greedy_below_exact(spec):
    g = generate(spec)
    res = exact_optimum(g)
    assert res.decided
    assert objective(g, greedy_solve(g)) <= res.optimum
