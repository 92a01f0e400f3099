import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mpgsd import (AcoParams, ContractError, InstanceSpec, Partition, ProblemGraph,
                   generate, global_update, greedy_solve, init_pheromone,
                   init_state, is_feasible, local_update, objective, quality, solve,
                   transition_select)
from mpgsd import _kernels


def test_default_params():
    p = AcoParams()
    assert (p.ants, p.iterations, p.p, p.phi, p.q0) == (10, 150, 0.1, 0.9, 0.1)


@pytest.mark.parametrize("kw", [{"ants": 0}, {"p": 0.0}, {"phi": 1.0}, {"q0": 1.5}])
def test_param_ranges(kw):
    with pytest.raises(ValueError):
        AcoParams(**kw)


def test_quality(g1):
    full = Partition.from_mapping(g1, {1: 0, 2: 0})
    assert quality(g1, full) == 1.0
    g = ProblemGraph([10, -7, -1], [(0, 1), (0, 2)])
    assert quality(g, Partition.from_mapping(g, {1: 0})) == 0.25


def test_init_pheromone(g1):
    tau = init_pheromone(g1)
    assert tau.shape == (4, 1)
    assert (tau == 1.0).all()
    nothing = ProblemGraph([9, -10, -11], [(0, 1), (1, 2)])
    assert np.allclose(init_pheromone(nothing), 0.1)


def test_transition_exploit(g1):
    state = init_state(g1)
    tau = init_pheromone(g1)
    rng = np.random.default_rng(0)
    assert transition_select(state, g1, tau, 0, 0.9, rng, q0=0.1) == 1


def test_transition_single_candidate(g1):
    state = init_state(g1)
    tau = init_pheromone(g1)
    rng = np.random.default_rng(0)
    state.frontier[0] = {2}
    for q in (0.01, 0.5, 0.99):
        assert transition_select(state, g1, tau, 0, q, rng) == 2


def test_transition_explore_frequencies(g1):
    state = init_state(g1)
    tau = init_pheromone(g1)
    rng = np.random.default_rng(12345)
    n = 100_000
    picks = [transition_select(state, g1, tau, 0, 0.05, rng, q0=0.1) for _ in range(n)]
    assert abs(picks.count(1) / n - 0.6) <= 0.01
    assert abs(picks.count(2) / n - 0.4) <= 0.01


def test_transition_uses_pheromone(g1):
    state = init_state(g1)
    tau = init_pheromone(g1)
    tau[2, 0] = 10.0
    rng = np.random.default_rng(0)
    assert transition_select(state, g1, tau, 0, 0.9, rng) == 2


def test_transition_empty(g1):
    state = init_state(g1)
    state.frontier[0] = set()
    with pytest.raises(ContractError):
        transition_select(state, g1, init_pheromone(g1), 0, 0.5, np.random.default_rng())


def test_select_index_roulette_boundaries():
    w = np.array([3.0, 2.0])
    assert _kernels.select_index(w, 0.0, 0.1, 0.0) == 0
    assert _kernels.select_index(w, 0.0, 0.1, 0.5999) == 0
    assert _kernels.select_index(w, 0.0, 0.1, 0.6) == 1
    assert _kernels.select_index(w, 0.0, 0.1, 0.9999999) == 1
    assert _kernels.select_index(np.zeros(4), 0.0, 0.1, 0.5) == 2  # uniform fallback


def test_local_update(g1):
    tau = np.full((4, 1), 0.5)
    pi = Partition.from_mapping(g1, {1: 0})
    local_update(tau, g1, pi, 0.9)
    assert tau[1, 0] == 0.45
    assert tau[2, 0] == 0.5 and tau[3, 0] == 0.5
    local_update(tau, g1, pi, 0.9)
    assert tau[1, 0] == pytest.approx(0.405, abs=1e-15)
    before = tau.copy()
    local_update(tau, g1, Partition.empty(g1), 0.9)
    assert np.array_equal(tau, before)


def test_global_update(g1):
    tau = np.full((4, 1), 0.5)
    best = Partition.from_mapping(g1, {1: 0, 2: 0})  # quality 1.0
    global_update(tau, best, g1, 0.1)
    assert tau[1, 0] == 0.55 and tau[2, 0] == 0.55
    assert tau[3, 0] == 0.5
    fixed = np.full((4, 1), 1.0)
    global_update(fixed, best, g1, 0.1)
    assert (fixed == 1.0).all()
    prev = 0.5
    for _ in range(50):
        global_update(tau, best, g1, 0.1)
        assert prev <= tau[1, 0] <= 1.0
        prev = tau[1, 0]


def test_solve_g1(g1):
    res = solve(g1)
    assert res.best_objective == 5
    assert res.history == [5] * 150
    assert res.solutions_generated == 1500


def test_solve_zero_iterations(t1):
    res = solve(t1, AcoParams(iterations=0))
    assert res.best == greedy_solve(t1)
    assert res.history == [] and res.solutions_generated == 0


def test_solve_deterministic():
    g = generate(InstanceSpec(5, 25, "general", seed=3))
    for corr in (False, True):
        a = solve(g, AcoParams(iterations=20, seed=7, use_correction=corr))
        b = solve(g, AcoParams(iterations=20, seed=7, use_correction=corr))
        assert a.best == b.best and a.history == b.history


def test_exploit_replays_greedy_when_subgraph_matches():
    # with one supply the random subgraph pick always matches the greedy choice
    g = generate(InstanceSpec(1, 15, "general", seed=4))
    tau = init_pheromone(g)
    rand = np.random.default_rng(1).random((g.n_demand, 3))
    assign = _kernels.grow(g.indptr, g.indices, g.values, g.supply_indices, tau, rand,
                           0.0, False)
    assert np.array_equal(assign, greedy_solve(g).assignment)


specs = st.builds(InstanceSpec, n_supply=st.integers(1, 5), n_demand=st.integers(5, 30),
                  kind=st.sampled_from(["tree", "general"]), seed=st.integers(0, 2**32))


@settings(max_examples=30, deadline=None)
@given(specs, st.integers(0, 2**32), st.booleans())
def test_solve_invariants(spec, seed, corr):
    g = generate(spec)
    res = solve(g, AcoParams(ants=4, iterations=15, seed=seed, use_correction=corr))
    assert all(a <= b for a, b in zip(res.history, res.history[1:]))
    assert res.history[-1] == res.best_objective == objective(g, res.best)
    assert res.best_objective >= objective(g, greedy_solve(g))
    assert res.best_objective <= g.optimum
    assert is_feasible(g, res.best).ok


@settings(max_examples=30, deadline=None)
@given(specs, st.integers(0, 2**32), st.floats(0.0, 1.0))
def test_every_ant_solution_feasible_and_maximal(spec, seed, q0):
    g = generate(spec)
    tau = np.random.default_rng(seed).uniform(0.01, 1.0, size=(g.n_vertices, g.n_supply))
    rand = np.random.default_rng(seed + 1).random((g.n_demand, 3))
    assign = _kernels.grow(g.indptr, g.indices, g.values, g.supply_indices, tau, rand,
                           q0, False)
    pi = Partition(g, assign)
    assert is_feasible(g, pi).ok
    # construction stops only when no subgraph can grow
    sur = [int(g.values[pi.assignment == i].sum()) for i in range(g.n_supply)]
    for u in np.flatnonzero(pi.assignment == -1):
        for w in g.neighbors(u):
            t = pi.assignment[w]
            assert t < 0 or -g.values[u] > sur[t]
