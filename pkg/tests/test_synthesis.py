import random

import pytest
from hypothesis import given, settings, strategies as st

from bnsynth import (
    BooleanNetwork,
    CapacityError,
    InfluenceGraph,
    Observation,
    ProblemError,
    Solution,
    SynthesisProblem,
    check_problem,
    count_solutions,
    enumerate_solutions,
    first_solution,
    influence_graph_of,
    is_fixpoint,
    is_reachable,
    is_subgraph,
    search_space_size,
    synthesize,
    trap_component_fixed,
    verify_solution,
)
from bnsynth.candidates import enumerate_local_candidates
from bnsynth.instances import differentiation_property, random_problem
from bnsynth.oracle import synth_oracle

from conftest import dnf

THREE_NODE_GRAPH = InfluenceGraph(3, {(1, 2)}, {(1, 0), (0, 1), (0, 2)}, ("x1", "x2", "x3"))


def _problem(seed, n=3, **kw):
    return random_problem(random.Random(seed), n, **kw)


def _solution_holds(problem, sol):
    """Independent re-check of a witness against the constraint definitions."""
    f, w = sol.network, sol.witness
    for o in problem.observations:
        assert all(w[o.name][i] == v for i, v in o.values.items())
    for a, b in problem.pr:
        assert is_reachable(f, w[a], w[b])
    for a, b in problem.nr:
        assert not is_reachable(f, w[a], w[b])
    for m in problem.fp:
        assert is_fixpoint(f, w[m])
    for m, i in problem.tp:
        assert trap_component_fixed(f, w[m], i)
    assert is_subgraph(influence_graph_of(f), problem.graph)


def test_net_f_is_a_solution_of_its_own_observations(net_f):
    obs = [Observation("s", {0: 0, 1: 0, 2: 0}), Observation("t", {0: 1, 1: 1, 2: 1}),
           Observation("u", {0: 0, 1: 1, 2: 0}), Observation("v", {0: 1, 1: 0, 2: 0})]
    p = SynthesisProblem(THREE_NODE_GRAPH, obs, pr=[("s", "t")], nr=[("u", "v")], fp=["v"])
    sols = list(enumerate_solutions(p))
    assert net_f in {s.network for s in sols}
    assert {s.network for s in sols} == synth_oracle(p)


def test_empty_constraints_give_whole_space():
    p = SynthesisProblem(THREE_NODE_GRAPH)
    assert count_solutions(p) == search_space_size(p) == 3 * 3 * 6


def test_enumeration_order_is_lexicographic():
    p = SynthesisProblem(THREE_NODE_GRAPH)
    per_node = [list(enumerate_local_candidates(i, THREE_NODE_GRAPH)) for i in range(3)]
    keys = [tuple(per_node[i].index(s.network[i]) for i in range(3)) for s in enumerate_solutions(p)]
    assert keys == sorted(keys)


@pytest.mark.parametrize("seed", range(12))
def test_engine_matches_oracle(seed):
    p = _problem(seed)
    sols = list(enumerate_solutions(p))
    nets = [s.network for s in sols]
    assert len(nets) == len(set(nets))
    assert set(nets) == synth_oracle(p)
    for s in sols:
        assert verify_solution(p, s)
        _solution_holds(p, s)


@pytest.mark.parametrize("seed", range(6))
def test_parallel_and_sorted_match(seed):
    p = _problem(seed, n=4, max_clauses=2)
    serial = [s.network for s in enumerate_solutions(p)]
    par = [s.network for s in enumerate_solutions(p, jobs=2, sort=True)]
    assert par == serial
    assert count_solutions(p, jobs=2) == len(serial)


@pytest.mark.parametrize("seed", range(20))
def test_first_solution_engines_agree(seed):
    p = _problem(seed, n=4, max_clauses=2)
    native = first_solution(p, engine="native")
    sat = first_solution(p, engine="sat")
    assert (native is None) == (sat is None)
    everything = list(enumerate_solutions(p, limit=1))
    assert (native.network if native else None) == (everything[0].network if everything else None)
    if sat is not None:
        assert verify_solution(p, sat)
        _solution_holds(p, sat)


def test_limit_and_modes():
    p = SynthesisProblem(THREE_NODE_GRAPH)
    assert len(list(synthesize(p, limit=5))) == 5
    assert synthesize(p, mode="count") == 54
    assert isinstance(synthesize(p, mode="first"), Solution)
    with pytest.raises(ValueError):
        synthesize(p, mode="bogus")
    with pytest.raises(ValueError):
        first_solution(p, engine="bogus")


def test_time_budget_raises_capacity_error():
    g = InfluenceGraph(5, {(j, i) for j in range(5) for i in range(5)})
    p = differentiation_property(g)
    with pytest.raises(CapacityError):
        count_solutions(p, time_budget=0.01)


def test_differentiation_property_single_node_unsat():
    g = InfluenceGraph(1, {(0, 0)}, {(0, 0)})
    p = differentiation_property(g)
    assert count_solutions(p) == 0
    assert first_solution(p, engine="sat") is None


def test_differentiation_property_on_three_node_graph():
    # three distinct fixpoints on three nodes with this graph: checked against the oracle
    p = differentiation_property(THREE_NODE_GRAPH)
    assert {s.network for s in enumerate_solutions(p)} == synth_oracle(p)


def test_check_problem_rejects_foreign_graph(net_f):
    p = SynthesisProblem(InfluenceGraph(3, {(1, 2)}, {(1, 0)}))
    with pytest.raises(ProblemError) as e:
        check_problem(net_f, p)
    assert e.value.code == "graph"
    with pytest.raises(ProblemError) as e:
        check_problem(BooleanNetwork([dnf(0)]), p)
    assert e.value.code == "dimension"


def test_verify_solution_rejects_bad_witness(net_f):
    obs = [Observation("s", {}), Observation("t", {})]
    p = SynthesisProblem(THREE_NODE_GRAPH, obs, fp=["s", "t"], distinct=[("s", "t")])
    w = check_problem(net_f, p)
    assert w is not None and {str(w["s"]), str(w["t"])} == {"011", "100"}
    assert verify_solution(p, Solution(net_f, w))
    assert not verify_solution(p, Solution(net_f, {"s": w["s"], "t": w["s"]}))


def test_distinct_same_name_is_unsat():
    p = SynthesisProblem(THREE_NODE_GRAPH, [Observation("s", {})], distinct=[("s", "s")])
    assert count_solutions(p) == 0


def test_problem_validation_codes():
    with pytest.raises(ProblemError) as e:
        SynthesisProblem(THREE_NODE_GRAPH, [Observation("a", {}), Observation("a", {})])
    assert e.value.code == "duplicate-observation"
    with pytest.raises(ProblemError) as e:
        SynthesisProblem(THREE_NODE_GRAPH, [Observation("a", {})], pr=[("a", "b")])
    assert e.value.code == "unknown-reference"
    with pytest.raises(ProblemError) as e:
        SynthesisProblem(THREE_NODE_GRAPH, [Observation("a", {0: 2})])
    assert e.value.code == "bad-value"


# ---- order properties ----

_KINDS = ("pr", "nr", "fp", "tp")


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from(_KINDS))
def test_adding_a_constraint_never_adds_solutions(seed, dropped):
    p = _problem(seed, n=3)
    loose = p.with_constraints(**{dropped: ()})
    tight = {s.network for s in enumerate_solutions(p)}
    assert tight <= {s.network for s in enumerate_solutions(loose)}


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_fixpoint_implies_trap_fixation(seed):
    p = _problem(seed, n=3, kinds=("pr", "nr", "fp"))
    if not p.fp:
        p = p.with_constraints(fp=(p.observations[0].name,))
    as_tp = p.with_constraints(fp=(), tp=tuple((m, i) for m in p.fp for i in range(p.n)))
    fp_sols = {s.network for s in enumerate_solutions(p)}
    assert fp_sols <= {s.network for s in enumerate_solutions(as_tp)}
