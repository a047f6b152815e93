import pytest

from bnsynth import InfluenceGraph, Observation, SynthesisProblem, check_problem
from bnsynth.oracle import (
    OracleBudget,
    OracleBudgetError,
    check_problem_oracle,
    reach_oracle_all_L,
    reachable_set_oracle,
    synth_oracle,
    trap_spaces_oracle,
)


def test_oracle_worked_examples(net_f, net_g):
    assert reach_oracle_all_L(net_f, "000", "111")
    assert reach_oracle_all_L(net_f, "110", "000")
    assert not reach_oracle_all_L(net_f, "010", "100")
    assert reach_oracle_all_L(net_g, "011", "000")
    assert not reach_oracle_all_L(net_g, "001", "010")
    assert reachable_set_oracle(net_f, "011") == {"011"}
    assert [str(t) for t in trap_spaces_oracle(net_f)] == ["011", "100"]
    assert [str(t) for t in trap_spaces_oracle(net_g)] == ["1**"]


def test_oracle_budget(net_f):
    with pytest.raises(OracleBudgetError):
        trap_spaces_oracle(net_f, OracleBudget(max_dimension=2))
    g = InfluenceGraph(3, {(j, i) for j in range(3) for i in range(3)})
    with pytest.raises(OracleBudgetError):
        synth_oracle(SynthesisProblem(g), OracleBudget(max_candidates=100))


def test_check_problem_oracle_matches_engine(net_f):
    g = InfluenceGraph(3, {(1, 2)}, {(1, 0), (0, 1), (0, 2)})
    obs = [Observation("a", {0: 0, 1: 0}), Observation("b", {0: 1, 1: 1}), Observation("c", {})]
    for pr, nr, fp in [([("a", "b")], [], []), ([], [("b", "c")], ["c"]), ([], [], ["a"])]:
        p = SynthesisProblem(g, obs, pr=pr, nr=nr, fp=fp)
        expected = check_problem_oracle(net_f, p)
        got = check_problem(net_f, p)
        assert (expected is None) == (got is None)


def test_synth_oracle_unconstrained_is_whole_space():
    g = InfluenceGraph(2, {(0, 1)}, {(1, 0)})
    sols = synth_oracle(SynthesisProblem(g))
    assert len(sols) == 3 * 3
