"""Benchmark instances: scale-free influence graphs, the two-stage
differentiation property, the CNS case-study constraints, and random
small problems for cross-checking against the oracle."""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .candidates import enumerate_local_candidates
from .core import BooleanNetwork, InfluenceGraph
from .problem import Observation, ProblemError, SynthesisProblem
from .semantics import CapacityError


@dataclass(frozen=True)
class GeneratorParams:
    n: int
    d_max: int
    seed: int = 0
    sign_bias: float = 0.5
    mean_in_degree: float = 2.0

    def validate(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if not 1 <= self.d_max <= self.n:
            raise ValueError("d_max must be within 1..n")
        if not 0.0 <= self.sign_bias <= 1.0:
            raise ValueError("sign_bias must be a probability")
        if self.mean_in_degree <= 0:
            raise ValueError("mean_in_degree must be positive")


def gen_scale_free(params: GeneratorParams) -> InfluenceGraph:
    """Random directed graph with a heavy-tailed in-degree distribution.

    Edges are added one at a time: the target is drawn with probability
    proportional to (in-degree + 1) among nodes still below ``d_max``
    (preferential attachment), the source uniformly among the other nodes
    not yet regulating it. Each edge is positive with probability
    ``sign_bias``.
    """
    params.validate()
    n, d_max = params.n, params.d_max
    rng = np.random.default_rng(params.seed)
    target_edges = min(int(round(params.mean_in_degree * n)), n * min(d_max, n - 1))
    regulators = [set() for _ in range(n)]
    plus, minus = set(), set()
    added = 0
    while added < target_edges:
        indeg = np.array([len(r) for r in regulators], dtype=float)
        open_ = (indeg < d_max) & (indeg < n - 1)
        if not open_.any():
            break
        weights = np.where(open_, indeg + 1.0, 0.0)
        i = int(rng.choice(n, p=weights / weights.sum()))
        sources = [j for j in range(n) if j != i and j not in regulators[i]]
        j = int(sources[rng.integers(len(sources))])
        regulators[i].add(j)
        (plus if rng.random() < params.sign_bias else minus).add((j, i))
        added += 1
    names = tuple(f"n{i + 1}" for i in range(n))
    return InfluenceGraph(n, frozenset(plus), frozenset(minus), names)


def differentiation_property(graph: InfluenceGraph, max_clauses="max") -> SynthesisProblem:
    """Generic two-stage differentiation constraints over 5 empty observations.

    Observation 1 reaches 2 and 3, observation 2 reaches 4 and 5 but not 3,
    and 3, 4, 5 are pairwise distinct fixpoints.
    """
    obs = [Observation(str(k), {}) for k in range(1, 6)]
    return SynthesisProblem(
        graph,
        obs,
        pr=(("1", "2"), ("1", "3"), ("2", "4"), ("2", "5")),
        nr=(("2", "3"),),
        fp=("3", "4", "5"),
        max_clauses=max_clauses,
        distinct=(("3", "4", "5"),),
    )


# CNS case study: observed genes per observation (activated, inactivated);
# None stands for "all other genes".
CNS_OBSERVATIONS = {
    "0": ((), None),
    "iPax6": (("Pax6",), None),
    "tM": (("Pax6",), ("Aldh1L1", "Olig2", "Scl", "Sox8", "Tuj1")),
    "fT": (("Brn2", "Tuj1", "Zic1"), ("Aldh1L1", "Sox8")),
    "tO": (("Olig2", "Pax6"), ("Aldh1L1", "Scl", "Sox8", "Tuj1")),
    "fMS": (("Sox8",), ("Aldh1L1", "Brn2", "Tuj1", "Zic1")),
    "tS": (("Pax6", "Scl"), ("Aldh1L1", "Olig2", "Sox8", "Tuj1")),
    "fA": (("Aldh1L1",), ("Brn2", "Sox8", "Tuj1", "Zic1")),
}
CNS_PR = (("iPax6", "tM"), ("tM", "fT"), ("iPax6", "tO"), ("tO", "fMS"), ("iPax6", "tS"), ("tS", "fA"))
CNS_NR = (("0", "fT"), ("0", "fMS"), ("0", "fA"))
CNS_STABLE = ("fT", "fMS", "fA")
CNS_MARKERS = ("Aldh1L1", "Myt1L", "Sox8", "Tuj1")


def cns_problem(graph: InfluenceGraph, constraints: Sequence[str] = ("pr", "nr", "fp"),
                max_clauses="max") -> SynthesisProblem:
    """CNS case-study constraints over a user-supplied 12-gene influence graph.

    ``constraints`` selects among "pr", "nr", "fp" and "tp" (trap spaces
    fixing the four phenotype markers on each stable observation).
    """
    if graph.names is None:
        raise ProblemError("schema", "graph", "CNS graph needs gene names")
    index = {name: i for i, name in enumerate(graph.names)}
    needed = {g for act, inact in CNS_OBSERVATIONS.values() for g in act + (inact or ())}
    missing = sorted((needed | set(CNS_MARKERS)) - set(index))
    if missing:
        raise ProblemError("unknown-reference", "graph.nodes", f"missing genes {missing}")
    obs = []
    for name, (act, inact) in CNS_OBSERVATIONS.items():
        values = {index[g]: 1 for g in act}
        off = [g for g in graph.names if g not in act] if inact is None else inact
        values.update({index[g]: 0 for g in off})
        obs.append(Observation(name, values))
    unknown = set(constraints) - {"pr", "nr", "fp", "tp"}
    if unknown:
        raise ValueError(f"unknown constraint kinds {sorted(unknown)}")
    return SynthesisProblem(
        graph,
        obs,
        pr=CNS_PR if "pr" in constraints else (),
        nr=CNS_NR if "nr" in constraints else (),
        fp=CNS_STABLE if "fp" in constraints else (),
        tp=tuple((m, index[g]) for m in CNS_STABLE for g in CNS_MARKERS) if "tp" in constraints else (),
        max_clauses=max_clauses,
    )


def random_graph(rng: random.Random, n: int, max_in_degree: int, both_sign_rate: float = 0.1,
                 self_loops: bool = True) -> InfluenceGraph:
    plus, minus = set(), set()
    for i in range(n):
        pool = [j for j in range(n) if self_loops or j != i]
        for j in rng.sample(pool, rng.randint(0, min(max_in_degree, len(pool)))):
            r = rng.random()
            if r < both_sign_rate:
                plus.add((j, i))
                minus.add((j, i))
            elif r < (1 + both_sign_rate) / 2:
                plus.add((j, i))
            else:
                minus.add((j, i))
    return InfluenceGraph(n, frozenset(plus), frozenset(minus))


def random_network(rng: random.Random, graph: InfluenceGraph, k="max") -> BooleanNetwork:
    """Each node's function drawn uniformly from its canonical candidates."""
    return BooleanNetwork([rng.choice(list(enumerate_local_candidates(i, graph, k))) for i in range(graph.n)],
                          graph.names)


def random_problem(rng: random.Random, n: int, max_in_degree: int = 3, n_obs: int = 3,
                   observed_rate: float = 0.6, kinds=("pr", "nr", "fp", "tp"),
                   max_clauses="max") -> SynthesisProblem:
    """Small random problem mixing the requested constraint kinds."""
    graph = random_graph(rng, n, max_in_degree)
    names = [chr(ord("A") + k) for k in range(n_obs)]
    obs = [Observation(name, {i: rng.randint(0, 1) for i in range(n) if rng.random() < observed_rate})
           for name in names]
    pairs = [(a, b) for a in names for b in names if a != b]
    rng.shuffle(pairs)
    pr, nr = [], []
    if "pr" in kinds:
        pr = pairs[: rng.randint(0, 2)]
    if "nr" in kinds:
        nr = [p for p in pairs[2: 2 + rng.randint(0, 2)] if p not in pr]
    fp = [m for m in names if "fp" in kinds and rng.random() < 0.3]
    tp = [(m, i) for m in names for i in range(n) if "tp" in kinds and rng.random() < 0.15]
    return SynthesisProblem(graph, obs, pr=pr, nr=nr, fp=fp, tp=tp, max_clauses=max_clauses)


def bench_run(params: GeneratorParams, constraints: Sequence[str] = ("pr", "nr", "fp"), k=2,
              time_budget: Optional[float] = 600.0, engine: str = "auto") -> dict:
    """Generate a differentiation-property instance and look for one solution.

    The report has status "sat", "unsat" or "timeout"; timeouts are data,
    not errors. ``stats`` carries engine counters, including the size of the
    generated constraint system when the SAT engine runs.
    """
    from .synthesis import first_solution, verify_solution

    graph = gen_scale_free(params)
    problem = differentiation_property(graph, max_clauses=k)
    problem = problem.with_constraints(
        pr=problem.pr if "pr" in constraints else (),
        nr=problem.nr if "nr" in constraints else (),
        fp=problem.fp if "fp" in constraints else (),
    )
    stats = {}
    start = time.monotonic()
    try:
        sol = first_solution(problem, time_budget=time_budget, engine=engine, stats=stats)
        status = "unsat" if sol is None else "sat"
        if sol is not None and not verify_solution(problem, sol):
            raise AssertionError("engine produced a solution that fails verification")
    except CapacityError as e:
        status = "timeout"
        stats.update(e.progress)
    wall = time.monotonic() - start
    return {
        "instance": f"scale-free-n{params.n}-d{params.d_max}-s{params.seed}",
        "params": asdict(params),
        "constraints": sorted(constraints),
        "k": k,
        "status": status,
        "wall_seconds": round(wall, 3),
        "solutions_found": 1 if status == "sat" else 0,
        "stats": stats,
    }
