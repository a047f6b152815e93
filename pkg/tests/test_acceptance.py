"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL/SKIP line that is printed in the
"acceptance criteria" section of the pytest terminal summary.
"""

import itertools
import json
import os
import random
import time
from pathlib import Path

import pytest

from bnsynth import (
    Hypercube,
    InfluenceGraph,
    attractors,
    candidate_count,
    count_solutions,
    enumerate_solutions,
    is_fixpoint,
    is_reachable,
    search_space_size,
    smallest_constrained_trap_space,
    verify_solution,
)
from bnsynth.instances import (
    GeneratorParams,
    bench_run,
    cns_problem,
    random_graph,
    random_network,
    random_problem,
)
from bnsynth.oracle import reachable_set_oracle, synth_oracle, trap_spaces_oracle

from conftest import record

pytestmark = pytest.mark.acceptance


def _check(criterion, ok, detail):
    record(criterion, ok, detail)
    assert ok, detail


def _configs(n):
    return ["".join(p) for p in itertools.product("01", repeat=n)]


def test_criterion_1_dedekind_counts():
    expected = [2, 3, 6, 20, 168, 7581]
    got = [candidate_count(d, "max") for d in range(6)]
    start = time.perf_counter()
    d6 = candidate_count(6, "max")
    elapsed = time.perf_counter() - start
    ok = got == expected and d6 == 7828354 and elapsed < 600
    _check(1, ok, f"d=0..5 -> {got}, d=6 -> {d6} in {elapsed:.2f}s")


def test_criterion_2_worked_examples(net_f, net_g):
    start = time.perf_counter()
    results = {
        "fixpoints 011, 100": [x for x in _configs(3) if is_fixpoint(net_f, x)] == ["011", "100"],
        "000 ->* 111": is_reachable(net_f, "000", "111"),
        "110 ->* 000": is_reachable(net_f, "110", "000"),
        "000 ->* 110": is_reachable(net_f, "000", "110"),
        "010 -/->* 100": not is_reachable(net_f, "010", "100"),
        "g: 011 ->* 000": is_reachable(net_g, "011", "000"),
        "g: 001 -/->* 010": not is_reachable(net_g, "001", "010"),
        "g: attractor 1**": [str(a) for a in attractors(net_g)] == ["1**"],
        "trap space 01*": str(smallest_constrained_trap_space(net_f, "010")) == "01*",
        "{1}-constrained 1*0": str(smallest_constrained_trap_space(net_f, "110", {0})) == "1*0",
        "attractors 011, 100": [str(a) for a in attractors(net_f)] == ["011", "100"],
    }
    elapsed = time.perf_counter() - start
    failed = [k for k, v in results.items() if not v]
    _check(2, not failed and elapsed < 1.0,
           f"{len(results) - len(failed)}/{len(results)} examples in {elapsed * 1000:.1f}ms" +
           (f"; failed: {failed}" if failed else ""))


def test_criterion_3_reachability_oracle():
    rng = random.Random(2023)
    pairs_per_n = 200
    summary, disagreements = [], 0
    for n in range(3, 8):
        triples = 0
        for _ in range(pairs_per_n):
            f = random_network(rng, random_graph(rng, n, min(3, n)))
            x = "".join(rng.choice("01") for _ in range(n))
            reached = reachable_set_oracle(f, x)
            for y in _configs(n):
                triples += 1
                if is_reachable(f, x, y) != (y in reached):
                    disagreements += 1
        summary.append(f"n={n}:{triples}")
    _check(3, disagreements == 0, f"{disagreements} disagreements over triples {' '.join(summary)}")


def test_criterion_4_attractor_oracle():
    rng = random.Random(7)
    mismatches = overlaps = 0
    count = 0
    for n in range(1, 8):
        for _ in range(30):
            f = random_network(rng, random_graph(rng, n, min(3, n)))
            atts = attractors(f)
            if [str(a) for a in atts] != [str(t) for t in trap_spaces_oracle(f)]:
                mismatches += 1
            for a, b in itertools.combinations(atts, 2):
                if set(map(str, a.configurations())) & set(map(str, b.configurations())):
                    overlaps += 1
            count += 1
    _check(4, mismatches == 0 and overlaps == 0 and count >= 200,
           f"{count} networks (n=1..7): {mismatches} mismatches, {overlaps} overlapping pairs")


SPACE_CAP = 2500


def test_criterion_5_synthesis_completeness():
    rng = random.Random(11)
    checked = drawn = mismatches = bad = 0
    total_solutions = 0
    kinds_seen = set()
    while checked < 60:
        drawn += 1
        p = random_problem(rng, rng.choice([2, 3, 4]), max_in_degree=3, max_clauses="max")
        if not (p.pr or p.nr or p.fp or p.tp) or search_space_size(p) > SPACE_CAP:
            continue
        sols = list(enumerate_solutions(p))
        nets = [s.network for s in sols]
        if len(nets) != len(set(nets)) or set(nets) != synth_oracle(p):
            mismatches += 1
        bad += sum(not verify_solution(p, s) for s in sols)
        total_solutions += len(sols)
        kinds_seen |= {k for k in ("pr", "nr", "fp", "tp") if getattr(p, k)}
        checked += 1
    ok = mismatches == 0 and bad == 0 and kinds_seen == {"pr", "nr", "fp", "tp"}
    _check(5, ok, f"{checked} problems (space <= {SPACE_CAP}, {drawn} drawn): {mismatches} set mismatches, "
                  f"{bad} failed verifications, {total_solutions} solutions, kinds {sorted(kinds_seen)}")


CNS_ROWS = {
    ("fp",): 4970,
    ("pr", "fp"): 3360,
    ("pr", "nr", "fp"): 1120,
    ("tp",): 17220,
    ("pr", "tp"): 8964,
    ("nr", "tp"): 5667,
    ("pr", "nr", "tp"): 3735,
}


def _cns_graph():
    path = os.environ.get("BNSYNTH_CNS_GRAPH")
    if path is None:
        default = Path(__file__).resolve().parent.parent / "demos" / "data" / "cns_graph.json"
        path = default if default.exists() else None
    if path is None:
        return None
    data = json.loads(Path(path).read_text())
    names = data["nodes"]
    idx = {g: i for i, g in enumerate(names)}
    plus = {(idx[e["from"]], idx[e["to"]]) for e in data["edges"] if e["sign"] == "+"}
    minus = {(idx[e["from"]], idx[e["to"]]) for e in data["edges"] if e["sign"] == "-"}
    return InfluenceGraph(len(names), plus, minus, names)


CNS_COUNTS = {}


def test_criterion_6_cns_case_study():
    graph = _cns_graph()
    if graph is None:
        msg = ("CNS influence graph not available (set BNSYNTH_CNS_GRAPH to a JSON file with "
               "nodes and signed edges); counts cannot be checked")
        record(6, None, msg)
        pytest.skip(msg)
    baseline = search_space_size(cns_problem(graph))
    wrong = []
    for row, expected in CNS_ROWS.items():
        got = count_solutions(cns_problem(graph, row), time_budget=3600)
        CNS_COUNTS[row] = got
        if got != expected:
            wrong.append(f"{'+'.join(row)}={got} (expected {expected})")
    _check(6, baseline > 2.26e8 and not wrong, f"baseline {baseline}; mismatched rows: {wrong or 'none'}")


def test_criterion_7_scalability():
    params = GeneratorParams(50, 15, seed=1)
    full = bench_run(params, ("pr", "nr", "fp"), k=2, time_budget=900)
    no_nr = bench_run(params, ("pr", "fp"), k=2, time_budget=900)
    ok = (full["status"] in ("sat", "unsat") and full["wall_seconds"] < 900
          and no_nr["stats"]["peak_clauses"] < full["stats"]["peak_clauses"])
    _check(7, ok, f"n=50 d_max=15 k=2: {full['status']} in {full['wall_seconds']}s; peak clauses "
                  f"{full['stats'].get('peak_clauses')} with NR vs {no_nr['stats'].get('peak_clauses')} without")


def test_criterion_8_order_properties():
    rng = random.Random(5)
    kinds = ("pr", "nr", "fp", "tp")
    violations = instances = 0
    while instances < 30:
        p = random_problem(rng, 3, max_in_degree=3)
        if search_space_size(p) > 4000:
            continue
        instances += 1
        counts = {}
        for r in range(len(kinds) + 1):
            for subset in itertools.combinations(kinds, r):
                q = p.with_constraints(**{k: () for k in kinds if k not in subset})
                counts[frozenset(subset)] = count_solutions(q)
        for a, b in itertools.product(counts, repeat=2):
            if a < b and counts[b] > counts[a]:
                violations += 1
        fp = p.fp or (p.observations[0].name,)
        as_fp = p.with_constraints(fp=fp, tp=())
        as_tp = p.with_constraints(fp=(), tp=tuple((m, i) for m in fp for i in range(p.n)))
        if not {s.network for s in enumerate_solutions(as_fp)} <= {s.network for s in enumerate_solutions(as_tp)}:
            violations += 1
    detail = f"{instances} random instances x 16 constraint subsets"
    if CNS_COUNTS:
        rows = CNS_COUNTS
        for a, b in itertools.product(rows, repeat=2):
            if set(a) < set(b) and rows[b] > rows[a]:
                violations += 1
        detail += f" plus {len(rows)} CNS rows"
    _check(8, violations == 0, f"{violations} violations over {detail}")
