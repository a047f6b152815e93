"""Synthesis from partial observations.

Three nodes, an allowed influence graph, and three partial observations:
s must reach t, and u must be a fixpoint. We enumerate every compatible
network, confirm a few against the brute-force oracle, and see how each
extra constraint prunes the solution set.
"""

from pathlib import Path

from bnsynth import count_solutions, enumerate_solutions, search_space_size
from bnsynth.files import parse_problem, solution_line
from bnsynth.oracle import synth_oracle

problem = parse_problem(Path(__file__).parent / "data" / "small_problem.json")
print("candidate networks:", search_space_size(problem))

solutions = list(enumerate_solutions(problem))
print("solutions:", len(solutions))
for sol in solutions[:3]:
    print(sol.network.render().replace("\n", "; "), "| witness", {k: str(v) for k, v in sol.witness.items()})
print("first as JSON line:", solution_line(solutions[0]))

assert {s.network for s in solutions} == synth_oracle(problem)
print("oracle agrees on the full set")

for label, changes in [("no constraints", dict(pr=(), fp=())), ("reachability only", dict(fp=())),
                       ("fixpoint only", dict(pr=())), ("both", {}),
                       ("both, u also unreachable from t", dict(nr=(("t", "u"),)))]:
    print(f"{label:>32}: {count_solutions(problem.with_constraints(**changes))}")
