"""One solution on a 50-node generated instance.

The differentiation property asks for five configurations: 1 reaches 2 and
3, 2 reaches 4 and 5 but not 3, and 3, 4, 5 are distinct fixpoints. On a
scale-free graph with 50 nodes this is answered through the SAT engine;
dropping the negative reachability constraint shrinks the encoding.
"""

import json

from bnsynth.instances import GeneratorParams, bench_run

params = GeneratorParams(n=50, d_max=15, seed=1)
for constraints in (("pr", "nr", "fp"), ("pr", "fp")):
    report = bench_run(params, constraints, k=2, time_budget=900)
    stats = report.pop("stats")
    print(json.dumps(report))
    print("  clauses in the largest encoding:", stats.get("peak_clauses"))
