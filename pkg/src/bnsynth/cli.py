"""Command-line interface.

Exit codes: 0 satisfiable / holds, 1 unsatisfiable / does not hold,
2 usage or validation error, 3 resource limit or timeout. Results go to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import files
from .candidates import MAX
from .core import DimensionError, as_configuration
from .instances import GeneratorParams, bench_run, differentiation_property, gen_scale_free
from .problem import ProblemError, SynthesisProblem
from .semantics import CapacityError, attractors, is_reachable
from .synthesis import check_problem, count_solutions, enumerate_solutions, first_solution

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def _clause_bound(text):
    if text == MAX:
        return MAX
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a non-negative integer or 'max'") from None
    if k < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer or 'max'")
    return k


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def cmd_synthesize(args, out) -> int:
    problem = files.parse_problem(args.problem, args.max_clauses)
    if args.count:
        n = count_solutions(problem, jobs=args.jobs, time_budget=args.time_budget)
        print(n, file=out)
        return EXIT_OK if n else EXIT_NO
    if args.first:
        sol = first_solution(problem, time_budget=args.time_budget, engine=args.engine)
        if sol is None:
            return EXIT_NO
        print(files.solution_line(sol, args.witness), file=out)
        return EXIT_OK
    found = 0
    for sol in enumerate_solutions(problem, limit=args.limit, jobs=args.jobs, sort=args.sorted,
                                   time_budget=args.time_budget):
        print(files.solution_line(sol, args.witness), file=out)
        found += 1
    return EXIT_OK if found else EXIT_NO


def _align(f, problem: SynthesisProblem):
    """Reorder a model's nodes to the problem's declaration order."""
    names = list(problem.graph.names or ())
    if list(f.node_names()) == names:
        return f
    mine = list(f.node_names())
    if sorted(mine) != sorted(names):
        raise ProblemError("unknown-reference", "nodes", "model and problem declare different nodes")
    data = files.model_to_dict(f)
    data["nodes"] = names
    return files.model_from_dict(data)


def cmd_check(args, out) -> int:
    problem = files.parse_problem(args.problem)
    f = _align(files.load_model(args.model), problem)
    try:
        witness = check_problem(f, problem)
    except ProblemError as e:
        if e.code != "graph":
            raise
        print(f"no witness: {e}", file=out)
        return EXIT_NO
    if witness is None:
        print("no witness", file=out)
        return EXIT_NO
    print(json.dumps({k: str(v) for k, v in witness.items()}, sort_keys=True), file=out)
    return EXIT_OK


def cmd_reach(args, out) -> int:
    f = files.load_model(args.model)
    x = as_configuration(args.source, f.n)
    y = as_configuration(args.target, f.n)
    answer = is_reachable(f, x, y)
    if args.oracle:
        from .oracle import reach_oracle_all_L
        expected = reach_oracle_all_L(f, x, y)
        print(f"oracle: {'reachable' if expected else 'not reachable'}", file=sys.stderr)
        if expected != answer:
            print("warning: engine and oracle disagree", file=sys.stderr)
    print("reachable" if answer else "not reachable", file=out)
    return EXIT_OK if answer else EXIT_NO


def cmd_attractors(args, out) -> int:
    f = files.load_model(args.model)
    atts = attractors(f)
    if args.oracle:
        from .oracle import trap_spaces_oracle
        expected = [str(t) for t in trap_spaces_oracle(f)]
        if expected != [str(a) for a in atts]:
            print(f"warning: oracle finds {expected}", file=sys.stderr)
    for a in atts:
        print(a, file=out)
    return EXIT_OK


def _params(args):
    return GeneratorParams(args.nodes, args.max_indegree, args.seed, args.sign_bias, args.mean_indegree)


def cmd_gen(args, out) -> int:
    try:
        graph = gen_scale_free(_params(args))
    except ValueError as e:
        raise ProblemError("bad-value", "gen", str(e)) from None
    if args.property == "diff2":
        problem = differentiation_property(graph, args.max_clauses)
    else:
        problem = SynthesisProblem(graph, (), max_clauses=args.max_clauses)
    json.dump(files.problem_to_dict(problem), out, indent=2)
    out.write("\n")
    return EXIT_OK


def cmd_bench(args, out) -> int:
    try:
        params = _params(args)
        params.validate()
    except ValueError as e:
        raise ProblemError("bad-value", "bench", str(e)) from None
    report = bench_run(params, constraints=args.constraints.split(","), k=args.max_clauses,
                       time_budget=args.time_budget, engine=args.engine)
    report["stats"].pop("levels", None)
    print(json.dumps(report, sort_keys=True), file=out)
    return {"sat": EXIT_OK, "unsat": EXIT_NO}.get(report["status"], EXIT_RESOURCE)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bnsynth", description="Synthesis and analysis of locally-monotonic "
                                "Boolean networks under most permissive semantics.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synthesize", help="enumerate, count or find networks satisfying a problem file")
    s.add_argument("problem")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="print the number of solutions")
    mode.add_argument("--limit", type=_positive, metavar="N", help="stop after N solutions")
    mode.add_argument("--first", action="store_true", help="print one solution")
    s.add_argument("--max-clauses", type=_clause_bound, metavar="K", help="override the clause bound")
    s.add_argument("--jobs", type=_positive, default=1, metavar="J")
    s.add_argument("--sorted", action="store_true", help="canonical output order regardless of --jobs")
    s.add_argument("--witness", action="store_true", help="include a witness completion per observation")
    s.add_argument("--time-budget", type=float, metavar="SECONDS")
    s.add_argument("--engine", choices=("auto", "native", "sat"), default="auto",
                   help="search engine for --first")
    s.set_defaults(run=cmd_synthesize)

    c = sub.add_parser("check", help="test a model against a problem file")
    c.add_argument("problem")
    c.add_argument("model")
    c.set_defaults(run=cmd_check)

    r = sub.add_parser("reach", help="most permissive reachability between two configurations")
    r.add_argument("model")
    r.add_argument("source")
    r.add_argument("target")
    r.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    r.set_defaults(run=cmd_reach)

    a = sub.add_parser("attractors", help="list minimal trap spaces")
    a.add_argument("model")
    a.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    a.set_defaults(run=cmd_attractors)

    for name, fn, helptext in (("gen", cmd_gen, "generate a scale-free instance as a problem file"),
                               ("bench", cmd_bench, "generate an instance and time a --first run")):
        g = sub.add_parser(name, help=helptext)
        g.add_argument("--nodes", type=int, required=True, metavar="N")
        g.add_argument("--max-indegree", type=int, required=True, metavar="D")
        g.add_argument("--seed", type=int, default=0)
        g.add_argument("--sign-bias", type=float, default=0.5)
        g.add_argument("--mean-indegree", type=float, default=2.0)
        g.set_defaults(run=fn)
    gen = sub.choices["gen"]
    gen.add_argument("--property", choices=("diff2",))
    gen.add_argument("--max-clauses", type=_clause_bound, default=MAX, metavar="K")
    bench = sub.choices["bench"]
    bench.add_argument("--constraints", default="pr,nr,fp", help="comma-separated subset of pr,nr,fp")
    bench.add_argument("--max-clauses", type=_clause_bound, default=2, metavar="K")
    bench.add_argument("--time-budget", type=float, default=900.0, metavar="SECONDS")
    bench.add_argument("--engine", choices=("auto", "native", "sat"), default="auto")
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.run(args, out)
    except ProblemError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DimensionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
