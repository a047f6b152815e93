"""Complete, non-redundant synthesis of networks satisfying a problem.

The native engine backtracks over per-node candidate functions in node
order. Candidates are pre-filtered with local necessary conditions from
fixpoint and trap-space constraints, partial assignments are pruned with
over/under-approximated closures, and complete networks are checked by a
witness search over completions of the observations.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, Optional

from .candidates import enumerate_local_candidates, node_candidate_count
from .core import (
    BooleanNetwork,
    Configuration,
    influence_graph_of,
    is_canonical,
    is_subgraph,
)
from .problem import ProblemError, Solution, SynthesisProblem
from .semantics import (
    CapacityError,
    Compiled,
    _closure,
    _reachable,
    compiled,
    is_fixpoint,
    is_reachable,
    trap_component_fixed,
)

EAGER_COMPLETIONS = 16
UNKNOWN = -1


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class _Partial(Compiled):
    """Compiled view of a partially assigned network.

    Unassigned nodes carry the marker ``UNKNOWN``; closures over this view
    either lock them (under-approximation) or free them upfront
    (over-approximation), so their functions are never evaluated.
    """

    def __init__(self, n, locals_):
        self.n = n
        self.full = (1 << n) - 1
        self.consts = []
        self.clauses = []
        deps = [[] for _ in range(n)]
        for i, d in enumerate(locals_):
            if d is None:
                self.consts.append(UNKNOWN)
                self.clauses.append(())
                continue
            self.consts.append(int(d.const) if d.is_constant else None)
            self.clauses.append(d.clauses)
            for j in _bits(d.support_mask):
                deps[j].append(i)
        self.dependents = deps


class _ProblemView:
    """Index-based view of a problem shared by the native and SAT engines."""

    def __init__(self, problem: SynthesisProblem):
        self.problem = problem
        n = self.n = problem.n
        self.full = (1 << n) - 1
        self.names = [o.name for o in problem.observations]
        idx = {name: k for k, name in enumerate(self.names)}
        self.mask = []
        self.vals = []
        for o in problem.observations:
            m, v = o.mask()
            self.mask.append(m)
            self.vals.append(v)
        self.fp = {idx[m] for m in problem.fp}
        self.tp = {}
        for m, i in problem.tp:
            self.tp[idx[m]] = self.tp.get(idx[m], 0) | (1 << i)
        self.binary = [(idx[a], idx[b], "pr") for a, b in problem.pr]
        self.binary += [(idx[a], idx[b], "nr") for a, b in problem.nr]
        self.binary += [(idx[a], idx[b], "ne") for a, b in problem.distinct_pairs()]
        # connected groups of observations linked by binary constraints
        parent = list(range(len(self.names)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b, _ in self.binary:
            parent[find(a)] = find(b)
        groups = {}
        for k in range(len(self.names)):
            groups.setdefault(find(k), []).append(k)
        self.groups = list(groups.values())

    def fully_observed(self, k):
        return self.mask[k] == self.full


def _value(cf, i, x):
    c = cf.consts[i]
    if c is not None:
        return c
    for pos, neg in cf.clauses[i]:
        if pos & ~x == 0 and neg & x == 0:
            return 1
    return 0


def _fixpoint_completions(cf: Compiled, mask: int, vals: int) -> Iterator[int]:
    """Fixpoints of ``cf`` that agree with the observed bits, by backtracking."""
    n = cf.n
    free = [i for i in range(n) if not mask >> i & 1]
    pos = {v: t for t, v in enumerate(free)}
    ready = [[] for _ in range(len(free) + 1)]
    for i in range(n):
        c = cf.consts[i]
        support = 0
        if c is None:
            for p, q in cf.clauses[i]:
                support |= p | q
        need = (support | (1 << i)) & ~mask
        r = max((pos[v] for v in _bits(need)), default=-1)
        ready[r + 1].append(i)

    def ok(x, step):
        for i in ready[step]:
            if _value(cf, i, x) != (x >> i) & 1:
                return False
        return True

    if not ok(vals, 0):
        return

    def rec(t, x):
        if t == len(free):
            yield x
            return
        bit = 1 << free[t]
        for v in (0, bit):
            y = x | v
            if ok(y, t + 1):
                yield from rec(t + 1, y)

    yield from rec(0, vals)


def _all_completions(n, mask, vals) -> Iterator[int]:
    free = [1 << i for i in range(n) if not mask >> i & 1]
    r = len(free)
    for c in range(1 << r):
        x = vals
        t = 0
        while c:
            if c & 1:
                x |= free[t]
            c >>= 1
            t += 1
        yield x


class _WitnessSearch:
    def __init__(self, view: _ProblemView, cf: Compiled):
        self.view = view
        self.cf = cf
        self.reach_memo = {}
        self.cache = {}

    def _unary(self, k, x):
        tp = self.view.tp.get(k)
        if tp:
            zeros, ones = _closure(self.cf, x)
            if zeros & ones & tp:
                return False
        return True

    def _generate(self, k):
        v = self.view
        if k in v.fp:
            src = _fixpoint_completions(self.cf, v.mask[k], v.vals[k])
        else:
            src = _all_completions(v.n, v.mask[k], v.vals[k])
        return (x for x in src if self._unary(k, x))

    def completions(self, k):
        got = self.cache.get(k)
        if got is not None:
            return got
        v = self.view
        n_free = v.n - bin(v.mask[k]).count("1")
        if k in v.fp or n_free <= EAGER_COMPLETIONS:
            got = self.cache[k] = list(self._generate(k))
            return got
        return self._generate(k)

    def reach(self, x, y):
        key = (x, y)
        r = self.reach_memo.get(key)
        if r is None:
            r = self.reach_memo[key] = _reachable(self.cf, x, y)
        return r

    def _holds(self, x, y, kind):
        if kind == "pr":
            return self.reach(x, y)
        if kind == "nr":
            return not self.reach(x, y)
        return x != y

    def solve(self) -> Optional[list[int]]:
        v = self.view
        assign = [None] * len(v.names)
        for group in v.groups:
            if len(group) == 1 and not any(a == group[0] for a, _, _ in v.binary) \
                    and group[0] not in v.fp and group[0] not in v.tp:
                assign[group[0]] = v.vals[group[0]]
                continue
            if not self._solve_group(group, assign):
                return None
        return assign

    def _solve_group(self, group, assign):
        v = self.view
        sizes = {}
        for k in group:
            if k in v.fp:
                sizes[k] = len(self.completions(k))
                if sizes[k] == 0:
                    return False
            else:
                sizes[k] = 1 << (v.n - bin(v.mask[k]).count("1"))
        order = sorted(group, key=lambda k: (sizes[k], k))
        pos = {k: t for t, k in enumerate(order)}
        checks = [[] for _ in order]
        for a, b, kind in v.binary:
            if a in pos:
                checks[max(pos[a], pos[b])].append((a, b, kind))

        def rec(t):
            if t == len(order):
                return True
            k = order[t]
            for x in self.completions(k):
                assign[k] = x
                if all(self._holds(assign[a], assign[b], kind) for a, b, kind in checks[t]):
                    if rec(t + 1):
                        return True
            assign[k] = None
            return False

        return rec(0)


def _witness_dict(view, assign):
    return {name: Configuration(view.n, assign[k]) for k, name in enumerate(view.names)}


def check_problem(f: BooleanNetwork, problem: SynthesisProblem) -> Optional[dict[str, Configuration]]:
    """Find completions of all observations satisfying every constraint for ``f``.

    Returns a mapping observation name -> configuration, or None when no
    consistent completion exists. Raises ProblemError when ``f`` does not
    fit the problem's influence graph.
    """
    if f.n != problem.n:
        raise ProblemError("dimension", "network", f"network has {f.n} components, problem has {problem.n}")
    if not is_subgraph(influence_graph_of(f), problem.graph):
        raise ProblemError("graph", "network", "influence graph of the network is not within the problem graph")
    view = _ProblemView(problem)
    assign = _WitnessSearch(view, compiled(f)).solve()
    return None if assign is None else _witness_dict(view, assign)


def verify_solution(problem: SynthesisProblem, s: Solution) -> bool:
    """Independently recheck a solution: structure, bounds, witness and constraints."""
    f = s.network
    if s.witness is None or f.n != problem.n:
        return False
    for i, d in enumerate(f.locals):
        if not d.is_constant:
            if not is_canonical(d.clause_lists()):
                return False
            bound = problem.bound(i)
            if bound != "max" and len(d.clauses) > bound:
                return False
    if not is_subgraph(influence_graph_of(f), problem.graph):
        return False
    w = {}
    for o in problem.observations:
        x = s.witness.get(o.name)
        if x is None or x.n != problem.n:
            return False
        if any(x[i] != v for i, v in o.values.items()):
            return False
        w[o.name] = x
    return (all(is_reachable(f, w[a], w[b]) for a, b in problem.pr)
            and not any(is_reachable(f, w[a], w[b]) for a, b in problem.nr)
            and all(is_fixpoint(f, w[m]) for m in problem.fp)
            and all(trap_component_fixed(f, w[m], i) for m, i in problem.tp)
            and all(w[a] != w[b] for a, b in problem.distinct_pairs()))


def _local_candidates(view: _ProblemView, node: int):
    """Candidates of ``node`` (with their enumeration index) passing local checks.

    A fixpoint or trap-space constraint on observation m fixing ``node``
    forces f_node(x^m) = x^m_node; when that value is observed, the function
    must be able to produce it on the observation's hypercube.
    """
    problem = view.problem
    required = []
    for k in range(len(view.names)):
        pinned = k in view.fp or (view.tp.get(k, 0) >> node & 1)
        if pinned and view.mask[k] >> node & 1:
            m, vals = view.mask[k], view.vals[k]
            required.append((~vals & m | ~m & view.full, vals | ~m & view.full, vals >> node & 1))
    out = []
    for idx, d in enumerate(enumerate_local_candidates(node, problem.graph, problem.bound(node))):
        ok = True
        if required:
            if d.is_constant:
                ok = all(int(d.const) == want for _, _, want in required)
            else:
                for zeros, ones, want in required:
                    p1 = any(p & ~ones == 0 and q & ~zeros == 0 for p, q in d.clauses)
                    p0 = all(p & zeros or q & ones for p, q in d.clauses)
                    if not (p1 if want else p0):
                        ok = False
                        break
        if ok:
            out.append((idx, d))
    return out


def _over_closure(cf: _Partial, zeros, ones):
    """Closure where unassigned nodes may flip freely: contains every completion's."""
    unknown = 0
    for i, c in enumerate(cf.consts):
        if c == UNKNOWN:
            unknown |= 1 << i
    # unknown cells free at once; then ordinary closure over assigned nodes
    zeros |= unknown
    ones |= unknown
    return _closure(cf, 0, 0, zeros, ones)


class _Search:
    def __init__(self, problem: SynthesisProblem, time_budget: Optional[float] = None):
        self.problem = problem
        self.view = _ProblemView(problem)
        self.n = problem.n
        self.cands = [_local_candidates(self.view, i) for i in range(self.n)]
        self.deadline = None if time_budget is None else time.monotonic() + time_budget
        self.leaves = 0
        self.solutions = 0
        v = self.view
        self.pr_checks = [(a, b) for a, b, kind in v.binary if kind == "pr"]
        self.tp_checks = [(k, m) for k, m in v.tp.items() if v.fully_observed(k)]

    def _prune(self, locals_):
        """True when no completion of the partial assignment can be a solution."""
        v = self.view
        cf = _Partial(self.n, locals_)
        unknown = 0
        for i, d in enumerate(locals_):
            if d is None:
                unknown |= 1 << i
        for k, tp in self.tp_checks:
            zeros, ones = _closure(cf, v.vals[k], unknown)
            if zeros & ones & tp:
                return True
        for a, b in self.pr_checks:
            za = ~v.vals[a] & v.full | ~v.mask[a] & v.full
            oa = v.vals[a] | ~v.mask[a] & v.full
            zeros, ones = _over_closure(cf, za, oa)
            mb, vb = v.mask[b], v.vals[b]
            if vb & ~ones or ~vb & mb & ~zeros:
                return True
        return False

    def _tick(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise CapacityError(
                "synthesis time budget exceeded",
                {"leaves_checked": self.leaves, "solutions_found": self.solutions},
            )

    def run(self, prefix=()) -> Iterator[tuple[tuple[int, ...], BooleanNetwork, list[int]]]:
        """Yield (candidate indices, network, witness bits) in lexicographic order."""
        n = self.n
        locals_ = [None] * n
        chosen = [0] * n
        names = self.problem.graph.names
        prune_from = 0 if (self.tp_checks or self.pr_checks) else n

        def rec(i):
            if i == n:
                self.leaves += 1
                if self.leaves % 256 == 0:
                    self._tick()
                f = BooleanNetwork(locals_, names)
                assign = _WitnessSearch(self.view, compiled(f)).solve()
                if assign is not None:
                    self.solutions += 1
                    yield tuple(chosen), f, assign
                return
            options = self.cands[i]
            if i < len(prefix):
                options = [options[prefix[i]]]
            for idx, d in options:
                locals_[i] = d
                chosen[i] = idx
                if i + 1 >= prune_from and i + 1 < n and self._prune(locals_):
                    continue
                yield from rec(i + 1)
            locals_[i] = None

        if any(not c for c in self.cands):
            return
        yield from rec(0)


def _prefixes(search: _Search, jobs: int):
    """Split the search tree into roughly 4*jobs subtrees by leading choices."""
    prefixes = [()]
    depth = 0
    while len(prefixes) < 4 * jobs and depth < search.n:
        prefixes = [p + (t,) for p in prefixes for t in range(len(search.cands[depth]))]
        depth += 1
    return prefixes


def _worker(args):
    problem, prefixes, count_only, budget = args
    search = _Search(problem, budget)
    out = []
    total = 0
    for p in prefixes:
        for key, f, assign in search.run(p):
            total += 1
            if not count_only:
                out.append((key, f.locals, assign))
    return total, out


def _parallel(problem, jobs, count_only, time_budget, sort_output):
    search = _Search(problem)
    prefixes = _prefixes(search, jobs)
    chunks = [prefixes[i::jobs * 4] for i in range(jobs * 4)]
    chunks = [c for c in chunks if c]
    view = search.view
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_worker, [(problem, c, count_only, time_budget) for c in chunks]))
    if count_only:
        return sum(t for t, _ in results)
    rows = [r for _, out in results for r in out]
    if sort_output:
        rows.sort(key=lambda r: r[0])
    names = problem.graph.names
    return [Solution(BooleanNetwork(locals_, names), _witness_dict(view, assign))
            for _, locals_, assign in rows]


def search_space_size(problem: SynthesisProblem) -> int:
    """Number of canonical networks compatible with the problem's graph and bounds."""
    total = 1
    for i in range(problem.n):
        total *= node_candidate_count(i, problem.graph, problem.bound(i))
    return total


def enumerate_solutions(problem: SynthesisProblem, limit: Optional[int] = None, jobs: int = 1,
                        sort: bool = False, time_budget: Optional[float] = None) -> Iterator[Solution]:
    """Stream every solution once, each with its witness.

    With one worker the order is lexicographic over per-node candidate
    indices. With several workers the set is the same and the order is
    arbitrary unless ``sort`` is set.
    """
    if jobs > 1:
        sols = _parallel(problem, jobs, False, time_budget, sort)
        yield from sols[:limit] if limit is not None else sols
        return
    search = _Search(problem, time_budget)
    emitted = 0
    for _, f, assign in search.run():
        yield Solution(f, _witness_dict(search.view, assign))
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def count_solutions(problem: SynthesisProblem, jobs: int = 1, time_budget: Optional[float] = None) -> int:
    if jobs > 1:
        return _parallel(problem, jobs, True, time_budget, False)
    search = _Search(problem, time_budget)
    return sum(1 for _ in search.run())


def first_solution(problem: SynthesisProblem, time_budget: Optional[float] = None,
                   engine: str = "auto", stats: Optional[dict] = None) -> Optional[Solution]:
    """One solution, or None when the problem is unsatisfiable.

    ``engine="native"`` returns the lexicographically first solution;
    ``engine="sat"`` hands the whole problem to a SAT encoding and returns
    whichever solution the solver finds (re-verified natively). ``"auto"``
    picks native for small search spaces and SAT otherwise.
    """
    if engine == "auto":
        engine = "native" if _native_is_viable(problem) else "sat"
    if engine == "sat":
        from .satengine import sat_first_solution
        return sat_first_solution(problem, time_budget=time_budget, stats=stats)
    if engine != "native":
        raise ValueError(f"unknown engine {engine!r}")
    search = _Search(problem, time_budget)
    try:
        for _, f, assign in search.run():
            return Solution(f, _witness_dict(search.view, assign))
        return None
    finally:
        if stats is not None:
            stats.update(engine="native", leaves_checked=search.leaves)


NATIVE_SPACE_LIMIT = 10**4


def _native_is_viable(problem: SynthesisProblem) -> bool:
    view = _ProblemView(problem)
    constrained = {a for a, _, _ in view.binary} | {b for _, b, _ in view.binary} | set(view.tp)
    for k in constrained - view.fp:
        if view.n - bin(view.mask[k]).count("1") > EAGER_COMPLETIONS:
            return False
    try:
        return search_space_size(problem) <= NATIVE_SPACE_LIMIT
    except CapacityError:
        return False


def synthesize(problem: SynthesisProblem, mode: str = "enumerate", limit: Optional[int] = None,
               jobs: int = 1, sort: bool = False, time_budget: Optional[float] = None,
               engine: str = "auto"):
    """Dispatch on ``mode``: "enumerate" -> iterator of Solution, "count" -> int,
    "first" -> Solution or None."""
    if mode == "enumerate":
        return enumerate_solutions(problem, limit=limit, jobs=jobs, sort=sort, time_budget=time_budget)
    if mode == "count":
        return count_solutions(problem, jobs=jobs, time_budget=time_budget)
    if mode == "first":
        return first_solution(problem, time_budget=time_budget, engine=engine)
    raise ValueError(f"unknown mode {mode!r}")
