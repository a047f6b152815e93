"""Brute-force reference implementations, straight from the definitions.

Nothing here reuses the evaluation or closure code of
:mod:`bnsynth.semantics`; functions are tabulated by naive clause
evaluation and every hypercube question is answered by enumerating its
configurations. Only meant for small dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .candidates import enumerate_local_candidates
from .core import BooleanNetwork, Hypercube, as_configuration
from .problem import SynthesisProblem
from .semantics import CapacityError


class OracleBudgetError(CapacityError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_dimension: int = 10
    max_candidates: int = 10**6


DEFAULT_BUDGET = OracleBudget()


def _naive_value(dnf, bits) -> int:
    if dnf.is_constant:
        return int(dnf.const)
    for clause in dnf.clause_lists():
        if all(bits[v] == (1 if s > 0 else 0) for v, s in clause):
            return 1
    return 0


class _Table:
    """Truth table of a network: ``out[x, i] = f_i(x)`` for x in 0..2**n-1."""

    def __init__(self, f: BooleanNetwork, budget: OracleBudget):
        n = f.n
        if n > budget.max_dimension:
            raise OracleBudgetError(f"oracle: dimension {n} exceeds budget {budget.max_dimension}")
        self.n = n
        idx = np.arange(1 << n)
        self.bits = ((idx[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int8)
        self.out = np.array([[_naive_value(d, row) for d in f.locals] for row in self.bits.tolist()],
                            dtype=np.int8).reshape(1 << n, n)

    def members(self, cells) -> np.ndarray:
        """Boolean mask over configurations of c(h); ``cells[i]`` in {0, 1, None}."""
        mask = np.ones(1 << self.n, dtype=bool)
        for i, v in enumerate(cells):
            if v is not None:
                mask &= self.bits[:, i] == v
        return mask

    def closure(self, x, locked) -> list:
        """Least L-constrained trap space containing x by synchronous full rescans."""
        h = [int(b) for b in x]
        while True:
            inside = self.members(h)
            nxt = list(h)
            for i in range(self.n):
                if i in locked or h[i] is None:
                    continue
                if np.any(self.out[inside, i] != h[i]):
                    nxt[i] = None
            if nxt == h:
                return h
            h = nxt


def _cells_to_cube(n, cells) -> Hypercube:
    return Hypercube.from_string("".join("*" if v is None else str(v) for v in cells))


def reachable_set_oracle(f: BooleanNetwork, x, budget: OracleBudget = DEFAULT_BUDGET) -> set[str]:
    """All y with x ->* y, by trying every lock set L."""
    table = f if isinstance(f, _Table) else _Table(f, budget)
    n = table.n
    x = as_configuration(x, n)
    xs = [int(c) for c in str(x)]
    reached = set()
    for lmask in range(1 << n):
        locked = {i for i in range(n) if lmask >> i & 1}
        w = table.closure(xs, locked)
        inside = table.members(w)
        outs = table.out[inside]
        can = [(bool(np.any(outs[:, i] == 0)), bool(np.any(outs[:, i] == 1))) for i in range(n)]
        for row in table.bits[inside].tolist():
            ok = True
            for i in range(n):
                if i not in locked and w[i] is None and xs[i] == row[i] and not can[i][row[i]]:
                    ok = False
                    break
            if ok:
                reached.add("".join(map(str, row)))
    return reached


def reach_oracle_all_L(f: BooleanNetwork, x, y, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    y = as_configuration(y, f.n)
    return str(y) in reachable_set_oracle(f, x, budget)


def trap_spaces_oracle(f: BooleanNetwork, budget: OracleBudget = DEFAULT_BUDGET) -> list[Hypercube]:
    """Minimal trap spaces by scanning all 3**n hypercubes."""
    table = _Table(f, budget)
    n = table.n
    traps = []
    for cells in product((0, 1, None), repeat=n):
        inside = table.members(cells)
        outs = table.out[inside]
        if all(v is None or np.all(outs[:, i] == v) for i, v in enumerate(cells)):
            traps.append(cells)
    traps.sort(key=lambda c: sum(v is None for v in c))
    minimal = []
    for t in traps:
        contains_smaller = any(all(tv is None or tv == mv for tv, mv in zip(t, m)) for m in minimal)
        if not contains_smaller:
            minimal.append(t)
    return sorted((_cells_to_cube(n, m) for m in minimal), key=str)


def _completions(n, values):
    free = [i for i in range(n) if i not in values]
    for vals in product((0, 1), repeat=len(free)):
        cfg = [values.get(i, 0) for i in range(n)]
        for i, v in zip(free, vals):
            cfg[i] = v
        yield "".join(map(str, cfg))


def check_problem_oracle(f: BooleanNetwork, problem: SynthesisProblem, budget: OracleBudget = DEFAULT_BUDGET):
    """Witness (name -> configuration string) or None, by exhaustive search."""
    table = _Table(f, budget)
    n = f.n
    reach_cache = {}

    def reach(x, y):
        if x not in reach_cache:
            reach_cache[x] = reachable_set_oracle(table, x, budget)
        return y in reach_cache[x]

    def unary_ok(name, x):
        xs = [int(c) for c in x]
        if name in problem.fp:
            row = table.out[int(x[::-1], 2)]
            if list(row) != xs:
                return False
        comps = [i for m, i in problem.tp if m == name]
        if comps:
            t = table.closure(xs, set())
            if any(t[i] is None for i in comps):
                return False
        return True

    names = [o.name for o in problem.observations]
    binary = [(a, b, "pr") for a, b in problem.pr] + [(a, b, "nr") for a, b in problem.nr]
    binary += [(a, b, "ne") for a, b in problem.distinct_pairs()]
    assign = {}

    def holds(a, b, kind):
        if kind == "pr":
            return reach(assign[a], assign[b])
        if kind == "nr":
            return not reach(assign[a], assign[b])
        return assign[a] != assign[b]

    def search(k):
        if k == len(names):
            return True
        name = names[k]
        for x in _completions(n, problem.observation(name).values):
            if not unary_ok(name, x):
                continue
            assign[name] = x
            done = set(names[:k + 1])
            if all(holds(a, b, kind) for a, b, kind in binary
                   if a in done and b in done and name in (a, b)):
                if search(k + 1):
                    return True
            del assign[name]
        return False

    if search(0):
        return dict(assign)
    return None


def synth_oracle(problem: SynthesisProblem, budget: OracleBudget = DEFAULT_BUDGET) -> set[BooleanNetwork]:
    """All canonical networks within the graph that satisfy the problem."""
    g = problem.graph
    if g.n > budget.max_dimension:
        raise OracleBudgetError(f"oracle: dimension {g.n} exceeds budget {budget.max_dimension}")
    per_node = [list(enumerate_local_candidates(i, g, problem.bound(i))) for i in range(g.n)]
    size = 1
    for c in per_node:
        size *= len(c)
    if size > budget.max_candidates:
        raise OracleBudgetError(f"oracle: {size} candidate networks exceed budget {budget.max_candidates}")
    found = set()
    for combo in product(*per_node):
        f = BooleanNetwork(combo, g.names)
        if check_problem_oracle(f, problem, budget) is not None:
            found.add(f)
    return found
