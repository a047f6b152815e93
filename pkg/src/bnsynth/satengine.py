"""SAT encoding of a synthesis problem, used to find one solution on large instances.

Each local function is a DNF of at most ``k`` clauses whose literals are
selected among the allowed in-edges. Witness bits are free variables except
where observed. Closures are unrolled as synchronous layers, so every
closure and every lock round is a deterministic circuit of the function and
witness variables: no choice is left to the solver beyond the network and
the completions.

Unrolling depth is bounded. Each closure must be stable at its last layer
and the lock iteration must be stable at its last round, so a model is
always exact; a too-shallow unrolling can only lose models. Depths are
escalated until the bound n+1 where the encoding is complete.
"""

from __future__ import annotations

import threading
import time
from typing import Optional

from pysat.solvers import Solver

from .candidates import resolve_bound
from .core import Configuration, MonotoneDNF, BooleanNetwork
from .problem import Solution, SynthesisProblem
from .semantics import CapacityError

SOLVER = "glucose4"


class Circuit:
    """Tseitin gate builder with constant folding and structural hashing."""

    def __init__(self):
        self.nv = 1
        self.clauses = [[1]]
        self.cache = {}

    TRUE = 1
    FALSE = -1

    def var(self) -> int:
        self.nv += 1
        return self.nv

    def add(self, clause):
        self.clauses.append(list(clause))

    def AND(self, lits) -> int:
        s = set()
        for l in lits:
            if l == self.FALSE or -l in s:
                return self.FALSE
            if l != self.TRUE:
                s.add(l)
        if not s:
            return self.TRUE
        if len(s) == 1:
            return next(iter(s))
        key = frozenset(s)
        v = self.cache.get(key)
        if v is None:
            v = self.cache[key] = self.var()
            for l in s:
                self.clauses.append([-v, l])
            self.clauses.append([v] + [-l for l in s])
        return v

    def OR(self, lits) -> int:
        return -self.AND([-l for l in lits])

    def EQ(self, a, b) -> int:
        return self.OR([self.AND([a, b]), self.AND([-a, -b])])


class _NodeFunction:
    """DNF selection variables for one node."""

    def __init__(self, c: Circuit, lits, k: int):
        self.lits = lits
        self.k = k
        self.const = c.var()
        self.u = [[c.var() for _ in lits] for _ in range(k)]
        self.used = [c.OR(row) for row in self.u]
        for a, b in zip(self.used, self.used[1:]):
            c.add([-b, a])
        variables = {}
        for t, (j, s) in enumerate(lits):
            variables.setdefault(j, {})[s] = t
        for j, by_sign in variables.items():
            if len(by_sign) == 2:
                pos = c.OR([row[by_sign[1]] for row in self.u])
                neg = c.OR([row[by_sign[-1]] for row in self.u])
                c.add([-pos, -neg])
        self.any_used = self.used[0] if k else c.FALSE

    def decode(self, model: set[int]) -> MonotoneDNF:
        clauses = []
        for row in self.u:
            chosen = [self.lits[t] for t, v in enumerate(row) if v in model]
            if chosen:
                clauses.append(chosen)
        if not clauses:
            return MonotoneDNF.constant(self.const in model)
        return MonotoneDNF.from_clauses(clauses)


class Encoder:
    def __init__(self, problem: SynthesisProblem, depth: int, rounds: int):
        self.problem = problem
        self.n = problem.n
        self.depth = depth
        self.rounds = rounds
        self.c = Circuit()
        g = problem.graph
        self.fns = []
        for i in range(self.n):
            lits = g.in_literals(i)
            d = len({j for j, _ in lits})
            self.fns.append(_NodeFunction(self.c, lits, resolve_bound(problem.bound(i), d)))
        self.eval_cache = {}
        self.sizes = {}

    def eval(self, i, zeros, ones):
        """Literals (can be 0, can be 1) of f_i over the cube (zeros, ones)."""
        fn = self.fns[i]
        key = (i, tuple((zeros[j], ones[j]) for j, _ in fn.lits))
        got = self.eval_cache.get(key)
        if got is not None:
            return got
        c = self.c
        pts, pfs = [], []
        for row, used in zip(fn.u, fn.used):
            sat, fals = [used], [-used]
            for u, (j, s) in zip(row, fn.lits):
                sat.append(c.OR([-u, ones[j] if s > 0 else zeros[j]]))
                fals.append(c.AND([u, zeros[j] if s > 0 else ones[j]]))
            pts.append(c.AND(sat))
            pfs.append(c.OR(fals))
        p1 = c.OR([c.AND([-fn.any_used, fn.const])] + pts)
        p0 = c.OR([c.AND([-fn.any_used, -fn.const]), c.AND([fn.any_used] + pfs)])
        self.eval_cache[key] = (p0, p1)
        return p0, p1

    def _cube(self, x, free):
        c = self.c
        zeros = [c.OR([-x[j], free[j]]) for j in range(self.n)]
        ones = [c.OR([x[j], free[j]]) for j in range(self.n)]
        return zeros, ones

    def _flip(self, x, zeros, ones, j):
        p0, p1 = self.eval(j, zeros, ones)
        return self.c.OR([self.c.AND([x[j], p0]), self.c.AND([-x[j], p1])])

    def closure(self, x, locked):
        """Free-cell literals of the smallest constrained trap space of x."""
        c = self.c
        free = [c.FALSE] * self.n
        for _ in range(self.depth):
            zeros, ones = self._cube(x, free)
            nxt = [c.OR([free[j], c.AND([-locked[j], self._flip(x, zeros, ones, j)])]) for j in range(self.n)]
            if nxt == free:
                return free
            free = nxt
        zeros, ones = self._cube(x, free)
        for j in range(self.n):
            c.add([-c.AND([-locked[j], self._flip(x, zeros, ones, j)]), free[j]])
        return free

    def reach(self, x, y):
        """Literal true iff x ->* y, following the lock iteration."""
        c = self.c
        same = [c.EQ(x[j], y[j]) for j in range(self.n)]
        locked = [c.FALSE] * self.n
        for r in range(self.rounds + 1):
            free = self.closure(x, locked)
            zeros, ones = self._cube(x, free)
            new = []
            for j in range(self.n):
                p0, p1 = self.eval(j, zeros, ones)
                wrong = c.OR([c.AND([y[j], p0, -p1]), c.AND([-y[j], p1, -p0])])
                new.append(c.AND([-locked[j], same[j], free[j], wrong]))
            if all(v == c.FALSE for v in new):
                break
            if r == self.rounds:
                for v in new:
                    c.add([-v])
                break
            locked = [c.OR([locked[j], new[j]]) for j in range(self.n)]
        return c.AND([c.OR([free[j], same[j]]) for j in range(self.n)])

    def _measure(self, key, before):
        self.sizes[key] = self.sizes.get(key, 0) + len(self.c.clauses) - before

    def encode(self):
        p = self.problem
        c = self.c
        self.sizes["functions"] = len(c.clauses)
        self.x = {}
        for o in p.observations:
            self.x[o.name] = [(c.TRUE if o.values[j] else c.FALSE) if j in o.values else c.var()
                              for j in range(self.n)]
        before = len(c.clauses)
        for m in p.fp:
            x = self.x[m]
            for j in range(self.n):
                p0, p1 = self.eval(j, [-v for v in x], x)
                c.add([-x[j], p1])
                c.add([x[j], p0])
        self._measure("fp", before)
        before = len(c.clauses)
        for m, i in p.tp:
            free = self.closure(self.x[m], [c.FALSE] * self.n)
            c.add([-free[i]])
        self._measure("tp", before)
        before = len(c.clauses)
        for a, b in p.pr:
            c.add([self.reach(self.x[a], self.x[b])])
        self._measure("pr", before)
        before = len(c.clauses)
        for a, b in p.nr:
            c.add([-self.reach(self.x[a], self.x[b])])
        self._measure("nr", before)
        before = len(c.clauses)
        for a, b in p.distinct_pairs():
            xa, xb = self.x[a], self.x[b]
            c.add([-c.EQ(xa[j], xb[j]) for j in range(self.n)])
        self._measure("distinct", before)
        return c

    def decode(self, model) -> Solution:
        pos = {v for v in model if v > 0}
        f = BooleanNetwork([fn.decode(pos) for fn in self.fns], self.problem.graph.names)
        witness = {}
        for name, x in self.x.items():
            bits = 0
            for j, v in enumerate(x):
                if (v > 0 and v in pos) or (v < 0 and -v not in pos):
                    bits |= 1 << j
            witness[name] = Configuration(self.n, bits)
        return Solution(f, witness)

    def blocking_clause(self, model) -> list[int]:
        pos = {v for v in model if v > 0}
        out = []
        for fn in self.fns:
            for row in fn.u:
                out += [-v if v in pos else v for v in row]
            out.append(-fn.const if fn.const in pos else fn.const)
        return out


def _ladder(n):
    full = n + 1
    levels = []
    for d, r in ((8, 4), (16, 8), (32, 16), (full, full)):
        lv = (min(d, full), min(r, full))
        if lv not in levels:
            levels.append(lv)
    return levels


def sat_first_solution(problem: SynthesisProblem, time_budget: Optional[float] = None,
                       stats: Optional[dict] = None) -> Optional[Solution]:
    """One verified solution, or None when the complete encoding is unsatisfiable."""
    from .synthesis import check_problem, verify_solution

    deadline = None if time_budget is None else time.monotonic() + time_budget
    stats = {} if stats is None else stats
    stats.update(engine="sat", levels=[], peak_clauses=0, peak_vars=0)
    for depth, rounds in _ladder(problem.n):
        enc = Encoder(problem, depth, rounds)
        circuit = enc.encode()
        level = {"depth": depth, "rounds": rounds, "vars": circuit.nv,
                 "clauses": len(circuit.clauses), "clauses_by_constraint": dict(enc.sizes)}
        stats["levels"].append(level)
        stats["peak_clauses"] = max(stats["peak_clauses"], len(circuit.clauses))
        stats["peak_vars"] = max(stats["peak_vars"], circuit.nv)
        with Solver(name=SOLVER, bootstrap_with=circuit.clauses) as solver:
            while True:
                remaining = None if deadline is None else deadline - time.monotonic()
                if remaining is not None and remaining <= 0:
                    raise CapacityError("SAT search time budget exceeded", {"levels": stats["levels"]})
                timer = None
                if remaining is not None:
                    timer = threading.Timer(remaining, solver.interrupt)
                    timer.start()
                try:
                    result = solver.solve_limited(expect_interrupt=True)
                finally:
                    if timer is not None:
                        timer.cancel()
                if result is None:
                    raise CapacityError("SAT search time budget exceeded", {"levels": stats["levels"]})
                if not result:
                    break
                model = solver.get_model()
                sol = enc.decode(model)
                if verify_solution(problem, sol):
                    return sol
                witness = check_problem(sol.network, problem)
                if witness is not None:
                    return Solution(sol.network, witness)
                solver.add_clause(enc.blocking_clause(model))
    return None
