"""Most permissive semantics: hypercube evaluation, trap spaces, reachability.

Public functions take :class:`BooleanNetwork` plus configurations given as
strings, 0/1 sequences or :class:`Configuration`. The ``_``-prefixed
helpers work on raw bitmasks and are what the synthesis engine calls in
its inner loops.
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

from .core import (
    BooleanNetwork,
    DimensionError,
    Hypercube,
    MonotoneDNF,
    as_configuration,
)

DEFAULT_MAX_ATTRACTOR_DIMENSION = 16


class CapacityError(RuntimeError):
    """An operation refused an input beyond its configured capacity."""

    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = progress or {}


class PossibleValues(NamedTuple):
    can_be_0: bool
    can_be_1: bool


class Compiled:
    """Bitmask view of a network used by the fast paths."""

    __slots__ = ("n", "full", "consts", "clauses", "dependents")

    def __init__(self, f: BooleanNetwork):
        n = f.n
        self.n = n
        self.full = (1 << n) - 1
        self.consts = [int(d.const) if d.is_constant else None for d in f.locals]
        self.clauses = [d.clauses for d in f.locals]
        deps = [[] for _ in range(n)]
        for i, d in enumerate(f.locals):
            m = d.support_mask
            j = 0
            while m:
                if m & 1:
                    deps[j].append(i)
                m >>= 1
                j += 1
        self.dependents = deps


def compiled(f: BooleanNetwork) -> Compiled:
    c = f._compiled
    if c is None:
        c = f._compiled = Compiled(f)
    return c


def _possible(cf: Compiled, i: int, zeros: int, ones: int) -> tuple[bool, bool]:
    c = cf.consts[i]
    if c is not None:
        return (not c, bool(c))
    clauses = cf.clauses[i]
    p1 = False
    p0 = True
    for pos, neg in clauses:
        if not p1 and pos & ~ones == 0 and neg & ~zeros == 0:
            p1 = True
        if p0 and not (pos & zeros or neg & ones):
            p0 = False
        if p1 and not p0:
            break
    return (p0, p1)


def _closure(cf: Compiled, x: int, locked: int = 0, zeros: int = None, ones: int = None):
    """Least L-constrained trap space containing the start cube.

    Starts from point ``x`` (or the cube ``zeros``/``ones`` when given) and
    frees cells outside ``locked`` whose local function admits the opposite
    value, re-examining only dependents of freed cells.
    """
    if zeros is None:
        ones = x
        zeros = ~x & cf.full
    deps = cf.dependents
    queue = deque(i for i in range(cf.n) if not (locked >> i) & 1)
    queued = cf.full & ~locked
    while queue:
        i = queue.popleft()
        bit = 1 << i
        queued &= ~bit
        if zeros & ones & bit:
            continue
        p0, p1 = _possible(cf, i, zeros, ones)
        if (p0 if ones & bit else p1):
            zeros |= bit
            ones |= bit
            for j in deps[i]:
                jb = 1 << j
                if not (locked & jb or queued & jb or zeros & ones & jb):
                    queued |= jb
                    queue.append(j)
    return zeros, ones


def _reachable(cf: Compiled, x: int, y: int) -> bool:
    if x == y:
        return True
    full = cf.full
    same = ~(x ^ y) & full
    locked = 0
    while True:
        zeros, ones = _closure(cf, x, locked)
        if y & ~ones or ~y & full & ~zeros:
            # cubes only shrink as locks are added
            return False
        candidates = same & zeros & ones & ~locked
        new = 0
        i = 0
        while candidates:
            if candidates & 1:
                p0, p1 = _possible(cf, i, zeros, ones)
                if (y >> i) & 1:
                    if p0 and not p1:
                        new |= 1 << i
                elif p1 and not p0:
                    new |= 1 << i
            candidates >>= 1
            i += 1
        if not new:
            return True
        locked |= new


def _is_fixpoint(cf: Compiled, x: int) -> bool:
    zeros = ~x & cf.full
    for i in range(cf.n):
        p0, p1 = _possible(cf, i, zeros, x)
        if (x >> i) & 1:
            if not p1:
                return False
        elif not p0:
            return False
    return True


def eval_on_hypercube(dnf: MonotoneDNF, h) -> PossibleValues:
    """Values ``dnf`` can take over the configurations of ``h``."""
    if isinstance(h, str):
        h = Hypercube.from_string(h)
    if dnf.support_mask >> h.n:
        raise DimensionError("local function refers to a component beyond the hypercube")
    if dnf.is_constant:
        return PossibleValues(not dnf.const, bool(dnf.const))
    p1 = any(p & ~h.ones == 0 and q & ~h.zeros == 0 for p, q in dnf.clauses)
    p0 = all(p & h.zeros or q & h.ones for p, q in dnf.clauses)
    return PossibleValues(bool(p0), bool(p1))


def smallest_constrained_trap_space(f: BooleanNetwork, x, locked=()) -> Hypercube:
    """Smallest hypercube containing ``x`` closed under ``f`` outside ``locked``."""
    x = as_configuration(x, f.n)
    lmask = 0
    for i in locked:
        if not 0 <= i < f.n:
            raise DimensionError(f"locked component {i} out of range")
        lmask |= 1 << i
    zeros, ones = _closure(compiled(f), x.bits, lmask)
    return Hypercube(f.n, zeros, ones)


def smallest_trap_space(f: BooleanNetwork, x) -> Hypercube:
    return smallest_constrained_trap_space(f, x, ())


def is_reachable(f: BooleanNetwork, x, y) -> bool:
    """Decide ``x ->* y`` under the most permissive semantics.

    Lock iteration: start with no locked component, compute the smallest
    constrained trap space, lock every free component that agrees in x and y
    but whose function can only produce the opposite value there, and repeat
    until no new lock appears (at most n rounds).
    """
    x = as_configuration(x, f.n)
    y = as_configuration(y, f.n)
    return _reachable(compiled(f), x.bits, y.bits)


def is_fixpoint(f: BooleanNetwork, x) -> bool:
    x = as_configuration(x, f.n)
    return _is_fixpoint(compiled(f), x.bits)


def trap_component_fixed(f: BooleanNetwork, x, i: int) -> bool:
    """Whether component ``i`` is fixed in the smallest trap space of ``x``."""
    if not 0 <= i < f.n:
        raise IndexError(f"component {i} out of range for dimension {f.n}")
    x = as_configuration(x, f.n)
    zeros, ones = _closure(compiled(f), x.bits)
    return not (zeros & ones) >> i & 1


def attractors(f: BooleanNetwork, max_dimension: int = DEFAULT_MAX_ATTRACTOR_DIMENSION) -> list[Hypercube]:
    """Minimal trap spaces of ``f``, sorted by their string rendering.

    Every minimal trap space is the smallest trap space of any of its
    configurations, so the minimal elements among the 2**n smallest trap
    spaces are exactly the attractors.
    """
    n = f.n
    if n > max_dimension:
        raise CapacityError(f"attractors: dimension {n} exceeds cap {max_dimension}")
    cf = compiled(f)
    spaces = {_closure(cf, x) for x in range(1 << n)}
    ordered = sorted(spaces, key=lambda t: bin(t[0] & t[1]).count("1"))
    minimal = []
    for z, o in ordered:
        if not any(mz & ~z == 0 and mo & ~o == 0 for mz, mo in minimal):
            minimal.append((z, o))
    return sorted((Hypercube(n, z, o) for z, o in minimal), key=str)
