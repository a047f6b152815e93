"""Enumeration of canonical local functions allowed by an influence graph."""

from __future__ import annotations

from itertools import product
from math import comb
from typing import Iterator, Union

import numpy as np

from .core import NEG, POS, InfluenceGraph, MonotoneDNF
from .semantics import CapacityError

MAX = "max"

ClauseBound = Union[int, str, None]


def max_clauses(d: int) -> int:
    """Largest antichain over ``d`` variables (Sperner)."""
    return comb(d, d // 2)


def resolve_bound(k: ClauseBound, d: int) -> int:
    if k is None or k == MAX:
        return max_clauses(d)
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"clause bound must be a non-negative integer or 'max', got {k!r}")
    return min(k, max_clauses(d))


def _subsets(d: int) -> list[int]:
    masks = range(1, 1 << d)
    return sorted(masks, key=lambda m: (bin(m).count("1"), [i for i in range(d) if m >> i & 1]))


def antichains(d: int, k: ClauseBound = MAX) -> Iterator[tuple[int, ...]]:
    """Non-empty antichains of non-empty subsets of ``range(d)``.

    Yields tuples of subset masks already in canonical clause order, by
    increasing size, then lexicographically. At most ``k`` members.
    """
    k = resolve_bound(k, d)
    subsets = _subsets(d)
    m = len(subsets)

    def extend(start, chosen, size):
        if len(chosen) == size:
            yield tuple(chosen)
            return
        for idx in range(start, m):
            s = subsets[idx]
            for c in chosen:
                inter = s & c
                if inter == s or inter == c:
                    break
            else:
                chosen.append(s)
                yield from extend(idx + 1, chosen, size)
                chosen.pop()

    for size in range(1, k + 1):
        yield from extend(0, [], size)


def _count_antichains(d: int, k: int) -> int:
    subsets = _subsets(d)
    m = len(subsets)

    def count(start, chosen):
        total = 1 if chosen else 0
        if len(chosen) == k:
            return total
        for idx in range(start, m):
            s = subsets[idx]
            for c in chosen:
                inter = s & c
                if inter == s or inter == c:
                    break
            else:
                chosen.append(s)
                total += count(idx + 1, chosen)
                chosen.pop()
        return total

    return count(0, [])


def truth_table(antichain, d: int) -> int:
    """Truth table of the positive DNF ``antichain`` as a 2**d-bit integer."""
    tt = 0
    for a in range(1 << d):
        if any(s & ~a == 0 for s in antichain):
            tt |= 1 << a
    return tt


def monotone_truth_tables(d: int) -> list[int]:
    """All monotone functions of ``d`` positive variables, as truth tables."""
    tables = [0, (1 << (1 << d)) - 1]
    tables += [truth_table(a, d) for a in antichains(d)]
    return tables


def dedekind(d: int) -> int:
    """Number of monotone Boolean functions of ``d`` variables.

    Up to 5 variables the antichains are counted directly. For 6, each
    function splits on its last variable into a pair g <= h of 5-variable
    monotone functions, and those pairs are counted from truth tables.
    """
    if d <= 5:
        return 2 + _count_antichains(d, max_clauses(d))
    if d == 6:
        tables = np.array(monotone_truth_tables(5), dtype=np.uint64)
        return int(sum(int(np.count_nonzero((tables & ~h) == 0)) for h in tables))
    raise CapacityError(f"Dedekind number for d={d} is beyond the supported range (d <= 6)")


def candidate_count(d: int, k: ClauseBound = MAX) -> int:
    """Number of candidates for a node with ``d`` single-sign inputs."""
    kk = resolve_bound(k, d)
    if kk == max_clauses(d):
        return dedekind(d)
    return 2 + _count_antichains(d, kk)


def enumerate_local_candidates(node: int, graph: InfluenceGraph, k: ClauseBound = MAX) -> Iterator[MonotoneDNF]:
    """Every canonical monotone DNF for ``node`` with at most ``k`` clauses.

    Literals come from the in-edges of ``node``; a source with both signs
    may appear with either sign but only one per candidate. Order: constant
    0, constant 1, then by clause count, clause sequence, and sign choices
    (positive first) for both-sign variables.
    """
    lits = graph.in_literals(node)
    variables = sorted({v for v, _ in lits})
    signs = {v: [s for u, s in lits if u == v] for v in variables}
    d = len(variables)
    yield MonotoneDNF.constant(False)
    yield MonotoneDNF.constant(True)
    for chain in antichains(d, k):
        used = 0
        for s in chain:
            used |= s
        choices = [signs[variables[t]] if used >> t & 1 else [POS] for t in range(d)]
        for combo in product(*choices):
            neg_local = 0
            for t, sg in enumerate(combo):
                if sg == NEG:
                    neg_local |= 1 << t
            clauses = []
            for s in chain:
                pos = neg = 0
                for t in range(d):
                    if s >> t & 1:
                        if neg_local >> t & 1:
                            neg |= 1 << variables[t]
                        else:
                            pos |= 1 << variables[t]
                clauses.append((pos, neg))
            yield MonotoneDNF(clauses=tuple(clauses))


def node_candidate_count(node: int, graph: InfluenceGraph, k: ClauseBound = MAX) -> int:
    """Size of :func:`enumerate_local_candidates` without materialising it.

    Only needed when some source carries both signs; then each antichain
    contributes 2**(both-sign variables it uses).
    """
    lits = graph.in_literals(node)
    variables = sorted({v for v, _ in lits})
    d = len(variables)
    both = 0
    for t, v in enumerate(variables):
        if sum(1 for u, _ in lits if u == v) == 2:
            both |= 1 << t
    if not both:
        return candidate_count(d, k)
    total = 2
    for chain in antichains(d, k):
        used = 0
        for s in chain:
            used |= s
        total += 1 << bin(used & both).count("1")
    return total


def candidate_space_size(graph: InfluenceGraph, k: ClauseBound = MAX) -> int:
    """Product over nodes of the number of local candidates."""
    total = 1
    for i in range(graph.n):
        total *= node_candidate_count(i, graph, k)
    return total
