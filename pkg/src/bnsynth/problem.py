"""Synthesis problem and solution types."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Optional, Union

from .candidates import MAX, resolve_bound
from .core import BooleanNetwork, Configuration, InfluenceGraph


class ProblemError(ValueError):
    """Invalid problem; ``code`` is a stable diagnostic identifier."""

    def __init__(self, code: str, path: str, message: str):
        super().__init__(f"[{code}] {path}: {message}")
        self.code = code
        self.path = path


@dataclass(frozen=True)
class Observation:
    name: str
    values: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "values", dict(sorted(self.values.items())))

    def mask(self) -> tuple[int, int]:
        """(observed components mask, observed values mask)."""
        m = v = 0
        for i, b in self.values.items():
            m |= 1 << i
            if b:
                v |= 1 << i
        return m, v


@dataclass(frozen=True)
class SynthesisProblem:
    """Influence graph, partial observations and dynamical constraints.

    ``pr``/``nr`` hold observation-name pairs, ``fp`` names, ``tp``
    ``(name, component)`` pairs. ``distinct`` lists groups of observations
    whose completions must be pairwise different. ``max_clauses`` is an int,
    ``"max"``, or a mapping node -> bound (missing nodes default to "max").
    """

    graph: InfluenceGraph
    observations: tuple = ()
    pr: tuple = ()
    nr: tuple = ()
    fp: tuple = ()
    tp: tuple = ()
    max_clauses: Union[int, str, Mapping[int, Union[int, str]]] = MAX
    distinct: tuple = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        obs = tuple(o if isinstance(o, Observation) else Observation(*o) for o in self.observations)
        object.__setattr__(self, "observations", obs)
        object.__setattr__(self, "pr", tuple(tuple(p) for p in self.pr))
        object.__setattr__(self, "nr", tuple(tuple(p) for p in self.nr))
        object.__setattr__(self, "fp", tuple(self.fp))
        object.__setattr__(self, "tp", tuple(tuple(p) for p in self.tp))
        object.__setattr__(self, "distinct", tuple(tuple(g) for g in self.distinct))
        if isinstance(self.max_clauses, Mapping):
            object.__setattr__(self, "max_clauses", dict(self.max_clauses))
        self._validate()
        object.__setattr__(self, "_index", {o.name: k for k, o in enumerate(obs)})

    def _validate(self):
        n = self.graph.n
        names = set()
        for k, o in enumerate(self.observations):
            if o.name in names:
                raise ProblemError("duplicate-observation", f"observations[{k}]", f"observation {o.name!r} declared twice")
            names.add(o.name)
            for i, v in o.values.items():
                if not (isinstance(i, int) and 0 <= i < n):
                    raise ProblemError("unknown-reference", f"observations.{o.name}", f"component {i!r} out of range")
                if v not in (0, 1):
                    raise ProblemError("bad-value", f"observations.{o.name}.{i}", f"value must be 0 or 1, got {v!r}")

        def ref(name, path):
            if name not in names:
                raise ProblemError("unknown-reference", path, f"undeclared observation {name!r}")

        for key in ("pr", "nr"):
            for k, pair in enumerate(getattr(self, key)):
                if len(pair) != 2:
                    raise ProblemError("schema", f"{key}[{k}]", "expected a pair of observation names")
                ref(pair[0], f"{key}[{k}][0]")
                ref(pair[1], f"{key}[{k}][1]")
        for k, name in enumerate(self.fp):
            ref(name, f"fp[{k}]")
        for k, pair in enumerate(self.tp):
            if len(pair) != 2:
                raise ProblemError("schema", f"tp[{k}]", "expected (observation, component)")
            ref(pair[0], f"tp[{k}][0]")
            if not (isinstance(pair[1], int) and 0 <= pair[1] < n):
                raise ProblemError("unknown-reference", f"tp[{k}][1]", f"component {pair[1]!r} out of range")
        for k, group in enumerate(self.distinct):
            for t, name in enumerate(group):
                ref(name, f"distinct[{k}][{t}]")
        bounds = self.max_clauses.values() if isinstance(self.max_clauses, dict) else [self.max_clauses]
        if isinstance(self.max_clauses, dict):
            for i in self.max_clauses:
                if not (isinstance(i, int) and 0 <= i < n):
                    raise ProblemError("unknown-reference", "max_clauses", f"component {i!r} out of range")
        for b in bounds:
            try:
                resolve_bound(b, 0)
            except ValueError as e:
                raise ProblemError("bad-value", "max_clauses", str(e)) from None

    @property
    def n(self) -> int:
        return self.graph.n

    def observation(self, name: str) -> Observation:
        return self.observations[self._index[name]]

    def bound(self, node: int):
        """Clause bound for ``node`` (int or "max")."""
        if isinstance(self.max_clauses, dict):
            return self.max_clauses.get(node, MAX)
        return self.max_clauses

    def with_constraints(self, **changes) -> "SynthesisProblem":
        """Copy with some fields replaced, e.g. ``nr=()`` to drop NR."""
        return replace(self, **changes)

    def distinct_pairs(self) -> list[tuple[str, str]]:
        pairs = []
        for group in self.distinct:
            for a in range(len(group)):
                for b in range(a + 1, len(group)):
                    pairs.append((group[a], group[b]))
        return pairs


@dataclass
class Solution:
    network: BooleanNetwork
    witness: Optional[dict[str, Configuration]] = None
