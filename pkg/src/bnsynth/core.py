"""Configurations, hypercubes, signed influence graphs and canonical monotone DNFs.

Component indices are 0-based in the Python API. File formats and string
renderings use node declaration order, so character ``i`` of ``"01*"`` is
component ``i``.

Bit ``i`` of an integer mask always refers to component ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

POS = 1
NEG = -1
FREE = "*"


class DimensionError(ValueError):
    """Raised when objects of different dimension are combined."""


def _bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _sign(s) -> int:
    if s in (POS, "+", True):
        return POS
    if s in (NEG, "-", False):
        return NEG
    raise ValueError(f"invalid literal sign {s!r}")


@dataclass(frozen=True)
class Configuration:
    n: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise DimensionError(f"bits {self.bits:#x} do not fit dimension {self.n}")

    @classmethod
    def from_string(cls, s: str) -> "Configuration":
        if any(c not in "01" for c in s):
            raise ValueError(f"configuration string must be over {{0,1}}: {s!r}")
        return cls(len(s), sum(1 << i for i, c in enumerate(s) if c == "1"))

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "Configuration":
        return cls(len(values), sum(1 << i for i, v in enumerate(values) if v))

    def __len__(self):
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self):
        return (self[i] for i in range(self.n))

    def __str__(self):
        return "".join(str(v) for v in self)

    def __repr__(self):
        return f"Configuration({str(self)!r})"


def as_configuration(x, n: Optional[int] = None) -> Configuration:
    """Coerce a string, 0/1 sequence or Configuration, checking dimension ``n``."""
    if isinstance(x, Configuration):
        cfg = x
    elif isinstance(x, str):
        cfg = Configuration.from_string(x)
    else:
        cfg = Configuration.from_values(list(x))
    if n is not None and cfg.n != n:
        raise DimensionError(f"configuration {cfg} has dimension {cfg.n}, expected {n}")
    return cfg


def config_diff(x, y) -> set[int]:
    """Indices where two configurations differ."""
    x = as_configuration(x)
    y = as_configuration(y, x.n)
    return set(_bits(x.bits ^ y.bits))


@dataclass(frozen=True)
class Hypercube:
    """A meta-configuration over {0, 1, *}.

    ``zeros`` has bit ``i`` set when cell ``i`` admits 0, ``ones`` when it
    admits 1; a free cell admits both.
    """

    n: int
    zeros: int
    ones: int

    def __post_init__(self):
        full = (1 << self.n) - 1
        if (self.zeros | self.ones) != full or (self.zeros | self.ones) >> self.n:
            raise DimensionError("every cell must admit at least one value")

    @classmethod
    def from_string(cls, s: str) -> "Hypercube":
        zeros = ones = 0
        for i, c in enumerate(s):
            if c == "0":
                zeros |= 1 << i
            elif c == "1":
                ones |= 1 << i
            elif c == FREE:
                zeros |= 1 << i
                ones |= 1 << i
            else:
                raise ValueError(f"hypercube string must be over {{0,1,*}}: {s!r}")
        return cls(len(s), zeros, ones)

    @classmethod
    def point(cls, x) -> "Hypercube":
        x = as_configuration(x)
        full = (1 << x.n) - 1
        return cls(x.n, ~x.bits & full, x.bits)

    @property
    def free_mask(self) -> int:
        return self.zeros & self.ones

    @property
    def free(self) -> set[int]:
        return set(_bits(self.free_mask))

    def __len__(self):
        return self.n

    def __getitem__(self, i: int):
        if not 0 <= i < self.n:
            raise IndexError(i)
        z, o = (self.zeros >> i) & 1, (self.ones >> i) & 1
        return FREE if z and o else o

    def __str__(self):
        return "".join(str(self[i]) for i in range(self.n))

    def __repr__(self):
        return f"Hypercube({str(self)!r})"

    def __contains__(self, x) -> bool:
        x = as_configuration(x, self.n)
        full = (1 << self.n) - 1
        return (x.bits & ~self.ones) == 0 and (~x.bits & full & ~self.zeros) == 0

    def configurations(self) -> Iterator[Configuration]:
        """Enumerate c(h); yields 2**(number of free cells) configurations."""
        free = sorted(self.free)
        base = self.ones & ~self.zeros
        for vals in product((0, 1), repeat=len(free)):
            bits = base
            for i, v in zip(free, vals):
                if v:
                    bits |= 1 << i
            yield Configuration(self.n, bits)

    def is_smaller(self, other: "Hypercube") -> bool:
        """True when c(self) is included in c(other)."""
        if other.n != self.n:
            raise DimensionError("hypercube dimensions differ")
        return (self.zeros & ~other.zeros) == 0 and (self.ones & ~other.ones) == 0


@dataclass(frozen=True)
class Literal:
    var: int
    sign: int = POS

    def __post_init__(self):
        object.__setattr__(self, "sign", _sign(self.sign))
        if self.var < 0:
            raise ValueError("literal variable must be a component index >= 0")


def _clause_masks(clause) -> tuple[int, int]:
    """Return (pos, neg) masks of a clause given as iterable of (var, sign)."""
    pos = neg = 0
    seen = set()
    for lit in clause:
        var, sign = (lit.var, lit.sign) if isinstance(lit, Literal) else (lit[0], _sign(lit[1]))
        if var in seen:
            raise ValueError(f"variable {var} occurs twice in a clause")
        seen.add(var)
        if sign == POS:
            pos |= 1 << var
        else:
            neg |= 1 << var
    if not seen:
        raise ValueError("empty clause; use MonotoneDNF.constant for constants")
    return pos, neg


def _clause_key(masks: tuple[int, int]):
    vs = tuple(_bits(masks[0] | masks[1]))
    return (len(vs), vs)


def is_canonical(clauses) -> bool:
    """Check monotonicity, antichain and ordering rules on a clause list.

    ``clauses`` is a sequence of clauses, each an iterable of ``(var, sign)``
    pairs or :class:`Literal`. Malformed clauses (empty, repeated variable)
    are reported as non-canonical.
    """
    try:
        masks = [_clause_masks(c) for c in clauses]
    except ValueError:
        return False
    if not masks:
        return False
    pos = neg = 0
    for p, q in masks:
        pos |= p
        neg |= q
    if pos & neg:
        return False
    for a in range(len(masks)):
        va = masks[a][0] | masks[a][1]
        for b in range(len(masks)):
            if a != b:
                vb = masks[b][0] | masks[b][1]
                if va & vb == va:
                    return False
    keys = [_clause_key(m) for m in masks]
    return all(k1 < k2 for k1, k2 in zip(keys, keys[1:]))


@dataclass(frozen=True)
class MonotoneDNF:
    """Local function of one component in canonical antichain form.

    Either ``const`` is a bool and ``clauses`` is empty, or ``const`` is None
    and ``clauses`` holds canonical ``(pos_mask, neg_mask)`` pairs.
    Use :meth:`constant` or :meth:`from_clauses` rather than the raw
    constructor.
    """

    const: Optional[bool] = None
    clauses: tuple = ()

    def __post_init__(self):
        if (self.const is None) == (not self.clauses):
            raise ValueError("a MonotoneDNF is either a constant or a non-empty clause list")

    @classmethod
    def constant(cls, value) -> "MonotoneDNF":
        return cls(const=bool(value))

    @classmethod
    def from_clauses(cls, clauses) -> "MonotoneDNF":
        """Build the canonical form of a monotone DNF.

        Subsumed clauses are dropped and the rest sorted, so any DNF of the
        function maps to the same value. Raises ValueError if a variable is
        used with both signs.
        """
        masks = {_clause_masks(c) for c in clauses}
        if not masks:
            return cls.constant(False)
        pos = neg = 0
        for p, q in masks:
            pos |= p
            neg |= q
        if pos & neg:
            raise ValueError("variable used with both signs; function is not monotone")
        kept = [m for m in masks
                if not any(o != m and (o[0] | o[1]) & ~(m[0] | m[1]) == 0 for o in masks)]
        return cls(clauses=tuple(sorted(kept, key=_clause_key)))

    @property
    def is_constant(self) -> bool:
        return self.const is not None

    @property
    def positive_mask(self) -> int:
        m = 0
        for p, _ in self.clauses:
            m |= p
        return m

    @property
    def negative_mask(self) -> int:
        m = 0
        for _, q in self.clauses:
            m |= q
        return m

    @property
    def support_mask(self) -> int:
        return self.positive_mask | self.negative_mask

    def literals(self) -> set[tuple[int, int]]:
        out = {(v, POS) for v in _bits(self.positive_mask)}
        out |= {(v, NEG) for v in _bits(self.negative_mask)}
        return out

    def clause_lists(self) -> list[list[tuple[int, int]]]:
        """Clauses as lists of ``(var, sign)`` in index order."""
        return [sorted([(v, POS) for v in _bits(p)] + [(v, NEG) for v in _bits(q)])
                for p, q in self.clauses]

    def __call__(self, x) -> int:
        return eval_local(self, x)

    def render(self, names: Optional[Sequence[str]] = None) -> str:
        if self.is_constant:
            return "1" if self.const else "0"
        name = (lambda v: names[v]) if names else (lambda v: f"x{v}")
        parts = []
        for clause in self.clause_lists():
            lits = [("" if s == POS else "!") + name(v) for v, s in clause]
            body = " & ".join(lits)
            parts.append(f"({body})" if len(lits) > 1 and len(self.clauses) > 1 else body)
        return " | ".join(parts)


def eval_local(dnf: MonotoneDNF, x) -> int:
    x = as_configuration(x)
    if dnf.is_constant:
        return int(dnf.const)
    if dnf.support_mask >> x.n:
        raise DimensionError("local function refers to a component beyond the configuration")
    b = x.bits
    return int(any(p & ~b == 0 and q & b == 0 for p, q in dnf.clauses))


@dataclass(frozen=True)
class InfluenceGraph:
    n: int
    e_plus: frozenset = frozenset()
    e_minus: frozenset = frozenset()
    names: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "e_plus", frozenset(tuple(e) for e in self.e_plus))
        object.__setattr__(self, "e_minus", frozenset(tuple(e) for e in self.e_minus))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.n:
                raise DimensionError("names length differs from n")
        for j, i in self.e_plus | self.e_minus:
            if not (0 <= j < self.n and 0 <= i < self.n):
                raise DimensionError(f"edge ({j}, {i}) outside 0..{self.n - 1}")

    def in_literals(self, i: int) -> list[tuple[int, int]]:
        """Allowed signed literals for node ``i``, sorted by (var, sign)."""
        lits = [(j, POS) for j, t in self.e_plus if t == i]
        lits += [(j, NEG) for j, t in self.e_minus if t == i]
        return sorted(lits, key=lambda l: (l[0], -l[1]))

    def in_degree(self, i: int) -> int:
        return len({j for j, _ in self.in_literals(i)})

    def edges(self) -> list[tuple[int, int, int]]:
        """All signed edges as ``(source, target, sign)``, sorted."""
        out = [(j, i, POS) for j, i in self.e_plus] + [(j, i, NEG) for j, i in self.e_minus]
        return sorted(out, key=lambda e: (e[1], e[0], -e[2]))


def is_subgraph(g: InfluenceGraph, h: InfluenceGraph) -> bool:
    if g.n != h.n:
        raise DimensionError("influence graphs of different dimension")
    return g.e_plus <= h.e_plus and g.e_minus <= h.e_minus


class BooleanNetwork:
    """Immutable vector of canonical local functions."""

    __slots__ = ("locals", "names", "_compiled")

    def __init__(self, functions: Iterable[MonotoneDNF], names: Optional[Sequence[str]] = None):
        self.locals = tuple(functions)
        self.names = tuple(names) if names is not None else None
        self._compiled = None
        n = len(self.locals)
        if self.names is not None and len(self.names) != n:
            raise DimensionError("names length differs from number of functions")
        for i, f in enumerate(self.locals):
            if not isinstance(f, MonotoneDNF):
                raise TypeError(f"local function {i} is not a MonotoneDNF")
            if f.support_mask >> n:
                raise DimensionError(f"local function {i} refers to a component >= {n}")

    @property
    def n(self) -> int:
        return len(self.locals)

    def __len__(self):
        return self.n

    def __getitem__(self, i: int) -> MonotoneDNF:
        return self.locals[i]

    def __iter__(self):
        return iter(self.locals)

    def __eq__(self, other):
        return isinstance(other, BooleanNetwork) and self.locals == other.locals

    def __hash__(self):
        return hash(self.locals)

    def __call__(self, x) -> Configuration:
        x = as_configuration(x, self.n)
        return Configuration(self.n, sum(eval_local(f, x) << i for i, f in enumerate(self.locals)))

    def __repr__(self):
        return f"BooleanNetwork({self.render()!r})"

    def node_names(self) -> tuple:
        return self.names if self.names is not None else tuple(f"x{i}" for i in range(self.n))

    def render(self) -> str:
        names = self.node_names()
        return "\n".join(f"{names[i]} := {f.render(names)}" for i, f in enumerate(self.locals))


def influence_graph_of(f: BooleanNetwork) -> InfluenceGraph:
    """Signed influence graph of ``f``.

    Canonical antichain DNFs are irredundant, so every literal occurring in
    a local function is an actual influence with that sign.
    """
    plus, minus = set(), set()
    for i, dnf in enumerate(f.locals):
        for v, s in dnf.literals():
            (plus if s == POS else minus).add((v, i))
    return InfluenceGraph(f.n, frozenset(plus), frozenset(minus), f.names)
