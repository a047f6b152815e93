"""JSON model and problem files.

Model file::

    {"nodes": ["a", "b"],
     "functions": {"a": {"const": 1},
                   "b": {"clauses": [[{"var": "a", "sign": "-"}]]}}}

Problem file::

    {"nodes": [...],
     "edges": [{"from": "a", "to": "b", "sign": "+"}, ...],
     "observations": {"o1": {"a": 1, "b": 0}, ...},
     "constraints": {"reach": [["o1", "o2"]], "nonreach": [], "fixpoint": ["o2"],
                     "trap": [["o2", "a"]]},
     "options": {"max_clauses": "max", "distinct": [["o1", "o2"]]}}

Node declaration order defines component indices, literal order and every
configuration string.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .candidates import MAX
from .core import NEG, POS, BooleanNetwork, Configuration, InfluenceGraph, MonotoneDNF
from .problem import Observation, ProblemError, Solution, SynthesisProblem


class _Obj(dict):
    """JSON object remembering duplicated keys."""

    duplicates: list


def _pairs_hook(pairs):
    obj = _Obj()
    obj.duplicates = []
    for k, v in pairs:
        if k in obj:
            obj.duplicates.append((k, obj[k], v))
        obj[k] = v
    return obj


def _load(text: str) -> Any:
    try:
        return json.loads(text, object_pairs_hook=_pairs_hook)
    except json.JSONDecodeError as e:
        raise ProblemError("json", f"line {e.lineno} column {e.colno}", e.msg) from None


def _read(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ProblemError("io", str(path), e.strerror or str(e)) from None
    return _load(text)


def _expect(value, typ, path, what):
    if not isinstance(value, typ) or (typ is int and isinstance(value, bool)):
        raise ProblemError("schema", path, f"expected {what}")
    return value


def _no_dups(obj, path):
    if isinstance(obj, _Obj) and obj.duplicates:
        raise ProblemError("schema", path, f"duplicate key {obj.duplicates[0][0]!r}")


def _nodes(data, path="nodes"):
    nodes = _expect(data.get("nodes"), list, path, "a list of node names")
    index = {}
    for k, name in enumerate(nodes):
        _expect(name, str, f"{path}[{k}]", "a node name string")
        if name in index:
            raise ProblemError("duplicate-node", f"{path}[{k}]", f"node {name!r} declared twice")
        index[name] = k
    return nodes, index


def _node_ref(index, name, path):
    if not isinstance(name, str) or name not in index:
        raise ProblemError("unknown-reference", path, f"unknown node {name!r}")
    return index[name]


def _sign(s, path):
    if s == "+":
        return POS
    if s == "-":
        return NEG
    raise ProblemError("bad-value", path, f"sign must be '+' or '-', got {s!r}")


# ---- models ---------------------------------------------------------------

def model_from_dict(data) -> BooleanNetwork:
    _expect(data, dict, "$", "a JSON object")
    _no_dups(data, "$")
    nodes, index = _nodes(data)
    functions = _expect(data.get("functions"), dict, "functions", "an object node -> function")
    _no_dups(functions, "functions")
    for name in functions:
        _node_ref(index, name, f"functions.{name}")
    locals_ = []
    for name in nodes:
        path = f"functions.{name}"
        entry = functions.get(name)
        if entry is None:
            raise ProblemError("schema", path, "missing local function")
        _expect(entry, dict, path, "an object with 'const' or 'clauses'")
        if "const" in entry:
            v = entry["const"]
            if v not in (0, 1) or isinstance(v, float):
                raise ProblemError("bad-value", f"{path}.const", "constant must be 0 or 1")
            locals_.append(MonotoneDNF.constant(v))
            continue
        clauses = _expect(entry.get("clauses"), list, f"{path}.clauses", "a list of clauses")
        parsed = []
        for c, clause in enumerate(clauses):
            cpath = f"{path}.clauses[{c}]"
            _expect(clause, list, cpath, "a list of literals")
            lits = []
            for t, lit in enumerate(clause):
                lpath = f"{cpath}[{t}]"
                _expect(lit, dict, lpath, "a literal object")
                lits.append((_node_ref(index, lit.get("var"), f"{lpath}.var"),
                             _sign(lit.get("sign"), f"{lpath}.sign")))
            parsed.append(lits)
        try:
            locals_.append(MonotoneDNF.from_clauses(parsed) if parsed else MonotoneDNF.constant(0))
        except ValueError as e:
            raise ProblemError("bad-value", path, str(e)) from None
    return BooleanNetwork(locals_, nodes)


def function_to_dict(dnf: MonotoneDNF, names) -> dict:
    if dnf.is_constant:
        return {"const": int(dnf.const)}
    return {"clauses": [[{"var": names[v], "sign": "+" if s == POS else "-"} for v, s in clause]
                        for clause in dnf.clause_lists()]}


def model_to_dict(f: BooleanNetwork) -> dict:
    names = list(f.node_names())
    return {"nodes": names, "functions": {names[i]: function_to_dict(d, names) for i, d in enumerate(f.locals)}}


def load_model(path) -> BooleanNetwork:
    return model_from_dict(_read(path))


def save_model(f: BooleanNetwork, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(f), fh, indent=2)
        fh.write("\n")


# ---- problems -------------------------------------------------------------

def _observation_values(raw, index, path):
    """Observation given as {node: v} or as [[node, v], ...]."""
    if isinstance(raw, dict):
        items = list(raw.items()) + [(k, old) for k, old, _ in getattr(raw, "duplicates", [])]
    elif isinstance(raw, list):
        items = []
        for t, pair in enumerate(raw):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ProblemError("schema", f"{path}[{t}]", "expected [node, value]")
            items.append((pair[0], pair[1]))
    else:
        raise ProblemError("schema", path, "expected an object node -> 0|1")
    values = {}
    for name, v in items:
        i = _node_ref(index, name, f"{path}.{name}")
        if isinstance(v, bool) or v not in (0, 1):
            raise ProblemError("bad-value", f"{path}.{name}", f"value must be 0 or 1, got {v!r}")
        if i in values and values[i] != v:
            raise ProblemError("contradictory-observation", f"{path}.{name}",
                               f"node {name!r} observed both 0 and 1")
        values[i] = v
    return values


def _name_pairs(raw, path, what):
    out = []
    for k, pair in enumerate(_expect(raw, list, path, f"a list of {what}")):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ProblemError("schema", f"{path}[{k}]", f"expected {what}")
        out.append(tuple(pair))
    return out


def _bound(v, path):
    if v == MAX or (isinstance(v, int) and not isinstance(v, bool) and v >= 0):
        return v
    raise ProblemError("bad-value", path, f"clause bound must be a non-negative integer or 'max', got {v!r}")


def problem_from_dict(data, max_clauses_override=None) -> SynthesisProblem:
    _expect(data, dict, "$", "a JSON object")
    _no_dups(data, "$")
    nodes, index = _nodes(data)
    plus, minus = set(), set()
    for k, e in enumerate(_expect(data.get("edges", []), list, "edges", "a list of edges")):
        path = f"edges[{k}]"
        _expect(e, dict, path, "an edge object {from, to, sign}")
        j = _node_ref(index, e.get("from"), f"{path}.from")
        i = _node_ref(index, e.get("to"), f"{path}.to")
        (plus if _sign(e.get("sign"), f"{path}.sign") == POS else minus).add((j, i))
    graph = InfluenceGraph(len(nodes), frozenset(plus), frozenset(minus), nodes)

    raw_obs = _expect(data.get("observations", {}), dict, "observations", "an object name -> observation")
    _no_dups(raw_obs, "observations")
    obs = [Observation(name, _observation_values(v, index, f"observations.{name}")) for name, v in raw_obs.items()]

    cons = _expect(data.get("constraints", {}), dict, "constraints", "a constraints object")
    _no_dups(cons, "constraints")
    unknown = set(cons) - {"reach", "nonreach", "fixpoint", "trap"}
    if unknown:
        raise ProblemError("schema", "constraints", f"unknown constraint kinds {sorted(unknown)}")
    pr = _name_pairs(cons.get("reach", []), "constraints.reach", "[from, to] pairs")
    nr = _name_pairs(cons.get("nonreach", []), "constraints.nonreach", "[from, to] pairs")
    fp = _expect(cons.get("fixpoint", []), list, "constraints.fixpoint", "a list of observation names")
    tp = []
    for k, (m, node) in enumerate(_name_pairs(cons.get("trap", []), "constraints.trap", "[observation, node] pairs")):
        tp.append((m, _node_ref(index, node, f"constraints.trap[{k}][1]")))

    opts = _expect(data.get("options", {}), dict, "options", "an options object")
    raw_k = opts.get("max_clauses", MAX) if max_clauses_override is None else max_clauses_override
    if isinstance(raw_k, dict):
        max_clauses = {_node_ref(index, name, f"options.max_clauses.{name}"): _bound(v, f"options.max_clauses.{name}")
                       for name, v in raw_k.items()}
    else:
        max_clauses = _bound(raw_k, "options.max_clauses")
    distinct = []
    for k, group in enumerate(_expect(opts.get("distinct", []), list, "options.distinct", "a list of name lists")):
        distinct.append(tuple(_expect(group, list, f"options.distinct[{k}]", "a list of observation names")))
    return SynthesisProblem(graph, obs, pr=pr, nr=nr, fp=fp, tp=tp, max_clauses=max_clauses, distinct=distinct)


def parse_problem(path, max_clauses_override=None) -> SynthesisProblem:
    """Read and validate a problem file; raises ProblemError with a code and field path."""
    return problem_from_dict(_read(path), max_clauses_override)


def problem_to_dict(problem: SynthesisProblem) -> dict:
    g = problem.graph
    names = list(g.names) if g.names is not None else [f"x{i}" for i in range(g.n)]
    mc = problem.max_clauses
    if isinstance(mc, dict):
        mc = {names[i]: v for i, v in sorted(mc.items())}
    return {
        "nodes": names,
        "edges": [{"from": names[j], "to": names[i], "sign": "+" if s == POS else "-"} for j, i, s in g.edges()],
        "observations": {o.name: {names[i]: v for i, v in o.values.items()} for o in problem.observations},
        "constraints": {
            "reach": [list(p) for p in problem.pr],
            "nonreach": [list(p) for p in problem.nr],
            "fixpoint": list(problem.fp),
            "trap": [[m, names[i]] for m, i in problem.tp],
        },
        "options": {"max_clauses": mc, "distinct": [list(d) for d in problem.distinct]},
    }


def save_problem(problem: SynthesisProblem, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(problem_to_dict(problem), fh, indent=2)
        fh.write("\n")


def solution_to_dict(sol: Solution, witness: bool = True) -> dict:
    f = sol.network
    names = list(f.node_names())
    out = model_to_dict(f)
    if witness and sol.witness is not None:
        out["witness"] = {k: str(v) for k, v in sol.witness.items()}
    return out


def solution_line(sol: Solution, witness: bool = True) -> str:
    """One JSON-lines record, itself a valid model file; keys sorted so output is byte-stable."""
    return json.dumps(solution_to_dict(sol, witness), sort_keys=True, separators=(",", ":"))


def witness_from_dict(data, n: int) -> Optional[dict]:
    if data is None:
        return None
    return {k: Configuration.from_string(v) for k, v in data.items() if len(v) == n}
