"""JSON file formats for problems, rules, morphisms, solutions and verdicts.

Strings serialize as arrays of token texts (the empty string is the empty
array).  Fusion-rule files carry exactly the fields type, agents, decisions,
domain and output.  Morphism files are arrays of [source-key, target-key]
pairs, where a string node's key is its joined token text and a decision
node's key is the array of its decision texts.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import FileFormatError
from .graph import ColoredGraph, D2OResult
from .model import (
    ControlProblem,
    FusionRule,
    ObservationFunction,
    ObservationProblem,
    ObservationTable,
    Problem,
    Projection,
    Str,
)
from .morphism import Morphism, Solution

RULE_TYPE = "fusion_rule"
_RULE_FIELDS = {"type", "agents", "decisions", "domain", "output"}


def dump_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(to_json(obj), encoding="utf-8")


def to_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise FileFormatError(f"{path}: not valid JSON ({e})") from None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise FileFormatError(message)


def _string_from(obj: Any, where: str) -> Str:
    _require(
        isinstance(obj, list) and all(isinstance(t, str) for t in obj),
        f"{where}: a string must be an array of token texts, got {obj!r}",
    )
    return tuple(obj)


def _language_from(obj: Any, where: str) -> tuple[Str, ...]:
    _require(isinstance(obj, list), f"{where}: expected an array of strings")
    return tuple(_string_from(s, where) for s in obj)


def _observation_from(obj: Any, where: str) -> ObservationFunction:
    _require(isinstance(obj, dict), f"{where}: expected an object")
    kind = obj.get("kind")
    if kind == "projection":
        observable = obj.get("observable")
        _require(
            isinstance(observable, list) and all(isinstance(t, str) for t in observable),
            f"{where}: 'observable' must be an array of tokens",
        )
        return Projection(frozenset(observable))
    if kind == "table":
        entries = obj.get("map")
        _require(isinstance(entries, list), f"{where}: 'map' must be an array of pairs")
        parsed = []
        for pair in entries:
            _require(
                isinstance(pair, list) and len(pair) == 2,
                f"{where}: table entries must be [string, label] pairs",
            )
            s = _string_from(pair[0], where)
            _require(isinstance(pair[1], str), f"{where}: table labels must be text")
            parsed.append((s, pair[1]))
        return ObservationTable(tuple(parsed))
    raise FileFormatError(f"{where}: unknown observation kind {kind!r}")


def _observation_to(fn: ObservationFunction) -> dict:
    if isinstance(fn, Projection):
        return {"kind": "projection", "observable": sorted(fn.observable)}
    return {"kind": "table", "map": [[list(s), label] for s, label in fn.entries]}


def parse_problem(obj: Any) -> Problem:
    _require(isinstance(obj, dict), "problem file must hold a JSON object")
    ptype = obj.get("type")
    _require(
        ptype in ("observation", "control"),
        f"problem 'type' must be 'observation' or 'control', got {ptype!r}",
    )
    agents = obj.get("agents")
    _require(isinstance(agents, int), "'agents' must be an integer")
    alphabet = obj.get("alphabet")
    _require(
        isinstance(alphabet, list) and all(isinstance(t, str) for t in alphabet),
        "'alphabet' must be an array of tokens",
    )
    big_l = _language_from(obj.get("L"), "L")
    big_k = _language_from(obj.get("K"), "K")
    observations = obj.get("observations")
    _require(isinstance(observations, list), "'observations' must be an array")
    functions = tuple(
        _observation_from(o, f"observations[{i}]") for i, o in enumerate(observations)
    )
    if ptype == "observation":
        return ObservationProblem(
            n=agents, alphabet=tuple(alphabet), L=big_l, K=big_k, P=functions
        )
    controllable = obj.get("controllable")
    _require(isinstance(controllable, list), "'controllable' must be an array of arrays")
    parsed = []
    for i, c in enumerate(controllable):
        _require(
            isinstance(c, list) and all(isinstance(t, str) for t in c),
            f"controllable[{i}] must be an array of tokens",
        )
        parsed.append(frozenset(c))
    return ControlProblem(
        n=agents,
        alphabet=tuple(alphabet),
        controllable=tuple(parsed),
        L=big_l,
        K=big_k,
        P=functions,
    )


def problem_to_obj(p: Problem) -> dict:
    obj: dict[str, Any] = {
        "type": "control" if isinstance(p, ControlProblem) else "observation",
        "agents": p.n,
        "alphabet": list(p.alphabet),
    }
    if isinstance(p, ControlProblem):
        obj["controllable"] = [sorted(c) for c in p.controllable]
    obj["L"] = [list(s) for s in p.L]
    obj["K"] = [list(s) for s in p.K]
    obj["observations"] = [_observation_to(fn) for fn in p.P]
    return obj


def load_problem(path: str | Path) -> Problem:
    return parse_problem(read_json(path))


def parse_rule(obj: Any) -> FusionRule:
    _require(isinstance(obj, dict), "rule file must hold a JSON object")
    _require(
        set(obj) == _RULE_FIELDS,
        f"rule files carry exactly the fields {sorted(_RULE_FIELDS)}, got {sorted(obj)}",
    )
    _require(obj["type"] == RULE_TYPE, f"rule 'type' must be {RULE_TYPE!r}")
    _require(isinstance(obj["agents"], int), "'agents' must be an integer")
    decisions = obj["decisions"]
    _require(
        isinstance(decisions, list) and all(isinstance(d, str) for d in decisions),
        "'decisions' must be an array of decision texts",
    )
    domain = obj["domain"]
    _require(isinstance(domain, list), "'domain' must be an array of tuples")
    combos = []
    for combo in domain:
        _require(
            isinstance(combo, list) and all(isinstance(d, str) for d in combo),
            f"domain entries must be arrays of decisions, got {combo!r}",
        )
        combos.append(tuple(combo))
    output = obj["output"]
    _require(
        isinstance(output, list) and all(o in (0, 1) for o in output),
        "'output' must be an array of 0/1 parallel to the domain",
    )
    try:
        return FusionRule(
            n=obj["agents"],
            decisions=tuple(decisions),
            domain=tuple(combos),
            outputs=tuple(output),
        )
    except ValueError as e:
        raise FileFormatError(str(e)) from None


def rule_to_obj(r: FusionRule) -> dict:
    return {
        "type": RULE_TYPE,
        "agents": r.n,
        "decisions": list(r.decisions),
        "domain": [list(combo) for combo in r.domain],
        "output": list(r.outputs),
    }


def load_rule(path: str | Path) -> FusionRule:
    return parse_rule(read_json(path))


def node_key(g: ColoredGraph, idx: int) -> Any:
    """JSON key of one node: joined token text for strings, array of decision
    texts for decision tuples, the raw key otherwise."""
    key = g.keys[idx]
    if g.kind == "observation":
        return "".join(key)
    if g.kind == "decision":
        return list(key)
    return key


def _key_lookup(g: ColoredGraph) -> dict:
    lookup = {}
    for idx in range(len(g)):
        raw = node_key(g, idx)
        hashable = tuple(raw) if isinstance(raw, list) else raw
        if hashable in lookup:
            raise FileFormatError(
                f"node keys are ambiguous: {raw!r} names two different nodes"
            )
        lookup[hashable] = idx
    return lookup


def morphism_to_obj(m: Morphism) -> list:
    _key_lookup(m.source)
    return [
        [node_key(m.source, v), node_key(m.target, m.mapping[v])]
        for v in range(len(m.source))
    ]


def parse_morphism(obj: Any, source: ColoredGraph, target: ColoredGraph) -> Morphism:
    _require(isinstance(obj, list), "a morphism file must hold a JSON array of pairs")
    src_lookup = _key_lookup(source)
    tgt_lookup = _key_lookup(target)
    mapping = [-1] * len(source)
    for pair in obj:
        _require(
            isinstance(pair, list) and len(pair) == 2,
            "morphism entries must be [source-key, target-key] pairs",
        )
        raw_s, raw_t = pair
        key_s = tuple(raw_s) if isinstance(raw_s, list) else raw_s
        key_t = tuple(raw_t) if isinstance(raw_t, list) else raw_t
        _require(key_s in src_lookup, f"unknown source node {raw_s!r}")
        _require(key_t in tgt_lookup, f"unknown target node {raw_t!r}")
        v = src_lookup[key_s]
        _require(mapping[v] == -1, f"source node {raw_s!r} mapped twice")
        mapping[v] = tgt_lookup[key_t]
    _require(all(t >= 0 for t in mapping), "morphism does not cover every source node")
    return Morphism(source, target, tuple(mapping))


def load_morphism(path: str | Path, source: ColoredGraph, target: ColoredGraph) -> Morphism:
    return parse_morphism(read_json(path), source, target)


def _label_to(label: Any) -> Any:
    return list(label) if isinstance(label, tuple) else label


def _label_from(raw: Any) -> Any:
    return tuple(raw) if isinstance(raw, list) else raw


def solution_to_obj(sol: Solution) -> list:
    return [
        [[_label_to(label), decision] for label, decision in table.items()]
        for table in sol.tables
    ]


def parse_solution(obj: Any) -> Solution:
    _require(
        isinstance(obj, list),
        "a solution file must hold a JSON array with one table per agent",
    )
    parsed = []
    for i, table in enumerate(obj):
        _require(isinstance(table, list), f"tables[{i}] must be an array of pairs")
        entries = {}
        for pair in table:
            _require(
                isinstance(pair, list) and len(pair) == 2,
                f"tables[{i}] entries must be [label, decision] pairs",
            )
            _require(isinstance(pair[1], str), f"tables[{i}]: decisions must be text")
            entries[_label_from(pair[0])] = pair[1]
        parsed.append(entries)
    return Solution(tuple(parsed))


def load_solution(path: str | Path) -> Solution:
    return parse_solution(read_json(path))


def bijection_to_obj(res: D2OResult) -> list:
    return [[list(combo), list(s)] for combo, s in res.bijection]


def sanitize_token(text: str) -> str:
    """Filesystem-safe rendering of a token; non-alphanumeric characters are
    spelled as their code points."""
    return "".join(
        ch if ch.isascii() and (ch.isalnum() or ch in "-_") else f"u{ord(ch):04x}"
        for ch in text
    )
