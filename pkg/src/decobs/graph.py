"""Edge-coloured complete graphs over strings or decision tuples.

Both views share one representation: every node carries an n-entry signature
(its observation tuple, or the decision tuple itself) and a binary colour.
The colour of the edge between two nodes is the set of agent indices on which
their signatures disagree; it is computed from the signatures on demand, with
a materialised matrix cached for search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable

from .model import (
    FusionRule,
    ObservationProblem,
    Projection,
    Str,
    Token,
    format_str,
    observation_tuple,
)

AgentSet = frozenset[int]


@dataclass(frozen=True)
class ColoredGraph:
    """Complete graph with 0/1 node colours and agent-set edge colours.

    ``kind`` records what the node keys are ("observation" for strings,
    "decision" for decision tuples, "generic" otherwise); it only affects
    rendering and serialization, never the graph semantics.
    """

    n: int
    keys: tuple[Hashable, ...]
    signatures: tuple[tuple[Hashable, ...], ...]
    colours: tuple[int, ...]
    kind: str = "generic"

    def __post_init__(self):
        object.__setattr__(self, "keys", tuple(self.keys))
        object.__setattr__(self, "signatures", tuple(tuple(s) for s in self.signatures))
        object.__setattr__(self, "colours", tuple(self.colours))
        if not (len(self.keys) == len(self.signatures) == len(self.colours)):
            raise ValueError("keys, signatures and colours must be parallel")
        if len(set(self.keys)) != len(self.keys):
            raise ValueError("node keys must be distinct")
        for sig in self.signatures:
            if len(sig) != self.n:
                raise ValueError(f"signature {sig!r} does not have arity {self.n}")
        for colour in self.colours:
            if colour not in (0, 1):
                raise ValueError(f"node colours must be 0 or 1, got {colour!r}")

    def __len__(self) -> int:
        return len(self.keys)

    def edge_colour(self, u: int, v: int) -> AgentSet:
        su, sv = self.signatures[u], self.signatures[v]
        return frozenset(i for i in range(self.n) if su[i] != sv[i])

    @cached_property
    def edge_matrix(self) -> tuple[tuple[AgentSet, ...], ...]:
        """All pairwise edge colours indexed [u][v]; the diagonal is empty."""
        size = len(self.keys)
        return tuple(
            tuple(self.edge_colour(u, v) for v in range(size)) for u in range(size)
        )

    @cached_property
    def key_index(self) -> dict[Hashable, int]:
        return {k: i for i, k in enumerate(self.keys)}

    def pairs(self):
        """Unordered pairs of distinct node indices, in declaration order."""
        return itertools.combinations(range(len(self.keys)), 2)


def build_observation_graph(p: ObservationProblem) -> ColoredGraph:
    """One node per string of L, coloured by membership in K; two strings are
    joined by the set of agents observing them differently."""
    return ColoredGraph(
        n=p.n,
        keys=p.L,
        signatures=tuple(observation_tuple(p, s) for s in p.L),
        colours=tuple(int(s in p.K_set) for s in p.L),
        kind="observation",
    )


def build_decision_graph(r: FusionRule) -> ColoredGraph:
    """One node per allowed decision combination, coloured by the fused output;
    two combinations are joined by the set of positions where they differ."""
    return ColoredGraph(
        n=r.n,
        keys=r.domain,
        signatures=r.domain,
        colours=r.outputs,
        kind="decision",
    )


@dataclass(frozen=True)
class Quotient:
    """Result of merging nodes with identical signatures.

    ``conflict`` names two keys that share a signature but disagree in node
    colour (such a graph folds into no decision graph); ``class_of`` sends
    each original node index to its class index in the quotient graph.
    """

    graph: ColoredGraph
    conflict: tuple[Hashable, Hashable] | None
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]


def quotient_by_indistinguishability(g: ColoredGraph) -> Quotient:
    """Merge nodes connected by empty-set edges (identical signatures).

    Edge colours between classes are inherited, which is well defined because
    class members share their signature.  A colour clash inside a class is
    reported as a conflict rather than an error.
    """
    index_of_sig: dict[tuple, int] = {}
    classes: list[list[int]] = []
    for idx, sig in enumerate(g.signatures):
        if sig in index_of_sig:
            classes[index_of_sig[sig]].append(idx)
        else:
            index_of_sig[sig] = len(classes)
            classes.append([idx])
    conflict = None
    for members in classes:
        first = members[0]
        clashing = next((m for m in members[1:] if g.colours[m] != g.colours[first]), None)
        if clashing is not None:
            conflict = (g.keys[first], g.keys[clashing])
            break
    reps = [members[0] for members in classes]
    quotient_graph = ColoredGraph(
        n=g.n,
        keys=tuple(g.keys[r] for r in reps),
        signatures=tuple(g.signatures[r] for r in reps),
        colours=tuple(g.colours[r] for r in reps),
        kind=g.kind,
    )
    class_of = [0] * len(g)
    for ci, members in enumerate(classes):
        for m in members:
            class_of[m] = ci
    return Quotient(
        graph=quotient_graph,
        conflict=conflict,
        classes=tuple(tuple(m) for m in classes),
        class_of=tuple(class_of),
    )


ENCODINGS = ("tagged", "unary")


@dataclass(frozen=True)
class D2OResult:
    """An observation problem whose observation graph reproduces a decision
    graph, with the node-to-string bijection that witnesses it."""

    problem: ObservationProblem
    bijection: tuple[tuple[tuple[Token, ...], Str], ...]
    encoding: str


def decision_graph_to_observation(rule: FusionRule, encoding: str = "unary") -> D2OResult:
    """Recast a fusion rule's decision graph as an observation problem.

    tagged: alphabet {d^i : d ∈ D, agent i}; the combination (d_1, ..., d_n)
    becomes the string d_1^1 ... d_n^n and agent i observes exactly the
    i-tagged symbols.  Agent tags are printed 1-based.

    unary: alphabet {0_i, 1_i}; decision d is encoded for agent i as
    0_i repeated (index of d in the declared decision order) followed by 1_i.
    The encoding is prefix-free, so the node-to-string map is injective.
    """
    if encoding not in ENCODINGS:
        raise ValueError(f"unknown encoding {encoding!r}; choose from {ENCODINGS}")
    n = rule.n
    if encoding == "tagged":
        alphabet = tuple(f"{d}^{i + 1}" for i in range(n) for d in rule.decisions)
        observers = tuple(
            Projection(frozenset(f"{d}^{i + 1}" for d in rule.decisions)) for i in range(n)
        )

        def encode(combo: tuple[Token, ...]) -> Str:
            return tuple(f"{combo[i]}^{i + 1}" for i in range(n))

    else:
        alphabet = tuple(tok for i in range(n) for tok in (f"0_{i + 1}", f"1_{i + 1}"))
        observers = tuple(
            Projection(frozenset({f"0_{i + 1}", f"1_{i + 1}"})) for i in range(n)
        )
        rank = {d: j for j, d in enumerate(rule.decisions)}

        def encode(combo: tuple[Token, ...]) -> Str:
            out: list[Token] = []
            for i in range(n):
                out.extend([f"0_{i + 1}"] * rank[combo[i]])
                out.append(f"1_{i + 1}")
            return tuple(out)

    bijection = tuple((combo, encode(combo)) for combo in rule.domain)
    problem = ObservationProblem(
        n=n,
        alphabet=alphabet,
        L=tuple(s for _, s in bijection),
        K=tuple(s for combo, s in bijection if rule.output(combo) == 1),
        P=observers,
    )
    return D2OResult(problem=problem, bijection=bijection, encoding=encoding)


def verify_d2o(res: D2OResult, rule: FusionRule) -> bool:
    """True iff the recorded bijection is a colour-preserving isomorphism
    between the rule's decision graph and the problem's observation graph."""
    decision_graph = build_decision_graph(rule)
    observation_graph = build_observation_graph(res.problem)
    forward = dict(res.bijection)
    if len(forward) != len(res.bijection):
        return False
    if set(forward) != set(decision_graph.keys):
        return False
    strings = list(forward.values())
    if len(set(strings)) != len(strings) or set(strings) != set(observation_graph.keys):
        return False
    to_node = observation_graph.key_index
    image = [to_node[forward[k]] for k in decision_graph.keys]
    for v in range(len(decision_graph)):
        if decision_graph.colours[v] != observation_graph.colours[image[v]]:
            return False
    for u, v in decision_graph.pairs():
        if decision_graph.edge_colour(u, v) != observation_graph.edge_colour(image[u], image[v]):
            return False
    return True


def _node_label(g: ColoredGraph, idx: int) -> str:
    key = g.keys[idx]
    if g.kind == "observation":
        return format_str(key)
    if g.kind == "decision":
        return "(" + ",".join(key) + ")"
    return str(key)


def _edge_attrs(colour: AgentSet) -> str:
    if not colour:
        return 'label="∅", style=solid, color=gray60'
    label = "{" + ",".join(str(i + 1) for i in sorted(colour)) + "}"
    if colour == frozenset({0}):
        style = "dotted"
    elif colour == frozenset({1}):
        style = "dashed"
    else:
        style = "solid"
    return f'label="{label}", style={style}'


def export_dot(g: ColoredGraph, name: str = "G", include_empty_edges: bool = True) -> str:
    """Deterministic DOT text: doubly-circled nodes carry colour 1, edges are
    dotted for {1}, dashed for {2}, solid otherwise, grey for the empty set."""
    lines = [f'graph "{name}" {{']
    for idx in range(len(g)):
        shape = "doublecircle" if g.colours[idx] == 1 else "circle"
        label = _node_label(g, idx).replace('"', '\\"')
        lines.append(f'  n{idx} [label="{label}", shape={shape}];')
    for u, v in g.pairs():
        colour = g.edge_colour(u, v)
        if not colour and not include_empty_edges:
            continue
        lines.append(f"  n{u} -- n{v} [{_edge_attrs(colour)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
