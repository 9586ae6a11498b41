"""Colour-constrained morphisms between edge-coloured graphs.

A node map is a morphism when it preserves node colours and never enlarges an
edge colour (images may drop agents from an edge, never add them).  Finding
one decides solvability; the exhaustive table enumeration at the bottom of
this module decides the same question without ever building a graph, which
makes it a useful independent cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    GraphMismatch,
    InconsistentMorphism,
    SearchLimitExceeded,
)
from .graph import ColoredGraph, quotient_by_indistinguishability
from .model import (
    FusionRule,
    Label,
    ObservationProblem,
    Token,
    observation_tuple,
    observe,
)

_MISSING = object()

DEFAULT_ENUMERATION_BUDGET = 1_000_000


@dataclass(frozen=True)
class Morphism:
    """Total node map between two coloured graphs, stored by node index."""

    source: ColoredGraph
    target: ColoredGraph
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if len(self.mapping) != len(self.source):
            raise ValueError(
                f"mapping covers {len(self.mapping)} nodes, source has {len(self.source)}"
            )
        for t in self.mapping:
            if not 0 <= t < len(self.target):
                raise ValueError(f"target index {t} out of range")

    def image_key(self, v: int) -> Hashable:
        return self.target.keys[self.mapping[v]]


@dataclass(frozen=True)
class MorphismReport:
    """Violations found when checking a node map against the morphism
    conditions: nodes whose colour is not preserved, and node pairs whose
    image edge colour is not contained in the source edge colour."""

    node_violations: tuple[int, ...]
    edge_violations: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.node_violations and not self.edge_violations


def verify_morphism(m: Morphism) -> MorphismReport:
    """Check both morphism conditions on every node and node pair."""
    if m.source.n != m.target.n:
        raise ArityMismatch(
            f"source has {m.source.n} agents, target has {m.target.n}"
        )
    src, tgt, f = m.source, m.target, m.mapping
    node_violations = tuple(
        v for v in range(len(src)) if src.colours[v] != tgt.colours[f[v]]
    )
    edge_violations = tuple(
        (u, v)
        for u, v in src.pairs()
        if not tgt.edge_colour(f[u], f[v]) <= src.edge_colour(u, v)
    )
    return MorphismReport(node_violations, edge_violations)


def _search(src: ColoredGraph, dst: ColoredGraph, budget: int | None) -> list[int] | None:
    """Complete backtracking search for a morphism image of every src node.

    Candidates are target nodes of equal colour; assigning a node prunes, for
    every unassigned node, the targets whose edge colour to the new image is
    not contained in the corresponding source edge colour (forward checking).
    The next node is always the one with the fewest candidates, ties broken by
    declaration order; candidate lists keep target declaration order, so the
    search is deterministic.
    """
    size = len(src)
    src_edges = src.edge_matrix
    dst_edges = dst.edge_matrix
    domains: list[list[int]] = [
        [t for t in range(len(dst)) if dst.colours[t] == src.colours[v]]
        for v in range(size)
    ]
    assignment = [-1] * size
    expansions = 0

    def extend() -> bool:
        nonlocal expansions
        pending = [v for v in range(size) if assignment[v] < 0]
        if not pending:
            return True
        v = min(pending, key=lambda u: (len(domains[u]), u))
        rest = [u for u in pending if u != v]
        for t in domains[v]:
            expansions += 1
            if budget is not None and expansions > budget:
                raise SearchLimitExceeded(
                    f"morphism search exceeded {budget} node expansions"
                )
            assignment[v] = t
            shrunk: dict[int, list[int]] = {}
            dead = False
            for u in rest:
                allowed = src_edges[v][u]
                kept = [t2 for t2 in domains[u] if dst_edges[t][t2] <= allowed]
                if len(kept) != len(domains[u]):
                    shrunk[u] = domains[u]
                    domains[u] = kept
                if not kept:
                    dead = True
                    break
            if not dead and extend():
                return True
            assignment[v] = -1
            for u, old in shrunk.items():
                domains[u] = old
        return False

    return assignment if extend() else None


def find_morphism(
    source: ColoredGraph, target: ColoredGraph, budget: int | None = None
) -> Morphism | None:
    """Deterministic, complete search for a morphism from source to target.

    The source is first folded along its empty-set edges: nodes with identical
    signatures must share an image whenever the target carries no empty-set
    edge itself, and merging them is harmless even when it does.  A colour
    clash inside one such class rules out every morphism into a target with
    distinct signatures, so that case short-circuits to None; against targets
    with duplicated signatures the full graph is searched instead.

    ``budget`` caps node expansions; exceeding it raises SearchLimitExceeded
    rather than answering, so None always means "no morphism exists".
    """
    if source.n != target.n:
        raise ArityMismatch(f"source has {source.n} agents, target has {target.n}")
    quotient = quotient_by_indistinguishability(source)
    if quotient.conflict is None:
        image = _search(quotient.graph, target, budget)
        if image is None:
            return None
        mapping = tuple(image[c] for c in quotient.class_of)
    elif len(set(target.signatures)) == len(target.signatures):
        return None
    else:
        image = _search(source, target, budget)
        if image is None:
            return None
        mapping = tuple(image)
    return Morphism(source, target, mapping)


@dataclass(frozen=True)
class Solution:
    """Per-agent decision tables keyed by observation label.

    Treat the tables as read-only; they are exposed as plain dicts for
    convenient lookups.
    """

    tables: tuple[dict[Label, Token], ...]


def extract_solution(m: Morphism, p: ObservationProblem, r: FusionRule) -> Solution:
    """Read per-agent decision tables off a morphism from the observation
    graph of ``p`` into the decision graph of ``r``.

    Well-definedness (one decision per observation label) is guaranteed for
    every true morphism but re-checked; a clash raises InconsistentMorphism.
    """
    if m.source.keys != p.L:
        raise GraphMismatch("morphism source does not match the problem's strings")
    if m.target.keys != r.domain:
        raise GraphMismatch("morphism target does not match the rule's decision domain")
    tables: list[dict[Label, Token]] = [{} for _ in range(p.n)]
    for v in range(len(m.source)):
        combo = m.target.keys[m.mapping[v]]
        for i in range(p.n):
            label = m.source.signatures[v][i]
            previous = tables[i].get(label, _MISSING)
            if previous is not _MISSING and previous != combo[i]:
                raise InconsistentMorphism(
                    f"agent {i + 1} would decide both {previous!r} and {combo[i]!r} "
                    f"on observation {label!r}"
                )
            tables[i][label] = combo[i]
    return Solution(tuple(tables))


def verify_solution(p: ObservationProblem, sol: Solution, r: FusionRule) -> bool:
    """True iff every string's fused decision exists and matches its colour.

    Anything structurally off (wrong agent count, a missing table entry, a
    combination outside the rule's domain) makes this False rather than an
    error: the object simply is not a solution.
    """
    if len(sol.tables) != p.n or r.n != p.n:
        return False
    for s in p.L:
        labels = observation_tuple(p, s)
        combo = []
        for i, label in enumerate(labels):
            decision = sol.tables[i].get(label, _MISSING)
            if decision is _MISSING:
                return False
            combo.append(decision)
        combo = tuple(combo)
        if combo not in r.domain_set:
            return False
        if r.output(combo) != (1 if s in p.K_set else 0):
            return False
    return True


def solvable_by_enumeration(
    p: ObservationProblem, r: FusionRule, budget: int | None = DEFAULT_ENUMERATION_BUDGET
) -> bool:
    """Decide solvability by trying every assignment of decision tables.

    Exhaustive over |D| ** (total number of distinct observation labels)
    candidates, checked with verify_solution; raises BudgetExceeded when that
    count is above ``budget`` (None removes the cap).
    """
    if r.n != p.n:
        raise ArityMismatch(f"problem has {p.n} agents, rule has {r.n}")
    labels_per_agent = []
    for fn in p.P:
        seen: list[Label] = []
        for s in p.L:
            label = observe(fn, s)
            if label not in seen:
                seen.append(label)
        labels_per_agent.append(seen)
    slots = sum(len(labels) for labels in labels_per_agent)
    count = len(r.decisions) ** slots
    if budget is not None and count > budget:
        raise BudgetExceeded(f"{count} table assignments exceed the budget of {budget}")
    for assignment in itertools.product(r.decisions, repeat=slots):
        tables = []
        pos = 0
        for labels in labels_per_agent:
            tables.append(dict(zip(labels, assignment[pos : pos + len(labels)])))
            pos += len(labels)
        if verify_solution(p, Solution(tuple(tables)), r):
            return True
    return False


def compose(first: Morphism, second: Morphism) -> Morphism:
    """Composite morphism; requires first.target and second.source to be the
    same graph."""
    if first.target != second.source:
        raise GraphMismatch("the target of the first morphism is not the source of the second")
    return Morphism(
        source=first.source,
        target=second.target,
        mapping=tuple(second.mapping[t] for t in first.mapping),
    )
