"""Permissiveness comparison between fusion rules.

One rule is at least as permissive as another exactly when a morphism exists
between their decision graphs, so a pair of searches settles the relation in
both directions, and the witnesses double as reusable conversion recipes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch
from .graph import build_decision_graph, decision_graph_to_observation
from .model import FusionRule, ObservationProblem
from .morphism import Morphism, find_morphism

RELATIONS = ("equivalent", "first_strictly_less", "first_strictly_more", "incomparable")


@dataclass(frozen=True)
class PermissivenessVerdict:
    """Outcome of comparing two rules, with the morphisms that witness it.

    ``witness_fwd`` maps the first rule's decision graph into the second's
    (present iff the second is at least as permissive), ``witness_bwd`` the
    converse.
    """

    relation: str
    witness_fwd: Morphism | None
    witness_bwd: Morphism | None


def _relation(fwd_found: bool, bwd_found: bool) -> str:
    if fwd_found and bwd_found:
        return "equivalent"
    if fwd_found:
        return "first_strictly_less"
    if bwd_found:
        return "first_strictly_more"
    return "incomparable"


def compare(
    first: FusionRule, second: FusionRule, budget: int | None = None
) -> PermissivenessVerdict:
    """Compare the classes of problems solvable under two rules."""
    if first.n != second.n:
        raise ArityMismatch(f"first rule has {first.n} agents, second has {second.n}")
    graph_first = build_decision_graph(first)
    graph_second = build_decision_graph(second)
    fwd = find_morphism(graph_first, graph_second, budget=budget)
    bwd = find_morphism(graph_second, graph_first, budget=budget)
    return PermissivenessVerdict(_relation(fwd is not None, bwd is not None), fwd, bwd)


def separating_problem(
    first: FusionRule,
    second: FusionRule,
    encoding: str = "unary",
    budget: int | None = None,
) -> ObservationProblem | None:
    """A problem solvable under the first rule but not under the second.

    Exists exactly when no morphism maps the first decision graph into the
    second; the first rule's own decision graph, recast as an observation
    problem, is such a witness.  Returns None when the second rule is at
    least as permissive.
    """
    if first.n != second.n:
        raise ArityMismatch(f"first rule has {first.n} agents, second has {second.n}")
    fwd = find_morphism(
        build_decision_graph(first), build_decision_graph(second), budget=budget
    )
    if fwd is not None:
        return None
    return decision_graph_to_observation(first, encoding).problem


@dataclass(frozen=True)
class RelationMatrix:
    """Pairwise verdicts over a list of rules, plus the induced order.

    ``classes`` partitions rule indices into equivalence classes (mutually
    convertible rules); ``hasse`` lists covering pairs (lower, upper) of class
    indices in the strict order "strictly less permissive than".
    """

    verdicts: tuple[tuple[PermissivenessVerdict, ...], ...]
    classes: tuple[tuple[int, ...], ...]
    hasse: tuple[tuple[int, int], ...]


def relation_matrix(rules, budget: int | None = None) -> RelationMatrix:
    """Compare every ordered pair of rules and summarise the preorder."""
    rules = tuple(rules)
    if not rules:
        raise ValueError("at least one rule is required")
    for r in rules[1:]:
        if r.n != rules[0].n:
            raise ArityMismatch("all rules must share one agent count")
    graphs = [build_decision_graph(r) for r in rules]
    size = len(rules)
    witnesses = [
        [find_morphism(graphs[i], graphs[j], budget=budget) for j in range(size)]
        for i in range(size)
    ]
    verdicts = tuple(
        tuple(
            PermissivenessVerdict(
                _relation(witnesses[i][j] is not None, witnesses[j][i] is not None),
                witnesses[i][j],
                witnesses[j][i],
            )
            for j in range(size)
        )
        for i in range(size)
    )
    at_most = [[witnesses[i][j] is not None for j in range(size)] for i in range(size)]

    classes: list[list[int]] = []
    for i in range(size):
        for cls in classes:
            rep = cls[0]
            if at_most[i][rep] and at_most[rep][i]:
                cls.append(i)
                break
        else:
            classes.append([i])

    def strictly_below(a: int, b: int) -> bool:
        ra, rb = classes[a][0], classes[b][0]
        return at_most[ra][rb] and not at_most[rb][ra]

    hasse = tuple(
        (a, b)
        for a in range(len(classes))
        for b in range(len(classes))
        if strictly_below(a, b)
        and not any(
            strictly_below(a, c) and strictly_below(c, b) for c in range(len(classes))
        )
    )
    return RelationMatrix(verdicts, tuple(tuple(c) for c in classes), hasse)
