import dataclasses
import random

import pytest

from decobs import (
    BUILTIN_RULES,
    ColoredGraph,
    D2OResult,
    ObservationProblem,
    Projection,
    build_decision_graph,
    build_observation_graph,
    builtin_rule,
    decision_graph_to_observation,
    export_dot,
    observation_tuple,
    quotient_by_indistinguishability,
    verify_d2o,
)
from helpers import random_colored_graph


def edges_by_key(g: ColoredGraph) -> dict:
    return {
        frozenset((g.keys[u], g.keys[v])): g.edge_colour(u, v) for u, v in g.pairs()
    }


class TestObservationGraph:
    def test_example_graph(self, ex1):
        g = build_observation_graph(ex1)
        assert g.keys == ex1.L and g.n == 2 and g.kind == "observation"
        assert g.colours == (0, 1, 0, 0)
        a, b, ab, bb = ("a",), ("b",), ("a", "b"), ("b", "b")
        assert edges_by_key(g) == {
            frozenset((b, ab)): frozenset({0}),
            frozenset((a, ab)): frozenset({1}),
            frozenset((b, bb)): frozenset({1}),
            frozenset((a, b)): frozenset({0, 1}),
            frozenset((a, bb)): frozenset({0, 1}),
            frozenset((ab, bb)): frozenset({0, 1}),
        }

    def test_edges_follow_observation_tuples(self, ex1):
        # Recompute every edge straight from the definition.
        g = build_observation_graph(ex1)
        for u, v in g.pairs():
            tu = observation_tuple(ex1, g.keys[u])
            tv = observation_tuple(ex1, g.keys[v])
            assert g.edge_colour(u, v) == frozenset(
                i for i in range(2) if tu[i] != tv[i]
            )

    def test_singleton_language(self):
        p = ObservationProblem(
            n=1, alphabet=("a",), L=(("a",),), K=(("a",),), P=(Projection(frozenset({"a"})),)
        )
        g = build_observation_graph(p)
        assert len(g) == 1 and g.colours == (1,) and list(g.pairs()) == []

    def test_identical_tuples_give_empty_edge(self):
        p = ObservationProblem(
            n=1,
            alphabet=("a", "b"),
            L=(("a",), ("b",)),
            K=(("a",), ("b",)),
            P=(Projection(frozenset()),),
        )
        g = build_observation_graph(p)
        assert g.edge_colour(0, 1) == frozenset()


class TestDecisionGraph:
    def test_conjunctive_graph(self):
        g = build_decision_graph(builtin_rule("conjunctive", 2))
        assert g.kind == "decision" and len(g) == 4
        assert edges_by_key(g) == {
            frozenset((("0", "0"), ("0", "1"))): frozenset({1}),
            frozenset((("0", "0"), ("1", "0"))): frozenset({0}),
            frozenset((("0", "1"), ("1", "1"))): frozenset({0}),
            frozenset((("1", "0"), ("1", "1"))): frozenset({1}),
            frozenset((("0", "0"), ("1", "1"))): frozenset({0, 1}),
            frozenset((("0", "1"), ("1", "0"))): frozenset({0, 1}),
        }
        greens = {g.keys[v] for v in range(len(g)) if g.colours[v] == 1}
        assert greens == {("1", "1")}

    def test_cpda_graph(self):
        g = build_decision_graph(builtin_rule("cpda", 2))
        assert len(g) == 6
        greens = {g.keys[v] for v in range(len(g)) if g.colours[v] == 1}
        assert greens == {("1", "1"), ("1", "dk"), ("dk", "1")}

    def test_const0_graph(self):
        g = build_decision_graph(builtin_rule("const0", 2))
        assert len(g) == 1 and g.colours == (0,)

    @pytest.mark.parametrize("name", BUILTIN_RULES)
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_no_empty_edges_between_distinct_nodes(self, name, n):
        g = build_decision_graph(builtin_rule(name, n))
        assert all(g.edge_colour(u, v) for u, v in g.pairs())

    def test_node_count_matches_domain(self):
        for name in BUILTIN_RULES:
            rule = builtin_rule(name, 2)
            assert len(build_decision_graph(rule)) == len(rule.domain)


class TestColoredGraph:
    def test_edge_matrix_symmetric_with_empty_diagonal(self):
        rng = random.Random(7)
        for _ in range(20):
            g = random_colored_graph(rng)
            m = g.edge_matrix
            for u in range(len(g)):
                assert m[u][u] == frozenset()
                for v in range(len(g)):
                    assert m[u][v] == m[v][u]

    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            ColoredGraph(n=1, keys=(0,), signatures=(), colours=(0,))

    def test_rejects_duplicate_keys(self):
        with pytest.raises(ValueError):
            ColoredGraph(n=1, keys=(0, 0), signatures=(("x",), ("y",)), colours=(0, 0))

    def test_rejects_bad_colours(self):
        with pytest.raises(ValueError):
            ColoredGraph(n=1, keys=(0,), signatures=(("x",),), colours=(2,))


class TestQuotient:
    def test_identity_quotient(self, ex1):
        g = build_observation_graph(ex1)
        q = quotient_by_indistinguishability(g)
        assert q.conflict is None
        assert q.graph == g
        assert q.class_of == (0, 1, 2, 3)

    def test_colour_conflict_is_reported(self):
        p = ObservationProblem(
            n=1,
            alphabet=("a", "b"),
            L=(("a",), ("b",)),
            K=(("a",),),
            P=(Projection(frozenset()),),
        )
        q = quotient_by_indistinguishability(build_observation_graph(p))
        assert q.conflict == (("a",), ("b",))

    def test_compatible_classes_merge(self):
        p = ObservationProblem(
            n=1,
            alphabet=("a", "b"),
            L=(("a",), ("b",)),
            K=(("a",), ("b",)),
            P=(Projection(frozenset()),),
        )
        q = quotient_by_indistinguishability(build_observation_graph(p))
        assert q.conflict is None
        assert len(q.graph) == 1 and q.graph.colours == (1,)
        assert q.classes == ((0, 1),)

    def test_quotient_has_no_empty_edges_when_conflict_free(self):
        rng = random.Random(20)
        for _ in range(50):
            g = random_colored_graph(rng)
            q = quotient_by_indistinguishability(g)
            if q.conflict is None:
                assert all(q.graph.edge_colour(u, v) for u, v in q.graph.pairs())

    def test_inherited_edges_match_representatives(self):
        rng = random.Random(21)
        for _ in range(30):
            g = random_colored_graph(rng)
            q = quotient_by_indistinguishability(g)
            for u, v in g.pairs():
                cu, cv = q.class_of[u], q.class_of[v]
                if cu != cv:
                    assert q.graph.edge_colour(cu, cv) == g.edge_colour(u, v)


class TestD2O:
    def test_unary_conjunctive_strings(self):
        res = decision_graph_to_observation(builtin_rule("conjunctive", 2), "unary")
        assert set(res.problem.L) == {
            ("1_1", "1_2"),
            ("0_1", "1_1", "1_2"),
            ("1_1", "0_2", "1_2"),
            ("0_1", "1_1", "0_2", "1_2"),
        }
        assert res.problem.K == (("0_1", "1_1", "0_2", "1_2"),)
        assert res.problem.alphabet == ("0_1", "1_1", "0_2", "1_2")
        assert res.problem.P[0].observable == frozenset({"0_1", "1_1"})

    def test_tagged_conjunctive_strings(self):
        res = decision_graph_to_observation(builtin_rule("conjunctive", 2), "tagged")
        mapping = dict(res.bijection)
        assert mapping[("1", "1")] == ("1^1", "1^2")
        assert res.problem.P[0].observable == frozenset({"0^1", "1^1"})
        assert res.problem.K == (("1^1", "1^2"),)

    def test_const1_single_node_image(self):
        res = decision_graph_to_observation(builtin_rule("const1", 1), "unary")
        # "1" sits at index 1 of the declared decision order ("0", "1").
        assert res.problem.L == (("0_1", "1_1"),)
        assert res.problem.K == res.problem.L

    def test_bijection_follows_domain_order(self):
        rule = builtin_rule("cpda", 2)
        res = decision_graph_to_observation(rule, "unary")
        assert tuple(combo for combo, _ in res.bijection) == rule.domain

    def test_unknown_encoding(self):
        with pytest.raises(ValueError):
            decision_graph_to_observation(builtin_rule("conjunctive", 2), "binary")

    @pytest.mark.parametrize("name", BUILTIN_RULES)
    @pytest.mark.parametrize("encoding", ["tagged", "unary"])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_round_trip_isomorphism(self, name, encoding, n):
        rule = builtin_rule(name, n)
        res = decision_graph_to_observation(rule, encoding)
        assert verify_d2o(res, rule)

    def test_verify_rejects_broken_node_colours(self):
        rule = builtin_rule("conjunctive", 2)
        res = decision_graph_to_observation(rule, "unary")
        broken = D2OResult(
            problem=dataclasses.replace(res.problem, K=()),
            bijection=res.bijection,
            encoding=res.encoding,
        )
        assert not verify_d2o(broken, rule)

    def test_verify_rejects_swapped_strings(self):
        rule = builtin_rule("conjunctive", 2)
        res = decision_graph_to_observation(rule, "unary")
        entries = dict(res.bijection)
        # Swap the images of two equally-coloured nodes with different tuples.
        entries[("0", "0")], entries[("0", "1")] = entries[("0", "1")], entries[("0", "0")]
        swapped = D2OResult(
            problem=res.problem,
            bijection=tuple(entries.items()),
            encoding=res.encoding,
        )
        assert not verify_d2o(swapped, rule)


class TestExportDot:
    def test_conjunctive_counts(self):
        text = export_dot(build_decision_graph(builtin_rule("conjunctive", 2)))
        lines = text.splitlines()
        assert sum("shape=" in l for l in lines) == 4
        assert sum(" -- " in l for l in lines) == 6
        assert text.count("doublecircle") == 1
        assert "style=dotted" in text and "style=dashed" in text

    def test_example_graph_counts(self, ex1):
        text = export_dot(build_observation_graph(ex1))
        assert sum("shape=" in l for l in text.splitlines()) == 4
        assert sum(" -- " in l for l in text.splitlines()) == 6
        assert text.count("doublecircle") == 1

    def test_empty_graph_is_header_only(self):
        g = ColoredGraph(n=1, keys=(), signatures=(), colours=())
        assert export_dot(g) == 'graph "G" {\n}\n'

    def test_empty_set_edges_are_distinguished(self):
        g = ColoredGraph(
            n=1, keys=("x", "y"), signatures=(("s",), ("s",)), colours=(0, 0)
        )
        text = export_dot(g)
        assert "∅" in text
        assert len(export_dot(g, include_empty_edges=False).splitlines()) == 4

    def test_epsilon_label_for_empty_string(self):
        p = ObservationProblem(
            n=1, alphabet=("a",), L=((), ("a",)), K=((),), P=(Projection(frozenset({"a"})),)
        )
        text = export_dot(build_observation_graph(p))
        assert 'label="ε"' in text

    def test_deterministic(self, ex1):
        g = build_observation_graph(ex1)
        assert export_dot(g) == export_dot(g)
