import pytest

from decobs import ControlProblem, ObservationProblem, Projection


@pytest.fixture
def ex1() -> ObservationProblem:
    """Two agents, one seeing only a, the other only b; only b is legal."""
    return ObservationProblem(
        n=2,
        alphabet=("a", "b"),
        L=(("a",), ("b",), ("a", "b"), ("b", "b")),
        K=(("b",),),
        P=(Projection(frozenset({"a"})), Projection(frozenset({"b"}))),
    )


@pytest.fixture
def gamma_control() -> ControlProblem:
    """Both agents control γ; a and b are uncontrollable."""
    return ControlProblem(
        n=2,
        alphabet=("a", "b", "γ"),
        controllable=(frozenset({"γ"}), frozenset({"γ"})),
        L=((), ("a",), ("b",), ("a", "γ"), ("b", "γ")),
        K=((), ("a",), ("b",), ("a", "γ")),
        P=(Projection(frozenset({"a"})), Projection(frozenset({"b"}))),
    )
