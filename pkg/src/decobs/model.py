"""Alphabets, finite languages, observation functions, fusion rules, and the
two decentralized problem classes (observation and control).

Strings are tuples of tokens over an explicit finite alphabet; tokens are
plain text so that structured symbol names like ``0_1`` or ``d^2`` work.
Agents are indexed from 0 throughout the library.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import ClassVar, Hashable, Iterable, Union

from .errors import ControllabilityViolation, UnknownRuleName, UnknownString

Token = str
Str = tuple[Token, ...]

# Observation labels: a Str for projections, opaque text for tables.
Label = Hashable

EPSILON: Str = ()


def format_str(s: Str) -> str:
    """Human-readable rendering of a string; the empty string prints as ε."""
    return " ".join(s) if s else "ε"


def _unique(items: Iterable) -> tuple:
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return tuple(out)


@dataclass(frozen=True)
class Projection:
    """Natural projection: erases every token outside the observable alphabet."""

    observable: frozenset[Token]

    kind: ClassVar[str] = "projection"

    def __post_init__(self):
        object.__setattr__(self, "observable", frozenset(self.observable))

    def observe(self, s: Str) -> Str:
        return tuple(t for t in s if t in self.observable)


@dataclass(frozen=True)
class ObservationTable:
    """Explicit observation map, total on the language it was declared for.

    Labels are opaque and compare by equality only.
    """

    entries: tuple[tuple[Str, Label], ...]

    kind: ClassVar[str] = "table"

    def __post_init__(self):
        object.__setattr__(
            self, "entries", tuple((tuple(s), label) for s, label in self.entries)
        )

    @classmethod
    def from_mapping(cls, mapping) -> "ObservationTable":
        return cls(tuple(mapping.items()))

    @cached_property
    def _lookup(self) -> dict[Str, Label]:
        return dict(self.entries)

    @property
    def domain(self) -> frozenset[Str]:
        return frozenset(self._lookup)

    def observe(self, s: Str) -> Label:
        try:
            return self._lookup[tuple(s)]
        except KeyError:
            raise UnknownString(f"no observation recorded for {format_str(tuple(s))}") from None


ObservationFunction = Union[Projection, ObservationTable]


def observe(fn: ObservationFunction, s: Str) -> Label:
    """Apply one agent's observation function to a string."""
    return fn.observe(tuple(s))


@dataclass(frozen=True)
class ObservationProblem:
    """Finite languages K ⊆ L over an alphabet, with one observation function
    per agent.  Construct local decision tables and fuse them so that every
    string of K fuses to 1 and every string of L−K fuses to 0."""

    n: int
    alphabet: tuple[Token, ...]
    L: tuple[Str, ...]
    K: tuple[Str, ...]
    P: tuple[ObservationFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _unique(self.alphabet))
        object.__setattr__(self, "L", _unique(tuple(s) for s in self.L))
        object.__setattr__(self, "K", _unique(tuple(s) for s in self.K))
        object.__setattr__(self, "P", tuple(self.P))

    @cached_property
    def L_set(self) -> frozenset[Str]:
        return frozenset(self.L)

    @cached_property
    def K_set(self) -> frozenset[Str]:
        return frozenset(self.K)

    @cached_property
    def alphabet_set(self) -> frozenset[Token]:
        return frozenset(self.alphabet)


@dataclass(frozen=True)
class ControlProblem:
    """Observation problem data plus per-agent controllable alphabets."""

    n: int
    alphabet: tuple[Token, ...]
    controllable: tuple[frozenset[Token], ...]
    L: tuple[Str, ...]
    K: tuple[Str, ...]
    P: tuple[ObservationFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _unique(self.alphabet))
        object.__setattr__(self, "controllable", tuple(frozenset(c) for c in self.controllable))
        object.__setattr__(self, "L", _unique(tuple(s) for s in self.L))
        object.__setattr__(self, "K", _unique(tuple(s) for s in self.K))
        object.__setattr__(self, "P", tuple(self.P))

    @cached_property
    def L_set(self) -> frozenset[Str]:
        return frozenset(self.L)

    @cached_property
    def K_set(self) -> frozenset[Str]:
        return frozenset(self.K)

    @cached_property
    def alphabet_set(self) -> frozenset[Token]:
        return frozenset(self.alphabet)

    @cached_property
    def sigma_c(self) -> tuple[Token, ...]:
        """Union of the controllable alphabets, in alphabet declaration order."""
        return tuple(t for t in self.alphabet if any(t in c for c in self.controllable))

    @cached_property
    def sigma_u(self) -> tuple[Token, ...]:
        controllable = frozenset(self.sigma_c)
        return tuple(t for t in self.alphabet if t not in controllable)


Problem = Union[ObservationProblem, ControlProblem]


@dataclass(frozen=True)
class ValidationReport:
    """List of violated invariants; empty means the problem is well formed."""

    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_problem(p: Problem) -> ValidationReport:
    """Check every structural invariant of a problem and report violations.

    Never raises: a malformed problem yields a non-empty report.
    """
    v: list[str] = []
    if p.n < 1:
        v.append(f"agent count must be at least 1, got {p.n}")
    if len(p.P) != p.n:
        v.append(f"expected {p.n} observation functions, got {len(p.P)}")
    for t in p.alphabet:
        if not t:
            v.append("alphabet contains an empty token")
    for name, language in (("L", p.L), ("K", p.K)):
        for s in language:
            stray = sorted({t for t in s if t not in p.alphabet_set})
            if stray:
                v.append(
                    f"{name} string {format_str(s)} uses tokens outside the "
                    f"alphabet: {', '.join(stray)}"
                )
    outside = [s for s in p.K if s not in p.L_set]
    if outside:
        v.append("K is not a subset of L: " + ", ".join(format_str(s) for s in outside))
    for i, fn in enumerate(p.P):
        if isinstance(fn, ObservationTable):
            absent = [s for s in p.L if s not in fn.domain]
            if absent:
                v.append(
                    f"P_{i + 1} table is partial on L: missing "
                    + ", ".join(format_str(s) for s in absent)
                )
    if isinstance(p, ControlProblem):
        if len(p.controllable) != p.n:
            v.append(
                f"expected {p.n} controllable alphabets, got {len(p.controllable)}"
            )
        for i, c in enumerate(p.controllable):
            stray = sorted(c - p.alphabet_set)
            if stray:
                v.append(
                    f"controllable alphabet of agent {i + 1} contains tokens "
                    f"outside the alphabet: {', '.join(stray)}"
                )
    return ValidationReport(tuple(v))


def observation_tuple(p: ObservationProblem, s: Str) -> tuple[Label, ...]:
    """Broadcast a string of L to every agent's observation function."""
    s = tuple(s)
    if s not in p.L_set:
        raise UnknownString(f"{format_str(s)} is not in L")
    return tuple(observe(fn, s) for fn in p.P)


def controllability_witness(c: ControlProblem) -> tuple[Str, Token] | None:
    """First (s, u) with s ∈ K, u uncontrollable, su ∈ L − K, if any."""
    for s in c.K:
        for u in c.sigma_u:
            su = s + (u,)
            if su in c.L_set and su not in c.K_set:
                return s, u
    return None


def check_controllability(c: ControlProblem) -> bool:
    """True iff every uncontrollable continuation of K inside L stays in K."""
    return controllability_witness(c) is None


@dataclass(frozen=True)
class ReducedProblem:
    """One per-event observation problem produced by reducing a control problem.

    ``agents`` lists the original agent indices that control the event; the
    embedded problem's agents appear in that order.
    """

    event: Token
    agents: tuple[int, ...]
    problem: ObservationProblem


@dataclass(frozen=True)
class ReducedFamily:
    """The per-controllable-event observation problems of a control problem."""

    problems: tuple[ReducedProblem, ...]

    @property
    def events(self) -> tuple[Token, ...]:
        return tuple(rp.event for rp in self.problems)

    def __iter__(self):
        return iter(self.problems)

    def __len__(self) -> int:
        return len(self.problems)


def reduce_control(c: ControlProblem, allow_uncontrollable: bool = False) -> ReducedFamily:
    """Split a control problem into one observation problem per controllable
    event σ, over the languages

        L_σ = {s ∈ K : sσ ∈ L}        K_σ = {s ∈ K : sσ ∈ K}

    restricted to the agents that control σ.  Raises ControllabilityViolation
    unless the problem is controllable or ``allow_uncontrollable`` is set.
    """
    if not allow_uncontrollable:
        witness = controllability_witness(c)
        if witness is not None:
            raise ControllabilityViolation(witness[0], witness[1])
    reduced = []
    for sigma in c.sigma_c:
        agents = tuple(i for i in range(c.n) if sigma in c.controllable[i])
        l_sigma = tuple(s for s in c.K if s + (sigma,) in c.L_set)
        k_sigma = tuple(s for s in c.K if s + (sigma,) in c.K_set)
        problem = ObservationProblem(
            n=len(agents),
            alphabet=c.alphabet,
            L=l_sigma,
            K=k_sigma,
            P=tuple(c.P[i] for i in agents),
        )
        reduced.append(ReducedProblem(sigma, agents, problem))
    return ReducedFamily(tuple(reduced))


@dataclass(frozen=True)
class FusionRule:
    """Partial map from combinations of local decisions to a global 0/1 verdict.

    ``decisions`` is the ordered decision set D; ``domain`` holds the allowed
    n-tuples over D, and ``outputs`` is parallel to ``domain``.
    """

    n: int
    decisions: tuple[Token, ...]
    domain: tuple[tuple[Token, ...], ...]
    outputs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "decisions", tuple(self.decisions))
        object.__setattr__(self, "domain", tuple(tuple(t) for t in self.domain))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if self.n < 1:
            raise ValueError(f"agent count must be at least 1, got {self.n}")
        if not self.decisions:
            raise ValueError("decision set must be nonempty")
        if len(set(self.decisions)) != len(self.decisions):
            raise ValueError("decision set contains duplicates")
        if len(self.outputs) != len(self.domain):
            raise ValueError(
                f"{len(self.domain)} domain tuples but {len(self.outputs)} outputs"
            )
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("domain contains duplicate tuples")
        allowed = set(self.decisions)
        for combo in self.domain:
            if len(combo) != self.n:
                raise ValueError(f"domain tuple {combo!r} does not have arity {self.n}")
            for d in combo:
                if d not in allowed:
                    raise ValueError(f"domain tuple {combo!r} uses unknown decision {d!r}")
        for out in self.outputs:
            if out not in (0, 1):
                raise ValueError(f"outputs must be 0 or 1, got {out!r}")

    @cached_property
    def _output_of(self) -> dict[tuple[Token, ...], int]:
        return dict(zip(self.domain, self.outputs))

    @cached_property
    def domain_set(self) -> frozenset[tuple[Token, ...]]:
        return frozenset(self.domain)

    def output(self, combo: Iterable[Token]) -> int:
        combo = tuple(combo)
        try:
            return self._output_of[combo]
        except KeyError:
            raise KeyError(f"{combo!r} is not an allowed decision combination") from None


BUILTIN_RULES = ("conjunctive", "disjunctive", "cpda", "conjunctive_cd", "const0", "const1")


def builtin_rule(name: str, n: int) -> FusionRule:
    """Construct one of the standard architectures for n agents.

    conjunctive     D={0,1}, every combination allowed, fuse by AND.
    disjunctive     D={0,1}, every combination allowed, fuse by OR.
    cpda            D={0,1,dk}; combinations mixing 0 and 1 or consisting
                    solely of dk are disallowed; fuse to 0 iff some 0.
    conjunctive_cd  D={0,1,cd}; only the 0/1 conflicts are disallowed; fuse
                    to 0 iff some 0 (all-cd fuses to 1).
    const0/const1   a single all-0 (all-1) combination with constant output.
    """
    if n < 1:
        raise ValueError(f"agent count must be at least 1, got {n}")
    if name == "conjunctive":
        decisions = ("0", "1")
        domain = tuple(itertools.product(decisions, repeat=n))
        outputs = tuple(int(all(d == "1" for d in combo)) for combo in domain)
    elif name == "disjunctive":
        decisions = ("0", "1")
        domain = tuple(itertools.product(decisions, repeat=n))
        outputs = tuple(int(any(d == "1" for d in combo)) for combo in domain)
    elif name == "cpda":
        decisions = ("0", "1", "dk")
        domain = tuple(
            combo
            for combo in itertools.product(decisions, repeat=n)
            if not ("0" in combo and "1" in combo) and any(d != "dk" for d in combo)
        )
        outputs = tuple(0 if "0" in combo else 1 for combo in domain)
    elif name == "conjunctive_cd":
        decisions = ("0", "1", "cd")
        domain = tuple(
            combo
            for combo in itertools.product(decisions, repeat=n)
            if not ("0" in combo and "1" in combo)
        )
        outputs = tuple(0 if "0" in combo else 1 for combo in domain)
    elif name == "const0":
        return FusionRule(n, ("0", "1"), (("0",) * n,), (0,))
    elif name == "const1":
        return FusionRule(n, ("0", "1"), (("1",) * n,), (1,))
    else:
        raise UnknownRuleName(
            f"unknown builtin rule {name!r}; choose from {', '.join(BUILTIN_RULES)}"
        )
    return FusionRule(n, decisions, domain, outputs)
