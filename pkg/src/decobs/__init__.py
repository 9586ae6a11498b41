"""Decentralized observation/control problems, edge-coloured observation and
decision graphs, morphism search, and permissiveness comparison of fusion
rules."""

from .compare import (
    RELATIONS,
    PermissivenessVerdict,
    RelationMatrix,
    compare,
    relation_matrix,
    separating_problem,
)
from .errors import (
    ArityMismatch,
    BudgetExceeded,
    ControllabilityViolation,
    DecobsError,
    FileFormatError,
    GraphMismatch,
    InconsistentMorphism,
    SearchLimitExceeded,
    UnknownRuleName,
    UnknownString,
)
from .graph import (
    ENCODINGS,
    AgentSet,
    ColoredGraph,
    D2OResult,
    Quotient,
    build_decision_graph,
    build_observation_graph,
    decision_graph_to_observation,
    export_dot,
    quotient_by_indistinguishability,
    verify_d2o,
)
from .model import (
    BUILTIN_RULES,
    EPSILON,
    ControlProblem,
    FusionRule,
    ObservationFunction,
    ObservationProblem,
    ObservationTable,
    Projection,
    ReducedFamily,
    ReducedProblem,
    Str,
    Token,
    ValidationReport,
    builtin_rule,
    check_controllability,
    controllability_witness,
    format_str,
    observation_tuple,
    observe,
    reduce_control,
    validate_problem,
)
from .morphism import (
    Morphism,
    MorphismReport,
    Solution,
    compose,
    extract_solution,
    find_morphism,
    solvable_by_enumeration,
    verify_morphism,
    verify_solution,
)

__all__ = [
    "AgentSet",
    "ArityMismatch",
    "BUILTIN_RULES",
    "BudgetExceeded",
    "ColoredGraph",
    "compare",
    "compose",
    "ControllabilityViolation",
    "ControlProblem",
    "D2OResult",
    "DecobsError",
    "decision_graph_to_observation",
    "ENCODINGS",
    "EPSILON",
    "export_dot",
    "extract_solution",
    "FileFormatError",
    "find_morphism",
    "format_str",
    "FusionRule",
    "GraphMismatch",
    "InconsistentMorphism",
    "Morphism",
    "MorphismReport",
    "ObservationFunction",
    "ObservationProblem",
    "ObservationTable",
    "observation_tuple",
    "observe",
    "PermissivenessVerdict",
    "Projection",
    "Quotient",
    "quotient_by_indistinguishability",
    "ReducedFamily",
    "ReducedProblem",
    "reduce_control",
    "relation_matrix",
    "RELATIONS",
    "RelationMatrix",
    "SearchLimitExceeded",
    "separating_problem",
    "Solution",
    "solvable_by_enumeration",
    "Str",
    "Token",
    "builtin_rule",
    "build_decision_graph",
    "build_observation_graph",
    "check_controllability",
    "controllability_witness",
    "UnknownRuleName",
    "UnknownString",
    "ValidationReport",
    "validate_problem",
    "verify_d2o",
    "verify_morphism",
    "verify_solution",
]
