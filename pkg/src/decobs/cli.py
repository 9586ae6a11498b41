"""Command line front end.

Exit codes: 0 for a positive analysis result, 1 for a negative one
(unsolvable, controllability violation, bad solution), 2 for invalid input,
3 when a search or enumeration budget was exhausted.
"""

from __future__ import annotations

import re
import sys
from pathlib import Path

import click

from . import files
from .compare import compare as run_compare, relation_matrix
from .errors import (
    ArityMismatch,
    ControllabilityViolation,
    FileFormatError,
    SearchLimitExceeded,
)
from .graph import (
    ENCODINGS,
    ColoredGraph,
    build_decision_graph,
    build_observation_graph,
    decision_graph_to_observation,
    export_dot,
    verify_d2o,
)
from .model import (
    BUILTIN_RULES,
    ControlProblem,
    FusionRule,
    ObservationProblem,
    Problem,
    builtin_rule,
    reduce_control,
    validate_problem,
)
from .morphism import extract_solution, find_morphism, verify_morphism
from .morphism import verify_solution as check_solution

_SELECTOR = re.compile(r"^([a-z0-9_]+):(\d+)$")

_PHRASES = {
    "equivalent": "equivalent",
    "first_strictly_less": "second strictly more permissive",
    "first_strictly_more": "first strictly more permissive",
    "incomparable": "incomparable",
}


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_problem(path: str) -> Problem:
    try:
        return files.load_problem(path)
    except (FileFormatError, OSError) as e:
        _fail(2, str(e))


def _load_valid_observation(path: str) -> ObservationProblem:
    problem = _load_problem(path)
    if not isinstance(problem, ObservationProblem):
        _fail(2, f"{path}: expected an observation problem (reduce control problems first)")
    report = validate_problem(problem)
    if not report.ok:
        for violation in report.violations:
            click.echo(f"invalid: {violation}", err=True)
        sys.exit(2)
    return problem


def _resolve_rule(spec: str) -> tuple[FusionRule, str]:
    """Resolve 'name:agents' builtin selectors or rule file paths."""
    selector = _SELECTOR.match(spec)
    if selector and selector.group(1) in BUILTIN_RULES:
        try:
            return builtin_rule(selector.group(1), int(selector.group(2))), spec
        except ValueError as e:
            _fail(2, str(e))
    path = Path(spec)
    if path.exists():
        try:
            return files.load_rule(path), path.stem
        except (FileFormatError, OSError) as e:
            _fail(2, str(e))
    _fail(2, f"{spec!r} is neither a builtin rule (name:agents) nor a rule file")


def _check_arity(problem: ObservationProblem, rule: FusionRule):
    if problem.n != rule.n:
        _fail(2, f"problem has {problem.n} agents, rule has {rule.n}")


@click.group()
def main():
    """Decide solvability of decentralized observation/control problems and
    compare fusion rules by searching for coloured-graph morphisms."""


@main.command()
@click.argument("problem_file")
def validate(problem_file):
    """Report every violated invariant of a problem file."""
    problem = _load_problem(problem_file)
    report = validate_problem(problem)
    if report.ok:
        click.echo("valid")
        return
    for violation in report.violations:
        click.echo(violation)
    sys.exit(2)


@main.command()
@click.argument("control_file")
@click.option("-o", "--out", "outdir", required=True, type=click.Path())
@click.option("--allow-uncontrollable", is_flag=True, help="Reduce even if controllability fails.")
def reduce(control_file, outdir, allow_uncontrollable):
    """Split a control problem into per-event observation problem files."""
    problem = _load_problem(control_file)
    if not isinstance(problem, ControlProblem):
        _fail(2, f"{control_file}: expected a control problem")
    report = validate_problem(problem)
    if not report.ok:
        for violation in report.violations:
            click.echo(f"invalid: {violation}", err=True)
        sys.exit(2)
    try:
        family = reduce_control(problem, allow_uncontrollable=allow_uncontrollable)
    except ControllabilityViolation as e:
        _fail(1, str(e))
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    manifest: dict[str, str] = {}
    for reduced in family:
        base = files.sanitize_token(reduced.event) or "event"
        name = f"obs_{base}.json"
        suffix = 2
        while name in manifest:
            name = f"obs_{base}_{suffix}.json"
            suffix += 1
        files.dump_json(files.problem_to_obj(reduced.problem), out / name)
        manifest[name] = reduced.event
        click.echo(f"wrote {out / name}")
    files.dump_json({"type": "manifest", "files": manifest}, out / "manifest.json")
    click.echo(f"wrote {out / 'manifest.json'}")


@main.command()
@click.argument("problem_file")
@click.option("--rule", "rule_spec", required=True, help="Builtin name:agents or a rule file.")
@click.option("--witness", "witness_path", type=click.Path(), help="Write the morphism found.")
@click.option("--budget", type=int, help="Node-expansion cap for the search.")
def check(problem_file, rule_spec, witness_path, budget):
    """Decide whether an observation problem is solvable under a rule."""
    problem = _load_valid_observation(problem_file)
    rule, _ = _resolve_rule(rule_spec)
    _check_arity(problem, rule)
    source = build_observation_graph(problem)
    target = build_decision_graph(rule)
    try:
        found = find_morphism(source, target, budget=budget)
    except SearchLimitExceeded as e:
        _fail(3, str(e))
    if found is None:
        click.echo("UNSOLVABLE")
        sys.exit(1)
    if not verify_morphism(found).ok:
        raise RuntimeError("found morphism failed verification")
    if witness_path:
        files.dump_json(files.morphism_to_obj(found), witness_path)
        click.echo(f"wrote {witness_path}")
    click.echo("SOLVABLE")


@main.command()
@click.argument("problem_file")
@click.option("--rule", "rule_spec", required=True, help="Builtin name:agents or a rule file.")
@click.option("-o", "--out", "solution_path", required=True, type=click.Path())
@click.option("--witness", "witness_path", type=click.Path(), help="Write the morphism found.")
@click.option("--budget", type=int, help="Node-expansion cap for the search.")
def solve(problem_file, rule_spec, solution_path, witness_path, budget):
    """Construct and write per-agent decision tables, if any exist."""
    problem = _load_valid_observation(problem_file)
    rule, _ = _resolve_rule(rule_spec)
    _check_arity(problem, rule)
    source = build_observation_graph(problem)
    target = build_decision_graph(rule)
    try:
        found = find_morphism(source, target, budget=budget)
    except SearchLimitExceeded as e:
        _fail(3, str(e))
    if found is None:
        click.echo("UNSOLVABLE")
        sys.exit(1)
    solution = extract_solution(found, problem, rule)
    if not check_solution(problem, solution, rule):
        raise RuntimeError("extracted solution failed verification")
    if witness_path:
        files.dump_json(files.morphism_to_obj(found), witness_path)
        click.echo(f"wrote {witness_path}")
    files.dump_json(files.solution_to_obj(solution), solution_path)
    click.echo(f"wrote {solution_path}")
    click.echo("SOLVABLE")


@main.command("verify-solution")
@click.argument("problem_file")
@click.argument("solution_file")
@click.option("--rule", "rule_spec", required=True, help="Builtin name:agents or a rule file.")
def verify_solution_cmd(problem_file, solution_file, rule_spec):
    """Re-check a solution file against a problem and a rule."""
    problem = _load_valid_observation(problem_file)
    rule, _ = _resolve_rule(rule_spec)
    _check_arity(problem, rule)
    try:
        solution = files.load_solution(solution_file)
    except (FileFormatError, OSError) as e:
        _fail(2, str(e))
    if check_solution(problem, solution, rule):
        click.echo("verified")
    else:
        click.echo("not a solution")
        sys.exit(1)


@main.command("compare")
@click.argument("rule_a")
@click.argument("rule_b")
@click.option("--witness", "witness_prefix", help="Write found morphisms as PREFIX_fwd/bwd.json.")
@click.option("--separating", "separating_prefix", help="Write separating problems when one exists.")
@click.option("--budget", type=int, help="Node-expansion cap per search.")
@click.option("-o", "--out", "out_path", type=click.Path(), help="Write the verdict as JSON.")
def compare_cmd(rule_a, rule_b, witness_prefix, separating_prefix, budget, out_path):
    """Compare the permissiveness of two fusion rules."""
    first, _ = _resolve_rule(rule_a)
    second, _ = _resolve_rule(rule_b)
    try:
        verdict = run_compare(first, second, budget=budget)
    except ArityMismatch as e:
        _fail(2, str(e))
    except SearchLimitExceeded as e:
        _fail(3, str(e))
    click.echo(_PHRASES[verdict.relation])
    if witness_prefix:
        for tag, witness in (("fwd", verdict.witness_fwd), ("bwd", verdict.witness_bwd)):
            if witness is not None:
                path = f"{witness_prefix}_{tag}.json"
                files.dump_json(files.morphism_to_obj(witness), path)
                click.echo(f"wrote {path}")
    if separating_prefix:
        for tag, donor, witness in (
            ("first_not_second", first, verdict.witness_fwd),
            ("second_not_first", second, verdict.witness_bwd),
        ):
            if witness is None:
                result = decision_graph_to_observation(donor)
                path = f"{separating_prefix}_{tag}.json"
                files.dump_json(files.problem_to_obj(result.problem), path)
                click.echo(f"wrote {path}")
    if out_path:
        obj = {
            "type": "verdict",
            "relation": verdict.relation,
            "witness_fwd": files.morphism_to_obj(verdict.witness_fwd)
            if verdict.witness_fwd
            else None,
            "witness_bwd": files.morphism_to_obj(verdict.witness_bwd)
            if verdict.witness_bwd
            else None,
        }
        files.dump_json(obj, out_path)
        click.echo(f"wrote {out_path}")


@main.command()
@click.argument("rule_specs", nargs=-1, required=True)
@click.option("--budget", type=int, help="Node-expansion cap per search.")
@click.option("-o", "--out", "out_path", type=click.Path(), help="Write the matrix as JSON.")
def poset(rule_specs, budget, out_path):
    """Pairwise permissiveness matrix and Hasse diagram for several rules."""
    resolved = [_resolve_rule(spec) for spec in rule_specs]
    rules = [rule for rule, _ in resolved]
    labels = [label for _, label in resolved]
    try:
        matrix = relation_matrix(rules, budget=budget)
    except ArityMismatch as e:
        _fail(2, str(e))
    except SearchLimitExceeded as e:
        _fail(3, str(e))
    for i in range(len(rules)):
        for j in range(i + 1, len(rules)):
            click.echo(f"{labels[i]} vs {labels[j]}: {_PHRASES[matrix.verdicts[i][j].relation]}")

    def class_label(c: int) -> str:
        return "{" + ", ".join(labels[i] for i in matrix.classes[c]) + "}"

    click.echo("classes: " + "; ".join(class_label(c) for c in range(len(matrix.classes))))
    if matrix.hasse:
        for lower, upper in matrix.hasse:
            click.echo(f"{class_label(lower)} < {class_label(upper)}")
    else:
        click.echo("no strict comparisons")
    if out_path:
        obj = {
            "type": "poset",
            "rules": labels,
            "matrix": [[v.relation for v in row] for row in matrix.verdicts],
            "classes": [[labels[i] for i in cls] for cls in matrix.classes],
            "hasse": [list(edge) for edge in matrix.hasse],
        }
        files.dump_json(obj, out_path)
        click.echo(f"wrote {out_path}")


@main.command()
@click.argument("rule_spec")
@click.option(
    "--encoding",
    type=click.Choice(list(ENCODINGS)),
    default="unary",
    show_default=True,
)
@click.option("-o", "--out", "prefix", required=True, help="Output path prefix.")
def d2o(rule_spec, encoding, prefix):
    """Recast a rule's decision graph as an observation problem."""
    rule, _ = _resolve_rule(rule_spec)
    result = decision_graph_to_observation(rule, encoding)
    if not verify_d2o(result, rule):
        raise RuntimeError("conversion failed its isomorphism check")
    problem_path = f"{prefix}.problem.json"
    bijection_path = f"{prefix}.bijection.json"
    files.dump_json(files.problem_to_obj(result.problem), problem_path)
    files.dump_json(files.bijection_to_obj(result), bijection_path)
    click.echo(f"wrote {problem_path}")
    click.echo(f"wrote {bijection_path}")


@main.command("graph")
@click.argument("source")
@click.option("--dot", "dot_path", type=click.Path(), help="Write DOT here instead of stdout.")
def graph_cmd(source, dot_path):
    """Export the observation or decision graph of a problem file or rule."""
    built = _resolve_graph_source(source)
    text = export_dot(built)
    if dot_path:
        Path(dot_path).write_text(text, encoding="utf-8")
        click.echo(f"wrote {dot_path}")
    else:
        click.echo(text, nl=False)


def _resolve_graph_source(source: str) -> ColoredGraph:
    selector = _SELECTOR.match(source)
    if selector and selector.group(1) in BUILTIN_RULES:
        rule, _ = _resolve_rule(source)
        return build_decision_graph(rule)
    path = Path(source)
    if not path.exists():
        _fail(2, f"{source!r} is neither a builtin rule (name:agents) nor a file")
    try:
        obj = files.read_json(path)
    except FileFormatError as e:
        _fail(2, str(e))
    kind = obj.get("type") if isinstance(obj, dict) else None
    if kind == files.RULE_TYPE:
        try:
            return build_decision_graph(files.parse_rule(obj))
        except FileFormatError as e:
            _fail(2, str(e))
    if kind == "observation":
        try:
            problem = files.parse_problem(obj)
        except FileFormatError as e:
            _fail(2, str(e))
        report = validate_problem(problem)
        if not report.ok:
            for violation in report.violations:
                click.echo(f"invalid: {violation}", err=True)
            sys.exit(2)
        return build_observation_graph(problem)
    if kind == "control":
        _fail(2, "control problems have no graph of their own; reduce first")
    _fail(2, f"{source}: cannot build a graph from a {kind!r} file")


if __name__ == "__main__":
    main()
