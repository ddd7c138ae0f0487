#!/usr/bin/env python3

# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Batch command line for graded valuation computations."""
import argparse
import json
import logging
import random
import sys
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Optional

from gradedval.v0.constants_gradedval import (
    DefaultPoolExponent,
    DefaultSampleSeed,
    ExitMathFailure,
    ExitSuccess,
    ExitUsageError,
    ToolName,
)
from gradedval.v0.fixtures import UNIVERSES, universe_elements
from gradedval.v0.galois import fixed_subfield, orbit_on_extensions
from gradedval.v0.gradedfield import efn
from gradedval.v0.gradedval_exceptions import (
    ConfigError,
    MathematicalFailure,
    UsageError,
)
from gradedval.v0.gradedvaluation import extend_valuation, graded_residue, gvalue, ring_member
from gradedval.v0.grading import format_index, format_vector
from gradedval.v0.helper_conf_loader import YamlConfigLoader
from gradedval.v0.quotient import torsor_check
from gradedval.v0.suites import run_suite, suite_names
from gradedval.v0.workspace import Workspace
from gradedval.v0.zrspace import (
    MembershipTable,
    nonvaluation_certificate,
    perturbed_table,
    stable_affine_neighborhood,
    trace_table,
)

logger = logging.getLogger(__name__)


class CommandResult:
    """Body of a report and the exit code it implies."""

    def __init__(self, body: Dict[str, Any], exit_code: int = ExitSuccess):
        self.body = body
        self.exit_code = exit_code


def _graded_field_of(ws: Workspace, valuation: str) -> str:
    ws.valuation(valuation)
    return ws.specs["valuations"][valuation].graded_field


def cmd_eval(ws: Workspace, args: argparse.Namespace) -> CommandResult:
    """Normalize an element and, given a valuation, evaluate it."""
    if args.valuation is None and args.field is None:
        raise ConfigError("eval needs --field or --valuation.")

    field_name = args.field or _graded_field_of(ws, args.valuation)
    x = ws.element(args.expression, field_name)
    body: Dict[str, Any] = {
        "graded_field": field_name,
        "element": str(x),
        "terms": x.descriptor(),
        "homogeneous": x.is_homogeneous,
    }
    if args.valuation is not None:
        V = ws.valuation(args.valuation)
        member = ring_member(V, x)
        value = format_vector(gvalue(V, x))
        body.update({"valuation": args.valuation, "value": value, "member": member})
        if member and x.is_homogeneous and not x.is_zero:
            body["residue"] = str(graded_residue(V, x))
    return CommandResult(body)


def cmd_suite(ws: Workspace, args: argparse.Namespace) -> CommandResult:
    """Run one property suite."""
    report = run_suite(args.name, ws, args.pool_exponent)
    return CommandResult(report.summary(), ExitSuccess if report.passed else ExitMathFailure)


def cmd_extend(ws: Workspace, args: argparse.Namespace) -> CommandResult:
    """List the extensions of a valuation along a named extension."""
    ext = ws.extension(args.extension)
    e, f, n = efn(ext)
    extensions = extend_valuation(ws.valuation(args.valuation), ext)
    return CommandResult(
        {
            "extension": args.extension,
            "valuation": args.valuation,
            "e": format_index(e),
            "f": format_index(f),
            "n": format_index(n),
            "extensions": [A.descriptor() for A in extensions],
        }
    )


def cmd_orbit(ws: Workspace, args: argparse.Namespace) -> CommandResult:
    """G-orbits on the extensions of a valuation of the fixed field."""
    G = ws.group(args.group)
    fixed, ext = fixed_subfield(G)
    orbits = orbit_on_extensions(G, ws.valuation(args.valuation), ext)
    return CommandResult(
        {
            "group": args.group,
            "valuation": args.valuation,
            "fixed_field": str(fixed),
            "orbits": [o.to_dict() for o in orbits],
        }
    )


def cmd_neighborhood(ws: Workspace, args: argparse.Namespace) -> CommandResult:
    """Affine G-stable neighborhood for a model scenario."""
    spec = ws.model_spec(args.model)
    scenarios = {s.name: s for s in spec.scenarios}
    if args.scenario not in scenarios:
        raise ConfigError(f"Model '{args.model}' has no scenario '{args.scenario}'.")

    scenario = scenarios[args.scenario]
    m = ws.model(args.model)
    exponent = scenario.pool_exponent or args.pool_exponent
    S = [m.index(p) for p in scenario.S]
    U = [m.index(p) for p in scenario.U]
    result = stable_affine_neighborhood(m, S, U, exponent)
    return CommandResult(
        {
            "model": args.model,
            "scenario": args.scenario,
            "pool_exponent": exponent,
            "hasse": m.to_dict()["hasse"],
            **result.to_dict(m),
        }
    )


def cmd_torsor(ws: Workspace, args: argparse.Namespace) -> CommandResult:
    """Comparison map of A' ⊗ A' with the product over G."""
    G = ws.group(args.group)
    report = torsor_check(G, G.parent)
    return CommandResult({"group": args.group, **report.to_dict()})


def _table_from_file(ws: Workspace, path: str):
    try:
        document = YamlConfigLoader().load(path)
    except FileNotFoundError as e:
        raise ConfigError(str(e))
    if "graded_field" not in document or "members" not in document:
        raise ConfigError(f"{path}: a table needs 'graded_field' and 'members'.")

    field_name = document["graded_field"]
    entries = document["members"]
    universe = [ws.element(str(text), field_name) for text in entries]
    k_elems = [ws.element(str(text), field_name) for text in document.get("k", ["1", "-1"])]
    try:
        return MembershipTable(universe, [bool(b) for b in entries.values()]), k_elems
    except ValueError as e:
        raise ConfigError(f"{path}: {e}")


def cmd_certify(ws: Workspace, args: argparse.Namespace) -> CommandResult:
    """Search a non-valuation certificate for a membership table."""
    if args.table is not None:
        table, k_elems = _table_from_file(ws, args.table)
        source: Dict[str, Any] = {"table": args.table}
    else:
        if args.universe not in UNIVERSES or args.valuation is None:
            raise ConfigError(
                f"certify needs --table, or --valuation and --universe among {sorted(UNIVERSES)}."
            )
        field_name, expressions, k_expressions = UNIVERSES[args.universe]
        if _graded_field_of(ws, args.valuation) != field_name:
            raise ConfigError(f"Valuation '{args.valuation}' does not live on {field_name}.")

        parent = ws.graded_field(field_name)
        elements = universe_elements(parent, expressions)
        table = trace_table(ws.valuation(args.valuation), elements)
        k_elems = [ws.element(k, field_name) for k in k_expressions]
        if args.flips:
            valuations = [V for V in ws.valuations.values() if V.parent == parent]
            genuine = [trace_table(V, elements) for V in valuations]
            table = perturbed_table(table, args.flips, random.Random(args.seed), genuine)
        source = {
            "universe": args.universe,
            "valuation": args.valuation,
            "flips": args.flips,
            "seed": args.seed,
        }

    certificate = nonvaluation_certificate(table, k_elems, strict=args.strict)
    body = {**source, "members": table.to_dict(), "certificate": None}
    if certificate is None:
        return CommandResult(body)

    body["certificate"] = certificate.to_dict()
    body["replays"] = certificate.replay(table)
    return CommandResult(body, ExitMathFailure)


COMMANDS: Dict[str, Callable[[Workspace, argparse.Namespace], CommandResult]] = {
    "eval": cmd_eval,
    "suite": cmd_suite,
    "extend": cmd_extend,
    "orbit": cmd_orbit,
    "neighborhood": cmd_neighborhood,
    "torsor": cmd_torsor,
    "certify": cmd_certify,
}


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(prog=ToolName, description=__doc__)
    parser.add_argument(
        "--config", action="append", default=[], help="config document, repeatable"
    )
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--no-timestamp", action="store_true", help="omit the timestamp header")
    parser.add_argument("--pool-exponent", type=int, default=DefaultPoolExponent)
    parser.add_argument(
        "--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"]
    )
    parser.add_argument(
        "--no-fixtures", action="store_true", help="do not load the shipped entities"
    )

    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("eval", help="normalize and evaluate an element")
    p.add_argument("expression")
    p.add_argument("--field")
    p.add_argument("--valuation")

    p = commands.add_parser("suite", help="run a property suite")
    p.add_argument("name", help=", ".join(suite_names()))

    p = commands.add_parser("extend", help="list valuation extensions")
    p.add_argument("--valuation", required=True)
    p.add_argument("--extension", required=True)

    p = commands.add_parser("orbit", help="orbits of G on extensions")
    p.add_argument("--group", required=True)
    p.add_argument("--valuation", required=True)

    p = commands.add_parser("neighborhood", help="G-stable affine neighborhood")
    p.add_argument("--model", required=True)
    p.add_argument("--scenario", required=True)

    p = commands.add_parser("torsor", help="torsor comparison map")
    p.add_argument("--group", required=True)

    p = commands.add_parser("certify", help="non-valuation certificate for a membership table")
    p.add_argument("--table")
    p.add_argument("--universe")
    p.add_argument("--valuation")
    p.add_argument("--flips", type=int, default=0)
    p.add_argument("--seed", type=int, default=DefaultSampleSeed)
    p.add_argument("--strict", action="store_true")

    return parser


def render(command: str, body: Dict[str, Any], timestamp: bool) -> str:
    """JSON report with the header fields."""
    header = {"tool": ToolName, "command": command}
    if timestamp:
        header["timestamp"] = datetime.now(timezone.utc).isoformat()
    return json.dumps({**header, **body}, sort_keys=True, indent=2, default=str) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as f:
        f.write(text)


def _emit_error(args: argparse.Namespace, e: Exception) -> None:
    logger.error(f"{type(e).__name__}: {e}")
    body = {"error": str(e), "error_kind": type(e).__name__}
    _emit(render(args.command, body, not args.no_timestamp), args.out)


def main(argv: Optional[List[str]] = None) -> int:
    """Run a command, returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitSuccess if e.code == 0 else ExitUsageError

    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")
    if args.pool_exponent < 1:
        logger.error("--pool-exponent must be positive")
        return ExitUsageError

    try:
        ws = Workspace.load(args.config, include_fixtures=not args.no_fixtures)
        logger.info(f"Running {args.command}")
        result = COMMANDS[args.command](ws, args)
    except UsageError as e:
        _emit_error(args, e)
        return ExitUsageError
    except MathematicalFailure as e:
        _emit_error(args, e)
        return ExitMathFailure

    _emit(render(args.command, result.body, not args.no_timestamp), args.out)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
