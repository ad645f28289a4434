"""
Command-line interface

    gstructures check FILE            compatibility + classification
    gstructures lift FILE --kind K    write the lifted structure file
    gstructures evolve-verify FILE    evolution residuals of a family file
    gstructures catalog               list / inspect / export built-in examples

Exit codes: 0 pass, 1 expectation failure, 2 unreadable input or kind
mismatch, 3 inconsistent frame, ring or map.
"""

import functools
import json
import logging
import sys
from typing import Any, Dict, List, Mapping, Optional, Tuple

import click

from gstructures.config import settings
from gstructures.errors import (
    CatalogError,
    ExpressionError,
    FrameError,
    GStructureError,
    MissingRuleError,
    RingError,
    StructureError,
    StructureFileError,
)
from gstructures.models.enums import EvolutionKind, LiftKind, StructureKind
from gstructures.models.schemas import CheckOutput, CheckReportModel, PositivityModel
from gstructures.services import catalog as catalog_service
from gstructures.services.lifts import apply_lift, evolution_residual
from gstructures.services.structure_io import (
    LoadedStructure,
    dumps,
    export_structure,
    load_structure,
    write_document,
)
from gstructures.services.structures import (
    CheckReport,
    check_compatibility,
    check_positivity_numeric,
    classify,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_INPUT = 2
EXIT_INCONSISTENT = 3

INPUT_ERRORS = (StructureFileError, ExpressionError, StructureError, CatalogError)
CONSISTENCY_ERRORS = (FrameError, RingError, MissingRuleError)


def exit_code_for(exc: GStructureError) -> int:
    if isinstance(exc, INPUT_ERRORS):
        return EXIT_INPUT
    if isinstance(exc, CONSISTENCY_ERRORS):
        return EXIT_INCONSISTENT
    return EXIT_INPUT


def handle_errors(fn):
    """Map engine exceptions onto exit codes"""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GStructureError as exc:
            code = exit_code_for(exc)
            logger.debug(f"{type(exc).__name__}: {exc}")
            click.echo(f"error: {exc}", err=True)
            sys.exit(code)
    return wrapper


def _emit_json(data: Any) -> None:
    click.echo(json.dumps(data, indent=settings.json_indent, sort_keys=True, ensure_ascii=False))


def _report_model(report: CheckReport) -> CheckReportModel:
    return CheckReportModel.model_validate(report.to_dict())


def _mismatches(flags: Mapping[str, bool], expected: Mapping[str, bool]) -> List[str]:
    out = []
    for flag, want in sorted(expected.items()):
        if flag not in flags:
            out.append(f"{flag}: expected {str(want).lower()}, not computed")
        elif flags[flag] != want:
            out.append(f"{flag}: expected {str(want).lower()}, got {str(flags[flag]).lower()}")
    return out


def _finish(output: CheckOutput, reports: List[CheckReport], as_json: bool) -> None:
    if as_json:
        _emit_json(output.model_dump(mode="json"))
    else:
        click.echo(f"{output.name or output.source} ({output.kind.value})")
        for report in reports:
            click.echo(report.summary())
        if output.positivity is not None:
            p = output.positivity
            mark = "ok" if p.passed else "FAIL"
            click.echo(f"positivity [{mark}]: min eigenvalue {p.min_eigenvalue:.6g} over {p.samples} samples")
        for line in output.mismatches:
            click.echo(f"MISMATCH {line}")
        click.echo("PASS" if output.passed else "FAIL")
    sys.exit(EXIT_OK if output.passed else EXIT_EXPECTATION)


# =============================================================================
# Command group
# =============================================================================

@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level")
@click.version_option(settings.app_version, prog_name=settings.app_name)
def cli(verbose: bool) -> None:
    """Exact verification of SU(2), SU(3) and G2 structure equations."""
    level = logging.DEBUG if verbose or settings.debug else getattr(logging, settings.log_level.upper(), logging.INFO)
    logging.basicConfig(level=level, format=settings.log_format)


def _run_checks(loaded: LoadedStructure, positivity: bool, equations: Optional[EvolutionKind] = None) -> Tuple[CheckOutput, List[CheckReport]]:
    s = loaded.structure
    reports: List[CheckReport] = []
    compat = check_compatibility(s)
    if compat is not None:
        reports.append(compat)
    reports.append(classify(s))
    equations = equations or loaded.equations
    if loaded.family is not None and equations is not None:
        reports.append(evolution_residual(loaded.family, equations))

    flags: Dict[str, bool] = {}
    for report in reports:
        flags.update(report.flags)

    positivity_model = None
    if positivity:
        if s.kind != StructureKind.SU2:
            raise StructureError("positivity sampling applies to SU(2)-structures")
        result = check_positivity_numeric(
            s, sampler=loaded.sampler, samples=loaded.samples, parameters=loaded.parameters
        )
        positivity_model = PositivityModel.model_validate(result.to_dict())
        flags["positive"] = result.passed

    mismatches = _mismatches(flags, loaded.expected)
    output = CheckOutput(
        source=loaded.source,
        name=loaded.name,
        kind=s.kind,
        reports=[_report_model(r) for r in reports],
        flags=dict(sorted(flags.items())),
        expected=dict(sorted(loaded.expected.items())),
        mismatches=mismatches,
        positivity=positivity_model,
        passed=not mismatches,
    )
    return output, reports


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON report with sorted keys")
@click.option("--positivity", is_flag=True, help="Also sample the SU(2) positivity condition")
@handle_errors
def check(file: str, as_json: bool, positivity: bool) -> None:
    """Run compatibility and classification checks on a structure file."""
    loaded = load_structure(file)
    output, reports = _run_checks(loaded, positivity)
    _finish(output, reports, as_json)


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option(
    "--kind",
    "kind",
    required=True,
    type=click.Choice([k.value for k in LiftKind]),
    help="Lift to apply",
)
@click.option("--out", "out", type=click.Path(dir_okay=False), default=None, help="Output file (stdout when omitted)")
@handle_errors
def lift(file: str, kind: str, out: Optional[str]) -> None:
    """Lift a structure one dimension up and write the result as a structure file."""
    loaded = load_structure(file)
    result = apply_lift(loaded.structure, LiftKind(kind))
    doc = export_structure(result, name=f"{loaded.name}+{kind}" if loaded.name else None)
    if out:
        write_document(doc, out)
        click.echo(f"wrote {result.kind.value} structure to {out}")
    else:
        click.echo(dumps(doc))


@cli.command("evolve-verify")
@click.argument("file", type=click.Path(dir_okay=False))
@click.option(
    "--equations",
    type=click.Choice([k.value for k in EvolutionKind]),
    default=None,
    help="Evolution system (defaults to the file's family.equations)",
)
@click.option("--json", "as_json", is_flag=True, help="Emit a JSON report with sorted keys")
@handle_errors
def evolve_verify(file: str, equations: Optional[str], as_json: bool) -> None:
    """Check the evolution equations on a family file."""
    loaded = load_structure(file)
    if loaded.family is None:
        raise StructureFileError("file has no family block (time generator)", "family")
    kind = EvolutionKind(equations) if equations else loaded.equations
    if kind is None:
        raise StructureFileError("no evolution system given (--equations or family.equations)", "family.equations")
    report = evolution_residual(loaded.family, kind)
    expected = {"evolution": True}
    expected.update({k: v for k, v in loaded.expected.items() if k in report.flags})
    mismatches = _mismatches(report.flags, expected)
    output = CheckOutput(
        source=loaded.source,
        name=loaded.name,
        kind=loaded.structure.kind,
        reports=[_report_model(report)],
        flags=dict(sorted(report.flags.items())),
        expected=dict(sorted(expected.items())),
        mismatches=mismatches,
        passed=not mismatches,
    )
    _finish(output, [report], as_json)


def export_entry(entry: "catalog_service.CatalogEntry") -> Dict[str, Any]:
    return export_structure(
        entry.structure,
        entry.name,
        entry.expected,
        entry.metric,
        entry.family,
        entry.evolution,
        entry.sampler,
        entry.parameters,
    )


@cli.command()
@click.option("--list", "list_only", is_flag=True, help="List entries with their expected flags")
@click.option("--name", default=None, help="Entry to build and summarize")
@click.option("--export", "export_path", type=click.Path(dir_okay=False), default=None, help="Write the entry as a structure file")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON")
@handle_errors
def catalog(list_only: bool, name: Optional[str], export_path: Optional[str], as_json: bool) -> None:
    """Built-in example structures."""
    if list_only or name is None:
        if export_path:
            raise CatalogError("--export needs --name")
        entries = catalog_service.list_entries()
        if as_json:
            _emit_json(
                {n: {"kind": info.kind.value, "expected": dict(info.expected), "notes": info.notes} for n, info in entries}
            )
            return
        for n, info in entries:
            flags = ", ".join(f"{k}={str(v).lower()}" for k, v in sorted(info.expected.items()))
            click.echo(f"{n:<18} {info.kind.value:<4} {flags}")
        return

    entry = catalog_service.get_entry(name)
    if export_path:
        write_document(export_entry(entry), export_path)
        click.echo(f"wrote {name} to {export_path}")
        return
    doc = export_entry(entry)
    if as_json:
        click.echo(dumps(doc))
        return
    click.echo(f"{entry.name} ({entry.kind.value}) on frame {entry.frame.name or '-'}")
    if entry.notes:
        click.echo(f"  {entry.notes}")
    for k, v in sorted(entry.expected.items()):
        click.echo(f"  expect {k}: {str(v).lower()}")
    for label, form in entry.structure.forms().items():
        click.echo(f"  {label} = {form.render()}")


def main() -> None:
    cli(prog_name=settings.app_name)


if __name__ == "__main__":
    main()
