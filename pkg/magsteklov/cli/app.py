"""
magsteklov command-line front end.

Subcommands emit spectrum tables and sweeps, frustration and Cheeger
reports, bound checks, the acceptance suite and the spectrum figures.

Exit statuses: 0 success, 1 check failure, 2 usage or configuration error,
3 numerical failure.
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from pydantic import ValidationError

from magsteklov import __version__, exc
from magsteklov.bounds import (
    asymptotic_check,
    comparison_report,
    gauge_periodicity_check,
    max_principle_check,
    monotonicity_check,
    neumann_cheeger_diagnostic,
    reilly_flat_disk,
    subharmonic_l2_check,
    upper_bound_disk,
)
from magsteklov.builders import builder_for
from magsteklov.engines import StandardModeSolver
from magsteklov.geometry import cheeger_quotients, frustration, jammes_diagnostic, jammes_family
from magsteklov.models import BoundReport, FrustrationSpec, ReportStatus, SpectralModel, SpectrumTable

from . import output
from .config import RunConfig, TRange, load_config
from .verify import CheckOutcome, run_acceptance

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

FIGURE_GRID = TRange(start=0.0, step=0.1, stop=10.0)
BOUND_COLUMNS = ("name", "t", "lhs", "rhs", "satisfied", "applicable", "status", "theorem_backed")
CHEEGER_COLUMNS = ("t", "domain", "s", "frustration", "h", "h_prime", "lhs", "rhs", "status")
FRUSTRATION_COLUMNS = ("g", "r_inner", "r_outer", "punctured", "value", "minimizing_integer",
                       "quadrature_error_estimate")
VERIFY_COLUMNS = ("name", "status", "lhs", "rhs", "tolerance")
VERDICT_STATUSES = (ReportStatus.SATISFIED, ReportStatus.FAILED)


def _solver(config: RunConfig) -> StandardModeSolver:
    return StandardModeSolver(config.solver_policy())


def _require_tabular(config: RunConfig) -> None:
    if config.output_format == "svg":
        raise exc.ConfigurationError(f"svg output is only available for spectrum and figures, not {config.command}")


def _emit_report(config: RunConfig, columns: Sequence[str], rows: list[dict[str, Any]], report: Any) -> None:
    if config.output_format == "json":
        text = output.render_json(config.command, _config_dump(config), "report", report)
    else:
        text = output.render_csv(rows, columns)
    output.emit(text, config.output)


def _config_dump(config: RunConfig) -> dict[str, Any]:
    dumped = config.model_dump(mode="json")
    dumped["t"] = str(config.t)
    dumped["s_grid"] = str(config.s_grid)
    return dumped


def _bound_row(report: BoundReport, t: Optional[float]) -> dict[str, Any]:
    # satisfied is left empty unless the report carries a verdict
    satisfied = report.satisfied if report.status in VERDICT_STATUSES else None
    return {"name": report.name, "t": t, "lhs": report.lhs, "rhs": report.rhs, "satisfied": satisfied,
            "applicable": report.applicable, "status": report.status.value, "theorem_backed": report.theorem_backed}


def _tables(config: RunConfig, model: SpectralModel, grid: TRange) -> list[SpectrumTable]:
    builder = builder_for(model, _solver(config), config.ball4_config())
    return [builder.build(t, config.k_max) for t in grid.values()]


# --- Commands ---

def cmd_spectrum(config: RunConfig) -> int:
    """One row per mode and field strength, or an eigenvalue-versus-t plot."""
    tables = _tables(config, config.model, config.t)
    if config.output_format == "svg":
        text = output.render_svg(output.spectrum_series(tables), f"{config.model.value} spectrum, k <= {config.k_max}")
    elif config.output_format == "json":
        text = output.render_json(config.command, _config_dump(config), "rows", output.spectrum_rows(tables))
    else:
        text = output.render_csv(output.spectrum_rows(tables))
    output.emit(text, config.output)
    return EXIT_OK


def cmd_frustration(config: RunConfig) -> int:
    """Frustration constant of g(r) dtheta on a disk, annulus or punctured disk."""
    _require_tabular(config)
    spec = FrustrationSpec(profile=config.profile, r_inner=config.r_inner, r_outer=config.r0,
                           punctured=config.punctured)
    result = frustration(spec)
    row = {"g": config.g, "r_inner": spec.r_inner, "r_outer": spec.r_outer, "punctured": spec.punctured,
           **result.model_dump()}
    _emit_report(config, FRUSTRATION_COLUMNS, [row], row)
    return EXIT_OK


def cmd_cheeger(config: RunConfig) -> int:
    """Cheeger quotients of the test-domain family and the resulting diagnostic, per t."""
    _require_tabular(config)
    solver = _solver(config)
    s_values = config.s_grid.values()
    rows, summaries, diagnostics = [], [], []
    for t in config.t.values():
        for domain in jammes_family(s_values):
            quotients = cheeger_quotients(t, domain)
            rows.append({"t": t, "domain": domain.kind, "s": domain.s, "frustration": quotients.frustration,
                         "h": quotients.h_quotient, "h_prime": quotients.h_prime_quotient})
        diagnostic = jammes_diagnostic(t, s_values, solver)
        diagnostics.append(diagnostic.model_dump(mode="json"))
        summaries.append({"t": t, "domain": "diagnostic", "lhs": diagnostic.lhs, "rhs": diagnostic.rhs,
                          "status": diagnostic.status.value})
    _emit_report(config, CHEEGER_COLUMNS, rows + summaries, {"quotients": rows, "diagnostics": diagnostics})
    return EXIT_OK


def _single_field_report(config: RunConfig, t: float) -> BoundReport:
    solver = _solver(config)
    check = config.check
    if check == "upper":
        return upper_bound_disk(t, solver)
    if check == "reilly":
        return reilly_flat_disk(t, solver)
    if check == "max-principle":
        return max_principle_check(config.k, config.sign, t, solver=solver)
    if check == "l2":
        return subharmonic_l2_check(config.k, config.sign, t, solver)
    if check == "gauge":
        return gauge_periodicity_check(t, config.k_max)
    if check == "jammes":
        return jammes_diagnostic(t, config.s_grid.values(), solver)
    return neumann_cheeger_diagnostic(t, config.s_grid.values())


def cmd_bounds(config: RunConfig) -> int:
    """Runs one bound check over the t-range; exits 1 if an applicable theorem-backed check fails."""
    _require_tabular(config)
    t_values = config.t.values()
    reports: list[tuple[BoundReport, Optional[float]]]
    body: Any
    if config.check == "comparison":
        comparison = comparison_report(config.model, t_values, config.n, solver=_solver(config))
        reports = list(zip(comparison.rows, t_values))
        body = comparison.model_dump(mode="json")
    else:
        if config.check == "asymptotic":
            reports = [(asymptotic_check(t_values, solver=_solver(config)), None)]
        elif config.check == "monotonicity":
            reports = [(monotonicity_check(t_values, _solver(config)), None)]
        else:
            reports = [(_single_field_report(config, t), t) for t in t_values]
        body = [report.model_dump(mode="json") for report, _ in reports]

    _emit_report(config, BOUND_COLUMNS, [_bound_row(r, t) for r, t in reports], body)
    failed = [r.name for r, _ in reports if r.status is ReportStatus.FAILED]
    if failed:
        logger.error("Bound check failed: %s", ", ".join(failed))
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    """Runs the acceptance suite; exits 0 iff every check passes."""
    _require_tabular(config)
    report = run_acceptance(config.quick)
    rows = [check.model_dump(include=set(VERIFY_COLUMNS), mode="json") for check in report.checks]
    _emit_report(config, VERIFY_COLUMNS, rows, report.model_dump(mode="json"))
    if not report.passed:
        failed = [check.name for check in report.checks if check.status is not CheckOutcome.PASS]
        logger.error("Acceptance checks failed: %s", ", ".join(failed))
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_figures(config: RunConfig) -> int:
    """Writes the disk and 4-ball spectrum-versus-t figures into the output directory."""
    grid = config.t if "t" in config.model_fields_set else FIGURE_GRID
    directory = Path(config.output) if config.output is not None else Path(".")
    if not directory.is_dir():
        raise exc.ConfigurationError(f"The figures output must be an existing directory, got {directory}")

    disk = output.spectrum_series(_tables(config, SpectralModel.DISK2, grid))
    circle = output.spectrum_series(_tables(config, SpectralModel.CIRCLE, grid))
    disk.update({f"sqrt {label}": [(t, math.sqrt(v)) for t, v in points] for label, points in circle.items()})
    ball = output.spectrum_series(_tables(config, SpectralModel.BALL4, grid))

    output.emit(output.render_svg(disk, "Disk Steklov and sqrt circle Laplacian"), directory / "disk-steklov.svg")
    output.emit(output.render_svg(ball, "4-ball Steklov"), directory / "ball4-steklov.svg")
    return EXIT_OK


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "spectrum": cmd_spectrum,
    "frustration": cmd_frustration,
    "cheeger": cmd_cheeger,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "figures": cmd_figures,
}


# --- Argument parsing ---

def _default(name: str) -> str:
    value = RunConfig.model_fields[name].default
    return str(getattr(value, "value", value))


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=None,
                        help="-v logs progress, -vv logs solver details")
    common.add_argument("--config", dest="config_file", type=Path, default=None,
                        help="flat JSON object of RunConfig fields, overridden by flags")
    common.add_argument("--format", dest="output_format", choices=["csv", "json", "svg"], default=None,
                        help=f"output format (default: {_default('output_format')})")
    common.add_argument("--output", "-o", type=Path, default=None,
                        help="output file (directory for figures); stdout when omitted")
    common.add_argument("--t", default=None, help=f"field strength or 'start:step:stop' (default: {_default('t')})")
    common.add_argument("--k-max", dest="k_max", type=int, default=None,
                        help=f"angular truncation (default: {_default('k_max')})")
    common.add_argument("--model", choices=[m.value for m in SpectralModel], default=None,
                        help=f"spectral model (default: {_default('model')})")
    common.add_argument("--multiplicity", choices=["cluster", "entry"], default=None,
                        help=f"4-ball and S^3 multiplicity convention (default: {_default('multiplicity')})")
    for name in ("series_tail_tol", "riccati_rel_tol", "riccati_abs_tol", "riccati_threshold_b",
                 "cancellation_ratio"):
        common.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float, default=None,
                            help=f"(default: {_default(name)})")
    return common


def build_parser() -> argparse.ArgumentParser:
    """The argparse tree; unset flags stay None so that the config file can fill them."""
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="magsteklov", description="Magnetic Steklov spectra of the disk and 4-ball.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("spectrum", parents=[common], help="spectrum tables and sweeps")

    frust = commands.add_parser("frustration", parents=[common], help="frustration constant of g(r) dtheta")
    frust.add_argument("--g", default=None, help=f"polynomial in r (default: {_default('g')})")
    frust.add_argument("--r0", type=float, default=None, help=f"outer radius (default: {_default('r0')})")
    frust.add_argument("--r-inner", dest="r_inner", type=float, default=None,
                       help=f"inner radius of an annulus (default: {_default('r_inner')})")
    frust.add_argument("--punctured", action="store_true", default=None, help="remove the origin")

    cheeger = commands.add_parser("cheeger", parents=[common], help="Cheeger quotients of the test-domain family")
    cheeger.add_argument("--s-grid", dest="s_grid", default=None,
                         help=f"radii s of the family (default: {_default('s_grid')})")

    bounds = commands.add_parser("bounds", parents=[common], help="eigenvalue bound checks")
    bounds.add_argument("--check", choices=["upper", "reilly", "max-principle", "l2", "asymptotic", "monotonicity",
                                            "gauge", "comparison", "jammes", "neumann"],
                        default=None, help=f"check to run (default: {_default('check')})")
    bounds.add_argument("--k", type=int, default=None, help=f"mode index (default: {_default('k')})")
    bounds.add_argument("--sign", choices=["plus", "minus"], default=None,
                        help=f"mode sign (default: {_default('sign')})")
    bounds.add_argument("--n", type=int, default=None, help=f"compared rank (default: {_default('n')})")
    bounds.add_argument("--s-grid", dest="s_grid", default=None,
                        help=f"radii s of the Cheeger family (default: {_default('s_grid')})")

    verify = commands.add_parser("verify", parents=[common], help="acceptance suite")
    verify.add_argument("--quick", action="store_true", default=None, help="t <= 10, k <= 8 subset")

    commands.add_parser("figures", parents=[common], help="spectrum-versus-t figures")
    return parser


def configure_logging(verbose: int) -> None:
    """Root handler on stderr: WARNING by default, INFO with -v, DEBUG with -vv."""
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the magsteklov script."""
    arguments = build_parser().parse_args(argv)
    try:
        config = load_config(vars(arguments))
    except exc.ConfigurationError as error:
        print(f"magsteklov: error: {error}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(config.verbose)
    try:
        return COMMANDS[config.command](config)
    except (exc.ConfigurationError, exc.InvalidParams, ValidationError, OSError) as error:
        print(f"magsteklov: error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except exc.MagSteklovError as error:
        print(f"magsteklov: {type(error).__name__}: {error}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
