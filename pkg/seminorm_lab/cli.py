"""
Command-line interface for the seminorm laboratory.
"""

import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, List, Optional, Sequence

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from . import __version__
from .exceptions import SeminormLabError, SpecParseError
from .grammar import (
    format_functional, format_seq, parse_functional, parse_rational_list, parse_scalar, parse_seq, parse_seq_list
)
from .lab import LabFactory, SeminormLab
from .lp_exact import problem_from_json, solve, verify_certificate
from .norms import check_majorization, check_positive_definite, evaluate, verify_axioms
from .output_formatter import ReportFormatter
from .quotient import Subspace, distance, membership
from .sampling import sample_sequences
from .types import CertificateReport, CheckRow, DemoId, LabConfig, OutputFormat, Relation, Report, ValueTable
from .witnesses import EquivalenceClaim, WitnessSpec, check_equivalence, sweep_equivalence

err_console = Console(stderr=True)


def _parsed(parser: Callable):
    """Click callback turning a grammar failure into a usage error."""

    def callback(ctx, param, value):
        if value is None:
            return None
        try:
            return parser(value)
        except SpecParseError as e:
            raise click.BadParameter(str(e))
        except SeminormLabError as e:
            raise click.BadParameter(f"{type(e).__name__}: {e}")

    return callback


def validate_output_format(ctx, param, value):
    """Validate output format."""
    if value:
        try:
            return OutputFormat(value.lower())
        except ValueError:
            raise click.BadParameter(f'Invalid output format. Choose from: {", ".join([f.value for f in OutputFormat])}')
    return None


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _config(ctx, output_format=None, samples=None, seed=None, out=None, n_max=None) -> LabConfig:
    """Defaults < environment < config file < command-line flags."""
    config = LabFactory.create_from_env()
    if ctx.obj.get("config_file"):
        config = LabFactory.create_from_file(ctx.obj["config_file"], config)
    if output_format:
        config.output_format = output_format
    if samples is not None:
        config.samples = samples
    if seed is not None:
        config.seed = seed
    if out:
        config.output_file = out
    if n_max is not None:
        config.n_max = n_max
    config.verbose = ctx.obj.get("verbose", False)
    return config


def _fail(ctx, e: Exception) -> None:
    err_console.print(f"[red]Error: {escape(str(e))}[/red]")
    if ctx.obj.get("verbose"):
        err_console.print_exception()
    sys.exit(1)


def _saved(path: Optional[Path]) -> None:
    if path is not None:
        err_console.print(f"Results saved to: [bold green]{escape(str(path))}[/bold green]")


def _emit(content: str, config: LabConfig) -> None:
    click.echo(content.rstrip("\n"))
    if config.output_file:
        # A directory target gets one file per command, e.g. check-axioms.json
        stem = "-".join(click.get_current_context().command_path.split()[1:])
        _saved(ReportFormatter(config.output_format).save(content, config.output_file, stem))


def _finish_check(
    config: LabConfig,
    title: str,
    reports: Sequence[Report],
    table: Optional[ValueTable] = None,
) -> None:
    formatter = ReportFormatter(config.output_format, show_rows=config.verbose)
    _emit(formatter.format_reports(title, reports, table=table), config)
    if not all(report.passed for report in reports):
        sys.exit(1)


def output_options(f):
    f = click.option("--out", "-o", type=click.Path(path_type=Path), help="Save output to file")(f)
    f = click.option(
        "--format", "output_format", callback=validate_output_format, help="Output format (table, csv, json)"
    )(f)
    return f


def sampling_options(f):
    f = click.option("--seed", type=int, help="Seed of the sample generator")(f)
    f = click.option("--samples", type=click.IntRange(min=1), help="Number of random samples")(f)
    return f


@click.group()
@click.version_option(version=__version__, prog_name="seminorm-lab")
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
@click.option("--config-file", type=click.Path(exists=True, path_type=Path), help="Configuration file path")
@click.pass_context
def cli(ctx, verbose, config_file):
    """Seminorm Lab - exact experiments with norms and seminorms on finitely supported sequences."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["config_file"] = config_file
    _configure_logging(verbose)


@cli.command()
@click.argument("demo_id", type=click.Choice([d.value for d in DemoId] + ["list"]))
@click.option("--n-max", type=click.IntRange(min=2), help="Largest witness index (default 100)")
@output_options
@sampling_options
@click.pass_context
def demo(ctx, demo_id, n_max, output_format, out, samples, seed):
    """Run a named demo, or list them with `demo list`."""
    if demo_id == "list":
        for d in DemoId:
            click.echo(f"{d.value:<12}{d.description}")
        return

    try:
        config = _config(ctx, output_format, samples, seed, out, n_max)
        lab = SeminormLab(config)
        result = lab.run_demo(DemoId(demo_id))
        click.echo(lab.get_output_content(result).rstrip("\n"))
        _saved(lab.save_output(result))
    except SeminormLabError as e:
        _fail(ctx, e)
    else:
        if not result.passed:
            sys.exit(1)


@cli.group()
def check():
    """Run one of the library checkers on specs given in the textual grammar."""


@check.command()
@click.option("--spec", "spec", required=True, callback=_parsed(parse_functional), help="Functional, e.g. quotient:linf:basis=[e1+e2]")
@sampling_options
@output_options
@click.pass_context
def axioms(ctx, spec, samples, seed, output_format, out):
    """Sample the seminorm axioms."""
    try:
        config = _config(ctx, output_format, samples, seed, out)
        report = verify_axioms(spec, config.samples, config.seed, config.sampling)
        report.claim = f"axioms of {format_functional(spec)}"
        _finish_check(config, "Seminorm axioms", [report])
    except SeminormLabError as e:
        _fail(ctx, e)


@check.command()
@click.option("--lower", required=True, callback=_parsed(parse_functional), help="Functional expected to be smaller")
@click.option("--upper", required=True, callback=_parsed(parse_functional), help="Functional expected to be larger")
@sampling_options
@output_options
@click.pass_context
def majorize(ctx, lower, upper, samples, seed, output_format, out):
    """Check lower(x) <= upper(x) on random samples."""
    try:
        config = _config(ctx, output_format, samples, seed, out)
        report = check_majorization(lower, upper, sample_sequences(config.samples, config.seed, config.sampling))
        report.claim = f"{format_functional(lower)} <= {format_functional(upper)}"
        _finish_check(config, "Majorization", [report])
    except SeminormLabError as e:
        _fail(ctx, e)


@check.command()
@click.option("--norm", required=True, callback=_parsed(parse_functional), help="Ambient norm: l1, linf or weighted:<rule>")
@click.option("--basis", required=True, callback=_parsed(parse_seq_list), help="Subspace basis, e.g. [e1+e2,e3]")
@click.option("--point", required=True, callback=_parsed(parse_seq), help="Point, e.g. e1")
@output_options
@click.pass_context
def quotient(ctx, norm, basis, point, output_format, out):
    """Distance from a point to span(basis) with its LP certificate."""
    try:
        config = _config(ctx, output_format, out=out)
        V = Subspace(basis)
        result = distance(norm, V, point)
        table = ValueTable(
            ["quantity", "value"],
            [
                ["value", result.value],
                ["minimizer", format_seq(result.minimizer)],
                ["point in V", "yes" if membership(V, point) else "no"],
                ["pivots", result.certificate.pivots],
            ],
        )
        report = CertificateReport(claim="distance LP certificate")
        report.rows.append(CheckRow(1, "N(x - v*) = LP value", evaluate(norm, point - result.minimizer), Relation.EQ, result.value))
        _finish_check(config, f"dist_{format_functional(norm)}({format_seq(point)}, V)", [report], table)
    except SeminormLabError as e:
        _fail(ctx, e)


@check.command()
@click.option("--n1", required=True, callback=_parsed(parse_functional), help="First norm")
@click.option("--n2", required=True, callback=_parsed(parse_functional), help="Second norm")
@click.option("--beta", callback=_parsed(parse_scalar), help="Lower constant")
@click.option("--gamma", callback=_parsed(parse_scalar), help="Upper constant")
@click.option("--betas", callback=_parsed(parse_rational_list), help="Candidate lower constants to refute, e.g. 1,1/2,1/10")
@click.option("--gammas", callback=_parsed(parse_rational_list), help="Candidate upper constants to refute")
@click.option("--witness", type=click.Choice([w.value for w in WitnessSpec]), default=WitnessSpec.FLAT_BLOCK.value)
@click.option("--n-max", type=click.IntRange(min=1), help="Largest witness index")
@output_options
@click.pass_context
def equivalence(ctx, n1, n2, beta, gamma, betas, gammas, witness, n_max, output_format, out):
    """Check beta*N1 <= N2 <= gamma*N1 along a witness sequence.

    With --betas/--gammas, search instead for the first term refuting each
    candidate constant; the exit status is 0 only when all are refuted.
    """
    sweeping = betas is not None or gammas is not None
    if sweeping == (beta is not None or gamma is not None):
        raise click.UsageError("Give either --beta and --gamma, or --betas/--gammas")
    if not sweeping and (beta is None or gamma is None):
        raise click.UsageError("--beta and --gamma go together")
    try:
        config = _config(ctx, output_format, out=out, n_max=n_max)
        if sweeping:
            sweep = sweep_equivalence(n1, n2, WitnessSpec(witness), betas or [], gammas or [], config.n_max)
            sweep.claim = f"non-equivalence of {format_functional(n1)} and {format_functional(n2)}"
            _finish_check(config, "Equivalence sweep", [sweep])
            return
        claim = EquivalenceClaim(n1, n2, beta, gamma)
        report = check_equivalence(claim, WitnessSpec(witness), config.n_max)
        _finish_check(config, "Equivalence", [report])
    except SeminormLabError as e:
        _fail(ctx, e)


@check.command()
@sampling_options
@output_options
@click.pass_context
def lp(ctx, samples, seed, output_format, out):
    """Verify the certificates of random small LPs."""
    try:
        config = _config(ctx, output_format, samples, seed, out)
        report = SeminormLab(config).lp_certificate_sweep(config.samples)
        _finish_check(config, "LP certificate sweep", [report])
    except SeminormLabError as e:
        _fail(ctx, e)


@check.command()
@click.option("--spec", "spec", required=True, callback=_parsed(parse_functional), help="Functional to test")
@sampling_options
@output_options
@click.pass_context
def positive(ctx, spec, samples, seed, output_format, out):
    """Look for nonzero samples on which the functional vanishes."""
    try:
        config = _config(ctx, output_format, samples, seed, out)
        points = [x for x in sample_sequences(config.samples, config.seed, config.sampling) if not x.is_zero]
        vanishing = set(check_positive_definite(spec, points))
        report = CertificateReport(claim=f"{format_functional(spec)} > 0 off zero")
        for k, x in enumerate(points, 1):
            report.rows.append(CheckRow(k, "[S(x) > 0]", Fraction(int(x not in vanishing)), Relation.EQ, Fraction(1)))
        _finish_check(config, "Positive definiteness", [report])
    except SeminormLabError as e:
        _fail(ctx, e)


@cli.group(name="lp")
def lp_group():
    """Exact linear programming."""


@lp_group.command(name="solve")
@click.argument("problem_file", type=click.Path(exists=True, path_type=Path))
@output_options
@click.pass_context
def lp_solve(ctx, problem_file, output_format, out):
    """Solve an LP read from a JSON document and print the outcome."""
    try:
        config = _config(ctx, output_format, out=out)
        with open(problem_file, "r", encoding="utf-8") as f:
            problem = problem_from_json(json.load(f))
        outcome = solve(problem)
        certified = verify_certificate(problem, outcome) if outcome.is_optimal else None
        _emit(ReportFormatter(config.output_format).format_lp_outcome(outcome, certified), config)
    except (SeminormLabError, ValueError) as e:
        _fail(ctx, e)
    else:
        if certified is False:
            sys.exit(1)


def main(argv: Optional[List[str]] = None) -> None:
    """Main entry point for the CLI."""
    cli(args=argv, obj={})


if __name__ == "__main__":
    main()
