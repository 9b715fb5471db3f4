"""Command line interface for qlimit."""

import sys
from fractions import Fraction

import click

from .catalog.runner import CatalogRunner, TraceRunner, VerifyRunner
from .checks import BetaCheckRunner, ClassifyRunner, CoverRunner, WeylReduceRunner
from .errors import ContractError, DomainError, UnknownIdentityError
from .log import setup_logging
from .runner import CheckRunner
from .schema import RunConfig, parse_complex, parse_rational, parse_rational_list, threads_from_env

USAGE_EXIT = 2


def _rationals(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_rational_list(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from e


def _rational(ctx, param, value):
    try:
        return parse_rational(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from e


def _complex(ctx, param, value):
    try:
        return parse_complex(value)
    except ValueError as e:
        raise click.BadParameter(str(e)) from e


def alpha_option(f):
    return click.option(
        "--alpha",
        required=True,
        callback=_rationals,
        help='Six exponents summing to 1, e.g. "1/6,1/6,1/6,1/6,1/6,1/6"',
    )(f)


def seed_option(f):
    return click.option("--seed", type=click.IntRange(min=0), default=0, help="Base seed")(f)


def tol_option(f):
    return click.option("--tol", type=float, help="Relative tolerance (default: per check)")(f)


def q_option(f):
    return click.option(
        "--q", "q", default="0.35", callback=_complex, help='Base q as "re,im" (default: 0.35)'
    )(f)


def output_options(f):
    """--out, --timings, -q and -v, shared by every command."""
    f = click.option("-v", "--verbose", count=True, help="Increase verbosity")(f)
    f = click.option("-q", "--quiet", is_flag=True, help="Only show errors")(f)
    f = click.option(
        "--timings", is_flag=True, default=False, help="Include wall times in the reports"
    )(f)
    f = click.option(
        "--out",
        type=click.Path(dir_okay=False, writable=True),
        help="JSONL output file (default: standard output)",
    )(f)
    return f


def run_checks(runner_cls: type[CheckRunner], command: str, quiet: bool, verbose: int, **options):
    """Build the config, run the checks and exit with the run status."""
    logger = setup_logging(quiet=quiet, verbose=verbose)

    try:
        # Errors while building jobs are usage errors; job errors become records.
        try:
            config = RunConfig(command=command, threads=threads_from_env(), **options)
            runner = runner_cls(config)
            jobs = runner.jobs()
        except (DomainError, UnknownIdentityError, ValueError) as e:
            logger.error(str(e))
            sys.exit(USAGE_EXIT)
        summary = runner.run(jobs)
    except ContractError as e:
        logger.error(f"Internal check failed: {e}")
        sys.exit(1)
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        if verbose:
            import traceback

            traceback.print_exc()
        sys.exit(1)

    sys.exit(0 if summary.ok else 1)


@click.group()
@click.version_option(package_name="qlimit")
def cli():
    """Limits of the elliptic beta integral: classification and numerical checks."""
    pass


@cli.command()
@alpha_option
@output_options
def classify(alpha, out, timings, quiet, verbose):
    """Classify an exponent vector: tiles, correct ζ and kind of limit."""
    run_checks(
        ClassifyRunner, "classify", quiet, verbose, alpha=alpha, out=out, timings=timings
    )


@cli.command()
@click.option("--id", "ids", multiple=True, help="Identity id, repeatable (default: all)")
@q_option
@click.option("--samples", type=click.IntRange(min=1), default=1, help="Draws per identity")
@seed_option
@tol_option
@output_options
def verify(ids, q, samples, seed, tol, out, timings, quiet, verbose):
    """Verify catalog identities on random draws."""
    run_checks(
        VerifyRunner,
        "verify",
        quiet,
        verbose,
        ids=tuple(ids),
        q=q,
        samples=samples,
        seed=seed,
        tol=tol,
        out=out,
        timings=timings,
    )


@cli.command()
@alpha_option
@click.option("--x", "x", default="0.3", callback=_complex, help='Base x as "re,im" (default: 0.3)')
@q_option
@click.option("--steps", type=click.IntRange(min=1), default=8, help="Number of steps")
@click.option(
    "--samples", type=click.IntRange(min=1), default=1, help="Traces on consecutive seeds"
)
@seed_option
@click.option("--broken", is_flag=True, default=False, help="Use the symmetry broken integrand")
@tol_option
@output_options
def trace(alpha, x, q, steps, samples, seed, broken, tol, out, timings, quiet, verbose):
    """Follow the rescaled integral along p = x q^v towards its limit."""
    run_checks(
        TraceRunner,
        "trace",
        quiet,
        verbose,
        alpha=alpha,
        x=x,
        q=q,
        steps=steps,
        samples=samples,
        seed=seed,
        broken=broken,
        tol=tol,
        out=out,
        timings=timings,
    )


@cli.command()
@click.option("--samples", type=click.IntRange(min=1), default=1000, help="Random generic vectors")
@seed_option
@output_options
def cover(samples, seed, out, timings, quiet, verbose):
    """Check that the tiles cover the exponent space without overlap."""
    run_checks(
        CoverRunner,
        "cover",
        quiet,
        verbose,
        samples=samples,
        seed=seed,
        out=out,
        timings=timings,
    )


@cli.command("weyl-reduce")
@alpha_option
@click.option("--zeta", default="0", callback=_rational, help="Contour shift ζ (default: 0)")
@click.option("--extended", is_flag=True, default=False, help="Also use the negating reflection")
@output_options
def weyl_reduce(alpha, zeta, extended, out, timings, quiet, verbose):
    """Reduce (α; ζ) to the fundamental domain of the Weyl group."""
    run_checks(
        WeylReduceRunner,
        "weyl-reduce",
        quiet,
        verbose,
        alpha=alpha,
        zeta=Fraction(zeta),
        extended=extended,
        out=out,
        timings=timings,
    )


@cli.command("beta-check")
@click.option("--samples", type=click.IntRange(min=1), default=100, help="Random draws")
@seed_option
@tol_option
@output_options
def beta_check(samples, seed, tol, out, timings, quiet, verbose):
    """Check the elliptic beta evaluation on random parameters."""
    run_checks(
        BetaCheckRunner,
        "beta-check",
        quiet,
        verbose,
        samples=samples,
        seed=seed,
        tol=tol,
        out=out,
        timings=timings,
    )


@cli.command()
@click.option("--id", "ids", multiple=True, help="Identity id, repeatable (default: all)")
@output_options
def catalog(ids, out, timings, quiet, verbose):
    """List the identity catalog and check each face against the tiling."""
    run_checks(
        CatalogRunner, "catalog", quiet, verbose, ids=tuple(ids), out=out, timings=timings
    )
