"""Command-line interface for forddisc."""

import logging
import sys
from pathlib import Path
from typing import Callable, Optional

import click
from rich.console import Console
from rich.logging import RichHandler

from . import __version__
from .commands import cmd_analyze, cmd_counts, cmd_generate, cmd_scaling, cmd_verify
from .errors import ForddiscError, VerificationError
from .settings import Method, OutputFormat, RunConfig, Settings

err_console = Console(stderr=True)


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _run(ctx: click.Context, build: Callable[[Settings], RunConfig], command: Callable, *args):
    """Build the RunConfig, run the command and map package errors to exit codes"""
    try:
        settings = Settings.load(ctx.obj["config_path"])
        config = build(settings)
        return command(config, *args)
    except VerificationError as e:
        err_console.print(f"[red]verification failed:[/red] {e.report.claim}")
        err_console.print(f"counterexample: {e.report.counterexample}", markup=False)
        ctx.exit(e.exit_code)
    except ForddiscError as e:
        err_console.print(f"error: {e}", markup=False, style="red")
        ctx.exit(e.exit_code)


@click.group()
@click.version_option(version=__version__)
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="Settings file (default ~/.forddisc/config.yaml).")
@click.option("--verbose", "-v", is_flag=True, help="Log debug output to stderr.")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[Path], verbose: bool) -> None:
    """forddisc - least de Bruijn sequences and their discrepancy."""
    _setup_logging(verbose)
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path


@cli.command()
@click.option("--order", "-n", type=int, required=True, help="Order n of the sequence.")
@click.option("--method", type=click.Choice([m.value for m in Method]), default=Method.FKM.value,
              show_default=True)
@click.option("--format", "fmt", type=click.Choice(["bits", "packed"]), default="bits", show_default=True)
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None,
              help="Output file (default: standard output).")
@click.pass_context
def generate(ctx: click.Context, order: int, method: str, fmt: str, output: Optional[Path]) -> None:
    """Write the lexicographically least de Bruijn sequence of order n."""
    summary = _run(
        ctx,
        lambda settings: RunConfig(
            subcommand="generate",
            order=order,
            method=Method(method),
            output_format=OutputFormat(fmt),
            output_path=output,
            settings=settings,
        ),
        cmd_generate,
        click.get_binary_stream("stdout"),
    )
    if output is not None:
        click.echo(str(summary))
    else:
        err_console.print(str(summary), markup=False)


@cli.command()
@click.option("--order", "-n", type=int, required=True, help="Order n to analyze.")
@click.option("--blocks", "show_blocks", is_flag=True, help="Block table (the default report).")
@click.option("--check", is_flag=True, help="Add the per-block skew sandwich verdict.")
@click.option("--disc", is_flag=True, help="Discrepancy recovered from block data.")
@click.option("--composite", is_flag=True, help="Divisor correction for a composite order.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None)
@click.pass_context
def analyze(ctx: click.Context, order: int, show_blocks: bool, check: bool, disc: bool,
            composite: bool, fmt: str, output: Optional[Path]) -> None:
    """Per-block statistics of the sequence of prime order n."""
    flags = {name for name, on in
             (("blocks", show_blocks), ("check", check), ("disc", disc), ("composite", composite)) if on}
    _run(
        ctx,
        lambda settings: RunConfig(
            subcommand="analyze",
            order=order,
            output_format=OutputFormat(fmt),
            output_path=output,
            flags=frozenset(flags),
            settings=settings,
        ),
        cmd_analyze,
        click.get_text_stream("stdout"),
    )


@cli.command()
@click.option("--k", "k", type=int, required=True, help="Forbidden zero-run length.")
@click.option("--max-n", "max_n", type=int, default=None, help="Largest n in the table (default 20).")
@click.option("--rho", is_flag=True, help="Print the dominant root instead of the table.")
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None)
@click.pass_context
def counts(ctx: click.Context, k: int, max_n: Optional[int], rho: bool, output: Optional[Path]) -> None:
    """Exact counts alpha_k(n) and skew totals beta_k(n) as CSV."""
    _run(
        ctx,
        lambda settings: RunConfig(
            subcommand="counts",
            k=k,
            n_max=max_n,
            output_format=OutputFormat.CSV,
            output_path=output,
            flags=frozenset({"rho"} if rho else ()),
            settings=settings,
        ),
        cmd_counts,
        click.get_text_stream("stdout"),
    )


@cli.command()
@click.option("--construction", is_flag=True, help="FKM, greedy and de Bruijn property agree.")
@click.option("--lemmas", is_flag=True, help="Recurrence identities and inequalities.")
@click.option("--bounds", is_flag=True, help="Tail bounds on alpha_k.")
@click.option("--roots", is_flag=True, help="Dominant roots and growth ratios.")
@click.option("--blocks", "check_blocks", is_flag=True, help="Block decomposition checks.")
@click.option("--oracles", is_flag=True, hidden=True)
@click.option("--inject-fault", "inject_fault", is_flag=True, hidden=True)
@click.option("--k", "k", type=int, default=None, help="Restrict the lemma checks to one k.")
@click.option("--max-n", "max_n", type=int, default=None, help="Largest n for the lemma checks.")
@click.option("--output", "-o", type=click.Path(path_type=Path), default=None)
@click.pass_context
def verify(ctx: click.Context, construction: bool, lemmas: bool, bounds: bool, roots: bool,
           check_blocks: bool, oracles: bool, inject_fault: bool, k: Optional[int],
           max_n: Optional[int], output: Optional[Path]) -> None:
    """Check the counting and block claims; exits 1 on the first failure."""
    flags = {name for name, on in (
        ("construction", construction), ("lemmas", lemmas), ("bounds", bounds), ("roots", roots),
        ("blocks", check_blocks), ("oracles", oracles), ("inject_fault", inject_fault),
    ) if on}
    _run(
        ctx,
        lambda settings: RunConfig(
            subcommand="verify",
            k=k,
            n_max=max_n,
            output_format=OutputFormat.JSON,
            output_path=output,
            flags=frozenset(flags),
            settings=settings,
        ),
        cmd_verify,
        click.get_text_stream("stdout"),
    )


@cli.command()
@click.option("--min", "n_min", type=int, required=True, help="Smallest order.")
@click.option("--max", "n_max", type=int, required=True, help="Largest order.")
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), default=None,
              help="CSV file (default: standard output).")
@click.option("--threads", type=int, default=None,
              help="Worker processes (default: the configured thread count).")
@click.pass_context
def scaling(ctx: click.Context, n_min: int, n_max: int, csv_path: Optional[Path],
            threads: Optional[int]) -> None:
    """disc, its position and n disc / (2^n ln n) for every order in a range."""
    _run(
        ctx,
        lambda settings: RunConfig(
            subcommand="scaling",
            n_min=n_min,
            n_max=n_max,
            output_format=OutputFormat.CSV,
            output_path=csv_path,
            threads=threads,
            settings=settings,
        ),
        cmd_scaling,
        click.get_text_stream("stdout"),
    )


def main() -> None:
    """Main entry point for the CLI."""
    cli(obj={}, prog_name="forddisc")


if __name__ == "__main__":
    sys.exit(main())
