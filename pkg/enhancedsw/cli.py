"""Command-line interface for enhancedsw."""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Any

import click

from . import enable_debug_logging
from .const import (
    CHECK_ALL,
    DEFAULT_MAX_AMBIENT,
    DEFAULT_SEED,
    EXIT_ASSERTION_FAILED,
    EXIT_OK,
    FORMAT_JSON,
    FORMAT_TABLE,
    OUTPUT_FORMATS,
)
from .dualities import dimension_table, run_checks
from .exceptions import ConfigError
from .models import CheckResult, RunConfig
from .report import render_dimensions, render_results, render_sweep
from .tensor import SpaceDescriptor

_LOGGER = logging.getLogger(__name__)


def _grid_options(func: Callable[..., Any]) -> Callable[..., Any]:
    for option in reversed(
        [
            click.option("--n", "n", type=int, help="Dimension of V."),
            click.option("--r", "r", type=int, help="Tensor degree."),
            click.option("--n-range", help="Inclusive range of n, as A..B."),
            click.option("--r-range", help="Inclusive range of r, as A..B."),
        ]
    ):
        func = option(func)
    return func


def _output_options(default_format: str) -> Callable[..., Any]:
    def decorate(func: Callable[..., Any]) -> Callable[..., Any]:
        for option in reversed(
            [
                click.option(
                    "--format",
                    "output_format",
                    type=click.Choice(OUTPUT_FORMATS),
                    default=default_format,
                    show_default=True,
                ),
                click.option(
                    "--out", type=click.Path(dir_okay=False), help="Write to a file."
                ),
                click.option(
                    "--max-ambient",
                    type=int,
                    default=DEFAULT_MAX_AMBIENT,
                    show_default=True,
                    help="Refuse cells with (n+1)^r above this.",
                ),
            ]
        ):
            func = option(func)
        return func

    return decorate


def _check_options(func: Callable[..., Any]) -> Callable[..., Any]:
    for option in reversed(
        [
            click.option(
                "--checks",
                default=CHECK_ALL,
                show_default=True,
                help="Comma-separated check names, or 'all'.",
            ),
            click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True),
            click.option(
                "--timings", is_flag=True, help="Include elapsed_ms in JSON and CSV."
            ),
        ]
    ):
        func = option(func)
    return func


def _emit(config: RunConfig, text: str) -> None:
    if config.out is not None:
        config.out.write_text(text, encoding="utf-8")
        _LOGGER.debug("Wrote report to %s", config.out)
    else:
        click.echo(text, nl=False)


def _config(ctx: click.Context, **options: Any) -> RunConfig:
    try:
        return RunConfig.from_options(**options)
    except ConfigError as err:
        raise click.UsageError(str(err), ctx=ctx) from err


def _require_fits(ctx: click.Context, config: RunConfig, n: int, r: int) -> None:
    try:
        config.require_fits(n, r)
    except ConfigError as err:
        raise click.UsageError(str(err), ctx=ctx) from err


def _exit_status(results: list[CheckResult]) -> int:
    return EXIT_ASSERTION_FAILED if any(res.failed for res in results) else EXIT_OK


@click.group()
@click.option("--debug", is_flag=True, help="Enable debug logging.")
@click.version_option(package_name="enhancedsw")
def main(debug: bool) -> None:
    """Verify Schur–Weyl dualities for the enhanced tensor space V̄^{⊗r}."""
    if debug:
        logging.basicConfig()
        enable_debug_logging()


@main.command()
@_grid_options
@_output_options(FORMAT_TABLE)
@click.pass_context
def dims(ctx: click.Context, **options: Any) -> None:
    """Tabulate the dimensions of every algebra for each (n, r) cell."""
    config = _config(ctx, **options)
    cells = config.cells()
    if len(cells) == 1:
        _require_fits(ctx, config, *cells[0])
    tables = [
        dimension_table(SpaceDescriptor(n, r))
        for n, r in cells
        if config.fits(n, r)
    ]
    _emit(config, render_dimensions(tables, config.output_format))


@main.command()
@click.option("--n", "n", type=int, required=True, help="Dimension of V.")
@click.option("--r", "r", type=int, required=True, help="Tensor degree.")
@_check_options
@_output_options(FORMAT_JSON)
@click.pass_context
def verify(ctx: click.Context, **options: Any) -> None:
    """Run the named checks on one (n, r) cell.

    Exits 0 if every asserted check passes, 1 on a failed assertion and 2 on
    invalid options or an oversized cell.
    """
    config = _config(ctx, **options)
    _require_fits(ctx, config, config.n, config.r)
    space = SpaceDescriptor(config.n, config.r)
    results = run_checks(space, config.checks, config.seed)
    _emit(config, render_results(results, config.output_format, config.timings))
    ctx.exit(_exit_status(results))


@main.command()
@_grid_options
@_check_options
@_output_options(FORMAT_JSON)
@click.pass_context
def sweep(ctx: click.Context, **options: Any) -> None:
    """Run the named checks over an (n, r) grid.

    Cells above the ambient guard are marked skipped.
    """
    config = _config(ctx, **options)
    results: list[CheckResult] = []
    for n, r in config.cells():
        if not config.fits(n, r):
            detail = f"(n+1)^r = {(n + 1) ** r} > {config.max_ambient}"
            results.extend(
                CheckResult.skipped(check, n, r, detail) for check in config.checks
            )
            continue
        results.extend(run_checks(SpaceDescriptor(n, r), config.checks, config.seed))
    _emit(config, render_sweep(results, config.output_format, config.timings))
    ctx.exit(_exit_status(results))
