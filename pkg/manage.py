#!/usr/bin/env python3
"""
Command line interface of grahamgrowth
~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~

This script values stocks with Graham's growth formula, screens a snapshot
of stocks for buys and sells per market cap tier and summarizes growth per
sector and industry. It can also run the read-only JSON API.

Results go to standard output as text, CSV or JSON. Diagnostics like
rejected snapshot records go to standard error. The exit status is 0 on
success, 2 on invalid input and 3 if the data does not allow a result.

When using this script, you should make sure that the right Python interpreter
is used. When calling this script from the shell without a virtual environment
as `./manage.py`, you need to have all dependencies installed in the
environment or your system's default Python interpreter. To use this script
in a virtual environment, either activate the virtual environment first
or call it like `venv/bin/python manage.py`.
"""
import logging
import sys
from dataclasses import dataclass
from datetime import datetime
from decimal import Decimal
from typing import Any, Dict, List, Optional, Sequence

import click

from grahamgrowth import app
from grahamgrowth.lib import metrics, render
from grahamgrowth.lib.ingest import dump_universe, iter_reasons, load_universe
from grahamgrowth.lib.screener import screen_all_tiers, screen_tier, week_label
from grahamgrowth.lib.summary import GroupBy, summarize
from grahamgrowth.lib.valuation import (
    appraise,
    compound_value,
    graham_estimate,
    project_estimates,
)
from grahamgrowth.model.constants import GrahamConstants
from grahamgrowth.model.errors import (
    DegenerateGroup,
    InsufficientData,
    InvalidInput,
    NotMeaningful,
    SchemaError,
    ValuationUnavailable,
)
from grahamgrowth.model.snapshot import StockSnapshot, Universe, to_decimal

TIMESTAMP_FORMAT = "%a %b %d %H:%M:%S %Z %Y"


class InputError(click.ClickException):
    exit_code = 2


class Unavailable(click.ClickException):
    exit_code = 3


def error_message(e: Exception) -> str:
    messages = []
    for arg in e.args:
        messages += [str(v) for v in arg.values()] if isinstance(arg, dict) else [str(arg)]
    return " ".join(messages)


class DecimalType(click.ParamType):
    name = "number"

    def convert(self, value, param, ctx):
        if isinstance(value, Decimal):
            return value
        try:
            return to_decimal(value)
        except ValueError:
            self.fail(f"{value!r} is not a finite number.", param, ctx)


class DecimalListType(click.ParamType):
    name = "numbers"

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return list(value)
        try:
            return [to_decimal(item.strip()) for item in str(value).split(",")]
        except ValueError:
            self.fail(f"{value!r} is not a comma separated list of numbers.", param, ctx)


DECIMAL = DecimalType()
DECIMAL_LIST = DecimalListType()


@dataclass
class CliConfig:
    """The global options every command shares."""

    input_path: Optional[str]
    output_format: str
    timestamp: bool
    constants: GrahamConstants
    week_label: Optional[str]
    _universe: Optional[Universe] = None

    def universe(self) -> Universe:
        """
        Load the snapshot, reporting every rejected record on stderr.
        """
        if self._universe is not None:
            return self._universe
        if not self.input_path:
            raise InputError("No snapshot given. Use --input or set GRAHAM_INPUT.")
        try:
            universe, report = load_universe(self.input_path)
        except OSError as e:
            raise InputError(f"Cannot read {self.input_path}: {e.strerror or e}")
        except SchemaError as e:
            raise InputError(f"{self.input_path}: {error_message(e)}")
        for line in iter_reasons(report):
            click.echo(line, err=True)
        click.echo(f"{report.accepted} accepted, {len(report.rejected)} rejected", err=True)
        self._universe = universe
        return universe

    def snapshot(self, ticker: str) -> StockSnapshot:
        universe = self.universe()
        snapshot = universe.get(ticker) or universe.get(ticker.upper())
        if snapshot is None:
            raise InputError(f"Unknown ticker {ticker}.")
        return snapshot

    def generated(self) -> Optional[str]:
        if not self.timestamp:
            return None
        return datetime.now().astimezone().strftime(TIMESTAMP_FORMAT)

    def emit(
        self,
        text: str,
        csv_fields: Sequence[str],
        records: List[Dict[str, Any]],
        payload: Any,
    ):
        if self.output_format == "csv":
            click.echo(render.to_csv(csv_fields, records), nl=False)
        elif self.output_format == "json":
            click.echo(render.to_json(payload), nl=False)
        else:
            click.echo(text, nl=False)


@click.group()
@click.option(
    "--input",
    "-i",
    "input_path",
    envvar="GRAHAM_INPUT",
    type=click.Path(dir_okay=False),
    help="The snapshot file (.json or .csv). Defaults to $GRAHAM_INPUT.",
)
@click.option(
    "--format",
    "-f",
    "output_format",
    type=click.Choice(["text", "csv", "json"]),
    default="text",
    show_default=True,
    help="The output format.",
)
@click.option("--no-timestamp", is_flag=True, help="Omit the generation time from text output.")
@click.option("--base-pe", type=DECIMAL, help="The fair P/E without growth (default: 8.5).")
@click.option("--growth-mult", type=DECIMAL, help="P/E points per % of growth (default: 2).")
@click.option("--buy-threshold", type=DECIMAL, help="Minimum 5Y% of a buy (default: 15).")
@click.option("--horizon", type=int, help="Years of earnings extrapolation (default: 5).")
@click.option("--summary-min-analysts", type=int, help="Analyst minimum of the summary.")
@click.option("--week-label", "week", help='Label of the week instead of e.g. "WK 11".')
@click.option("--verbose", "-v", is_flag=True, help="Log debug messages.")
@click.pass_context
def cli(
    ctx,
    input_path,
    output_format,
    no_timestamp,
    base_pe,
    growth_mult,
    buy_threshold,
    horizon,
    summary_min_analysts,
    week,
    verbose,
):
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.WARNING)
    try:
        constants = GrahamConstants.from_config(
            app.config,
            base_pe=base_pe,
            growth_multiplier=growth_mult,
            buy_growth_threshold=buy_threshold,
            horizon_years=horizon,
            summary_min_analysts=summary_min_analysts,
        )
    except ValueError as e:
        raise click.UsageError(error_message(e), ctx)
    ctx.obj = CliConfig(
        input_path=input_path or app.config.get("INPUT_PATH"),
        output_format=output_format,
        timestamp=not no_timestamp,
        constants=constants,
        week_label=week,
    )


@cli.command()
@click.argument("ticker")
@click.pass_obj
def value(obj: CliConfig, ticker):
    """
    Values a stock.

    This prints Graham's estimate for the current and the next fiscal
    year and for the earnings extrapolated 5 years ahead, together with
    the returns they imply at the current price.
    """
    snapshot = obj.snapshot(ticker)
    try:
        report = appraise(snapshot, obj.constants)
    except ValuationUnavailable as e:
        raise Unavailable(error_message(e))
    obj.emit(
        render.valuation_text(snapshot, report),
        render.VALUATION_CSV_FIELDS,
        [report.info()],
        report.info(),
    )


@cli.command()
@click.option(
    "--tier",
    "-t",
    default="all",
    show_default=True,
    help="mega, big, mid, small, micro, nano or all.",
)
@click.option("--top", "-n", "top_n", type=int, help="Rows per side (default: 10).")
@click.pass_obj
def screen(obj: CliConfig, tier, top_n):
    """
    Screens the snapshot for buys and sells.

    Buys have an implied annualized 5-year return of at least the buy
    threshold and grew during the past 5 years. Sells have a negative
    implied 5-year return.
    """
    universe = obj.universe()
    if top_n is None:
        top_n = app.config.get("TOP_N", 10)
    scheme = app.config.get("TIER_SCHEME")
    try:
        if tier.strip().lower() == "all":
            results = screen_all_tiers(universe, obj.constants, top_n, scheme, obj.week_label)
        else:
            results = [screen_tier(universe, tier, obj.constants, top_n, scheme, obj.week_label)]
    except InvalidInput as e:
        raise InputError(error_message(e))

    for result in results:
        metrics.record_screen(result)
        click.echo(
            f"{result.tier.label}: {result.below_analyst_floor} below analyst minimum, "
            f"{result.unavailable} without 5Y estimate",
            err=True,
        )

    if obj.output_format == "csv":
        click.echo(render.screen_csv(results), nl=False)
    elif obj.output_format == "json":
        click.echo(render.screen_json(results), nl=False)
    else:
        click.echo(render.screen_text(results, obj.generated()), nl=False)


@cli.command()
@click.option(
    "--group",
    "-g",
    type=click.Choice([g.value for g in GroupBy]),
    help="Show only one block. Default: sectors and industries.",
)
@click.option(
    "--top-industries",
    "-k",
    type=click.IntRange(min=1),
    help="Show only the largest industries.",
)
@click.pass_obj
def summary(obj: CliConfig, group, top_industries):
    """
    Summarizes growth per sector and industry.

    The implied 5-year return and the past 5-year growth are averaged
    weighted by market cap over the stocks covered by enough analysts.
    Groups whose stocks all have zero market cap are left out and named
    on standard error.
    """
    universe = obj.universe()
    errors: List[DegenerateGroup] = []
    sectors = summarize(universe, GroupBy.SECTOR, obj.constants, errors)
    industries = summarize(universe, GroupBy.INDUSTRY, obj.constants, errors)[:top_industries]
    overall = summarize(universe, GroupBy.ALL, obj.constants, errors)
    for e in errors:
        click.echo(error_message(e), err=True)

    if group == GroupBy.SECTOR.value:
        blocks = [("Sector", sectors + overall)]
    elif group == GroupBy.INDUSTRY.value:
        blocks = [("Industry", industries + overall)]
    elif group == GroupBy.ALL.value:
        blocks = [("Group", overall)]
    else:
        blocks = [("Sector", sectors), ("Industry", industries + overall)]

    week = obj.week_label or week_label(universe.as_of)
    records = render.summary_records(blocks)
    obj.emit(
        render.summary_text(blocks, week, obj.constants.summary_min_analysts, obj.generated()),
        render.SUMMARY_CSV_FIELDS,
        records,
        {"as_of": universe.as_of, "week": week, "rows": records},
    )


@cli.command("growth-table")
@click.option("--rates", "-r", type=DECIMAL_LIST, required=True, help="E.g. 3,5,15.")
@click.option("--years", "-y", type=click.IntRange(min=1), default=5, show_default=True)
@click.option("--principal", "-p", type=DECIMAL, default="100", show_default=True)
@click.pass_obj
def growth_table(obj: CliConfig, rates, years, principal):
    """
    Prints a table of compounded growth.

    Each column shows how the principal grows year by year at one rate.
    """
    try:
        table = [
            [compound_value(principal, rate, year) for rate in rates]
            for year in range(1, years + 1)
        ]
    except InvalidInput as e:
        raise InputError(error_message(e))
    records = render.growth_table_records(rates, table)
    obj.emit(
        render.growth_table_text(rates, table),
        ("year", "rate", "value"),
        records,
        {"principal": principal, "rows": records},
    )


@cli.command()
@click.argument("ticker")
@click.pass_obj
def project(obj: CliConfig, ticker):
    """
    Projects Graham's estimate year by year.

    This uses the earnings on the fitted trend line from the current
    fiscal year up to the horizon.
    """
    snapshot = obj.snapshot(ticker)
    try:
        rows = project_estimates(snapshot, obj.constants)
    except InsufficientData as e:
        raise Unavailable(error_message(e))
    records = [row.info() for row in rows]
    obj.emit(
        render.projection_text(snapshot, rows),
        render.PROJECTION_CSV_FIELDS,
        records,
        {"ticker": snapshot.ticker, "currency": snapshot.currency, "rows": records},
    )


@cli.command()
@click.option("--growth", "-g", type=DECIMAL, required=True, help="Growth in percent.")
@click.option("--eps", "-e", type=DECIMAL, required=True, help="Earnings per share.")
@click.option("--price", "-p", type=DECIMAL, help="Current price to compare with.")
@click.pass_obj
def estimate(obj: CliConfig, growth, eps, price):
    """
    Calculates Graham's estimate for given growth and earnings.
    """
    try:
        result = graham_estimate(growth, eps, obj.constants, price)
    except InvalidInput as e:
        raise InputError(error_message(e))
    except NotMeaningful as e:
        raise Unavailable(error_message(e))
    lines = [
        f"Growth {render.format_percent(result['growth'])}%, "
        f"EPS {render.format_money(result['eps'])}: "
        f"P/E {render.format_money(result['multiplier'])}, "
        f"estimate {render.format_money(result['iv'])}"
    ]
    if result["price"] is not None:
        lines.append(
            f"Price {render.format_money(result['price'])}: "
            f"return {render.format_money(result['ret'])}%"
        )
    obj.emit(
        "\n".join(lines) + "\n",
        ("growth", "eps", "multiplier", "iv", "price", "ret"),
        [result],
        result,
    )


@cli.command()
@click.pass_obj
def export(obj: CliConfig):
    """
    Prints the snapshot as canonical JSON.

    Rejected records are left out. This always writes JSON, e.g. to
    convert a CSV snapshot.
    """
    click.echo(dump_universe(obj.universe()))


@cli.command()
@click.option("--host", "-h", help="The interface to bind to.", default="127.0.0.1")
@click.option("--port", "-p", help="The port to bind to.", default=5000)
@click.pass_obj
def serve(obj: CliConfig, host, port):
    """
    Runs the JSON API on a development server.
    """
    universe = obj.universe()
    app.config["UNIVERSE"] = universe
    if app.config.get("PROMETHEUS_ENABLED", False):
        metrics.monitor(app, universe)
    app.run(host=host, port=port)


if __name__ == "__main__":
    cli()
