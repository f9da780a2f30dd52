"""
Rendering of screens, summaries and valuations as text, CSV or JSON.

Text output mimics the weekly screens as published: integer percent
columns, a legend and a disclaimer. CSV and JSON carry the same rows
with six decimals so that they can be diffed and processed further.
"""
import csv
import io
import json
from datetime import date
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from grahamgrowth.lib.screener import ScreenResult, ScreenRow
from grahamgrowth.lib.summary import ALL_SECTORS, SummaryRow
from grahamgrowth.lib.valuation import ProjectionRow, ValuationReport
from grahamgrowth.model.snapshot import StockSnapshot

SCREEN_COLUMNS = ("5Y%", "1Y%", "0Y%", "P5%", "AN#", "CR")
SCREEN_LEGEND = (
    "5Y%: 5-Year Ann Ret Est, 1Y%: 1-Year Ret Est, 0Y%: Curr Year Ret Est, "
    "P5%: Past 5Y Ret, AN#: Curr Year # of Analysts, CR: Current Ratio"
)
SUMMARY_COLUMNS = ("W5Y%", "WP5%", "#'s")
SUMMARY_LEGEND = (
    "W5Y%: Weighted 5-Year Ann Ret Est, WP5%: Weighted Past 5Y Ret, #'s: Number of Stocks, "
    "we only select >={} analysts"
)
DISCLAIMER = (
    "These are predictions based on Earnings & Growth and intended for information purposes only"
)

TICKER_WIDTH = 8
NUMBER_WIDTH = 5
GAP = "   "

CENT = Decimal("0.01")
TENTH = Decimal("0.1")
PLAIN = Decimal("1e-6")


def format_percent(value: Optional[Decimal]) -> str:
    """
    Format a percentage as an integer if it rounds to one, else with one
    decimal. Missing values are shown as a dash.
    """
    if value is None:
        return "-"
    rounded = Decimal(value).quantize(TENTH, rounding=ROUND_HALF_UP)
    if rounded == rounded.to_integral_value():
        return str(int(rounded))
    return str(rounded)


def format_money(value: Optional[Decimal]) -> str:
    if value is None:
        return "-"
    return str(Decimal(value).quantize(CENT, rounding=ROUND_HALF_UP))


def plain(value: Any) -> Any:
    """Get a JSON/CSV friendly version of a value, rounding decimals to 1e-6."""
    if isinstance(value, Decimal):
        rounded = value.quantize(PLAIN, rounding=ROUND_HALF_UP)
        return float(rounded)
    if isinstance(value, date):
        return value.isoformat()
    return value


def _json_default(value: Any) -> Any:
    if isinstance(value, (Decimal, date)):
        return plain(value)
    raise TypeError(f"{value!r} is not JSON serializable")


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False, default=_json_default) + "\n"


def to_csv(fieldnames: Sequence[str], rows: Iterable[Mapping[str, Any]]) -> str:
    f = io.StringIO()
    writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else plain(v) for k, v in row.items()})
    return f.getvalue()


def footer(legend: str, timestamp: Optional[str]) -> List[str]:
    lines = ["", legend, "", DISCLAIMER]
    if timestamp:
        lines += ["", timestamp]
    return lines


# Screens


def _screen_cells(row: ScreenRow) -> List[str]:
    return [
        format_percent(row.ret_5y_annualized),
        format_percent(row.ret_1y),
        format_percent(row.ret_0y),
        format_percent(row.past_growth_5y),
        str(row.analyst_count),
        format_percent(row.current_ratio),
    ]


def _widths(rows: Sequence[Sequence[str]]) -> List[int]:
    """Get the width of each column: its widest cell, but at least `NUMBER_WIDTH`."""
    return [max(NUMBER_WIDTH, *(len(cell) for cell in column)) for column in zip(*rows)]


def _line(label: str, label_width: int, cells: Sequence[str], widths: Sequence[int]) -> str:
    return f"{label:<{label_width}}" + "".join(f" {c:>{w}}" for c, w in zip(cells, widths))


def screen_text_block(result: ScreenResult) -> List[str]:
    buys = [(row.ticker, _screen_cells(row)) for row in result.buys]
    sells = [(row.ticker, _screen_cells(row)) for row in result.sells]
    widths = _widths([SCREEN_COLUMNS] + [cells for _, cells in buys + sells])
    label_width = max([TICKER_WIDTH] + [len(ticker) for ticker, _ in buys + sells])

    def side(label: str, cells: Sequence[str]) -> str:
        return _line(label, label_width, cells, widths)

    blank = " " * len(side("", SCREEN_COLUMNS))
    lines = [
        f"({result.week_label}) Graham's Growth {result.tier.title} Buy/Sell",
        "",
        side("▲BUY", SCREEN_COLUMNS) + GAP + side("▼SELL", SCREEN_COLUMNS),
    ]
    for i in range(max(len(buys), len(sells))):
        left = side(*buys[i]) if i < len(buys) else blank
        right = side(*sells[i]) if i < len(sells) else ""
        lines.append((left + GAP + right).rstrip())
    return lines


def screen_text(results: Sequence[ScreenResult], timestamp: Optional[str] = None) -> str:
    lines: List[str] = []
    for result in results:
        if lines:
            lines.append("")
        lines += screen_text_block(result)
    lines += footer(SCREEN_LEGEND, timestamp)
    return "\n".join(lines) + "\n"


SCREEN_CSV_FIELDS = (
    "tier",
    "side",
    "rank",
    "ticker",
    "ret_5y",
    "ret_1y",
    "ret_0y",
    "past_5y",
    "analysts",
    "current_ratio",
)


def screen_records(results: Sequence[ScreenResult]) -> List[Dict[str, Any]]:
    records = []
    for result in results:
        for side, rows in (("buy", result.buys), ("sell", result.sells)):
            for rank, row in enumerate(rows, start=1):
                records.append({"tier": result.tier.slug, "side": side, "rank": rank, **row.info()})
    return records


def screen_csv(results: Sequence[ScreenResult]) -> str:
    return to_csv(SCREEN_CSV_FIELDS, screen_records(results))


def screen_json(results: Sequence[ScreenResult]) -> str:
    return to_json({"screens": [result.info() for result in results]})


# Summaries


def _summary_block(title: str, rows: Sequence[SummaryRow]) -> List[str]:
    cells = [
        (
            format_percent(row.weighted_5y_est),
            format_percent(row.weighted_past_5y),
            str(row.count),
        )
        for row in rows
    ]
    widths = _widths([SUMMARY_COLUMNS] + cells)
    label_width = max([len(title)] + [len(row.group_name) for row in rows]) + 1
    lines = [_line(title, label_width, SUMMARY_COLUMNS, widths)]
    lines += [_line(row.group_name, label_width, c, widths) for row, c in zip(rows, cells)]
    return lines


def summary_text(
    blocks: Sequence[Tuple[str, Sequence[SummaryRow]]],
    week: str,
    min_analysts: int,
    timestamp: Optional[str] = None,
) -> str:
    """
    Render summary blocks side by side, e.g. sectors left and industries
    right. The overall row is expected as the last row of the last block.
    """
    columns = [_summary_block(title, rows) for title, rows in blocks]
    widths = [max(len(line) for line in column) for column in columns]
    height = max(len(column) for column in columns)

    lines = [f"({week})", "Graham's Growth Summary", ""]
    for i in range(height):
        parts = [
            (column[i] if i < len(column) else "").ljust(width)
            for column, width in zip(columns, widths)
        ]
        lines.append(GAP.join(parts).rstrip())
    lines += footer(SUMMARY_LEGEND.format(min_analysts), timestamp)
    return "\n".join(lines) + "\n"


def summary_records(blocks: Sequence[Tuple[str, Sequence[SummaryRow]]]) -> List[Dict[str, Any]]:
    records = []
    for title, rows in blocks:
        for row in rows:
            block = "all" if row.group_name == ALL_SECTORS else title.lower()
            records.append({"block": block, **row.info()})
    return records


SUMMARY_CSV_FIELDS = ("block", "group", "w5y", "wp5", "count")


# Valuations


def valuation_text(snapshot: StockSnapshot, report: ValuationReport) -> str:
    fy0 = snapshot.fy0_year
    horizons = (
        ("Current year", fy0, report.eps_0y, report.intrinsic_value_0y, report.implied_return_0y),
        (
            "Next year",
            None if fy0 is None else fy0 + 1,
            report.eps_1y,
            report.intrinsic_value_1y,
            report.implied_return_1y,
        ),
        (
            f"{report.horizon_years} years",
            report.horizon_year,
            report.eps_5y,
            report.intrinsic_value_5y,
            report.implied_return_5y_annualized,
        ),
    )
    lines = [
        f"{snapshot.ticker}  {snapshot.name}  ({snapshot.currency})",
        f"Price {format_money(report.price)}, consensus growth {format_percent(report.growth)}%",
        "",
        f"{'Horizon':<14}{'Year':>6}{'EPS':>12}{'Graham Est':>14}{'Return %':>12}",
    ]
    for label, year, eps, iv, ret in horizons:
        lines.append(
            f"{label:<14}{year if year is not None else '-':>6}"
            f"{format_money(eps.amount if eps else None):>12}"
            f"{format_money(iv.amount if iv else None):>14}"
            f"{format_money(ret):>12}"
        )
    lines.append("")
    lines.append(f"The {report.horizon_years} year return is annualized.")
    return "\n".join(lines) + "\n"


VALUATION_CSV_FIELDS = (
    "ticker",
    "currency",
    "price",
    "growth_5y_est",
    "horizon_year",
    "eps_0y",
    "eps_1y",
    "eps_5y",
    "iv_0y",
    "iv_1y",
    "iv_5y",
    "ret_0y",
    "ret_1y",
    "ret_5y_annualized",
)


def projection_text(snapshot: StockSnapshot, rows: Sequence[ProjectionRow]) -> str:
    lines = [
        f"{snapshot.ticker}  {snapshot.name}  ({snapshot.currency})",
        f"Price {format_money(snapshot.price)}, "
        f"consensus growth {format_percent(snapshot.growth_5y_est)}%",
        "",
        f"{'Year':<6}{'EPS':>12}{'Graham Est':>14}{'Ann Ret %':>12}",
    ]
    for row in rows:
        iv = row.intrinsic_value
        lines.append(
            f"{row.year:<6}{format_money(row.eps.amount):>12}"
            f"{format_money(iv.amount if iv else None):>14}{format_money(row.implied_return):>12}"
        )
    return "\n".join(lines) + "\n"


PROJECTION_CSV_FIELDS = ("year", "eps", "iv", "ret")


# Compounding


def growth_table_text(rates: Sequence[Decimal], table: Sequence[Sequence[Decimal]]) -> str:
    header = [format_percent(r) + "%" for r in rates]
    cells = [[format_money(v) for v in values] for values in table]
    widths = [max(9, w) for w in _widths([header] + cells)]
    lines = [_line("Year", 6, header, widths)]
    lines += [_line(str(year), 6, row, widths) for year, row in enumerate(cells, start=1)]
    return "\n".join(lines) + "\n"


def growth_table_records(
    rates: Sequence[Decimal], table: Sequence[Sequence[Decimal]]
) -> List[Dict[str, Any]]:
    return [
        {"year": year, "rate": rate, "value": value.quantize(CENT, rounding=ROUND_HALF_UP)}
        for year, values in enumerate(table, start=1)
        for rate, value in zip(rates, values)
    ]
