"""
Loading snapshot files into a :class:`Universe`.

Two formats are supported. The canonical one is JSON::

    {"as_of": "2020-03-15",
     "stocks": [{"ticker": "AMZN", "name": ..., "sector": ..., "industry": ...,
                 "currency": "USD", "price": "1900.00", "market_cap_usd": ...,
                 "analyst_count": 49, "growth_5y_est_pct": ..., "past_growth_5y_pct": ...,
                 "current_ratio": ..., "eps_history": [{"year": 2015, "eps": ...}, ...],
                 "eps_fy0_est": ..., "eps_fy1_est": ...}, ...]}

Numbers may be JSON numbers or strings; they are read as exact decimals.

The CSV variant has one row per stock, a mandatory header with the same
field names plus `as_of`, and the EPS history flattened into `eps_y1`
to `eps_y5` (oldest first) for the consecutive years starting at
`eps_year1`. Empty cells are absent values.

Records that fail validation are rejected with exactly one
:class:`RejectReason` and reported, never silently dropped.
"""
import csv
import io
import json
import logging
from dataclasses import dataclass, field
from datetime import date
from decimal import Decimal
from pathlib import Path
from typing import IO, Any, Dict, Iterable, List, Mapping, Optional, Tuple, Union

from grahamgrowth.lib import metrics
from grahamgrowth.model.errors import SchemaError
from grahamgrowth.model.snapshot import (
    InvalidSnapshot,
    RejectReason,
    StockSnapshot,
    Universe,
    to_decimal,
)

log = logging.getLogger(__name__)

FORMATS = ("csv", "json")

REQUIRED_FIELDS = (
    "ticker",
    "name",
    "sector",
    "industry",
    "currency",
    "price",
    "market_cap_usd",
    "analyst_count",
    "growth_5y_est_pct",
    "past_growth_5y_pct",
    "current_ratio",
)

CSV_HISTORY_COLUMNS = tuple(f"eps_y{i}" for i in range(1, 6))

Source = Union[str, Path, IO[bytes], IO[str]]


@dataclass
class IngestReport:
    as_of: date
    accepted: int = 0
    rejected: List[Tuple[int, RejectReason]] = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.accepted + len(self.rejected)


def _blank(value: Any) -> bool:
    return value is None or (isinstance(value, str) and not value.strip())


def _number(value: Any) -> Optional[Decimal]:
    return None if _blank(value) else to_decimal(value.strip() if isinstance(value, str) else value)


def _count(value: Any) -> int:
    number = to_decimal(value.strip() if isinstance(value, str) else value)
    if number != number.to_integral_value():
        raise ValueError(f"{value!r} is not an integer.")
    return int(number)


def validate_record(
    raw: Mapping[str, Any], as_of: Optional[date] = None
) -> Union[StockSnapshot, RejectReason]:
    """
    Turn a raw record into a snapshot or tell why that is not possible.

    The record maps the canonical field names to raw values, with the
    EPS history as a list of `{"year": ..., "eps": ...}` maps. Checks run
    in a fixed order and the first failing one names the reason.
    """
    for name in REQUIRED_FIELDS:
        if _blank(raw.get(name)):
            return RejectReason.MISSING_FIELD

    try:
        history = []
        for entry in raw.get("eps_history") or ():
            if _blank(entry.get("year")) or _blank(entry.get("eps")):
                return RejectReason.MISSING_FIELD
            history.append((_count(entry["year"]), _number(entry["eps"])))
        analyst_count = _count(raw["analyst_count"])
        numbers = {
            name: _number(raw.get(name))
            for name in (
                "price",
                "market_cap_usd",
                "growth_5y_est_pct",
                "past_growth_5y_pct",
                "current_ratio",
                "eps_fy0_est",
                "eps_fy1_est",
            )
        }
    except (AttributeError, TypeError, ValueError):
        return RejectReason.NON_FINITE_NUMBER

    try:
        return StockSnapshot(
            ticker=str(raw["ticker"]).strip(),
            name=str(raw["name"]).strip(),
            sector=str(raw["sector"]).strip(),
            industry=str(raw["industry"]).strip(),
            currency=str(raw["currency"]).strip(),
            price=numbers["price"],
            market_cap_usd=numbers["market_cap_usd"],
            analyst_count=analyst_count,
            growth_5y_est=numbers["growth_5y_est_pct"],
            past_growth_5y=numbers["past_growth_5y_pct"],
            current_ratio=numbers["current_ratio"],
            eps_history=tuple(history),
            eps_fy0_est=numbers["eps_fy0_est"],
            eps_fy1_est=numbers["eps_fy1_est"],
            as_of=as_of,
        )
    except InvalidSnapshot as e:
        return e.reason


def _parse_date(value: Any) -> date:
    try:
        return date.fromisoformat(str(value).strip())
    except ValueError:
        raise SchemaError({"as_of": f"As-of date {value!r} is not an ISO-8601 date."})


def _read_json(text: str) -> Tuple[Optional[date], List[Mapping[str, Any]]]:
    try:
        document = json.loads(text, parse_float=Decimal)
    except ValueError as e:
        raise SchemaError({"json": f"Snapshot is not valid JSON: {e}"})
    if not isinstance(document, dict) or "as_of" not in document:
        raise SchemaError({"json": "Snapshot has no as_of date."})
    stocks = document.get("stocks", [])
    if not isinstance(stocks, list):
        raise SchemaError({"json": "Snapshot stocks are not a list."})
    return _parse_date(document["as_of"]), stocks


def _read_csv(text: str) -> Tuple[Optional[date], List[Mapping[str, Any]]]:
    reader = csv.DictReader(io.StringIO(text, newline=""))
    header = reader.fieldnames or []
    missing = [name for name in ("as_of",) + REQUIRED_FIELDS if name not in header]
    if missing:
        raise SchemaError({"csv": f"Header lacks columns {', '.join(missing)}."})

    as_of = None
    records = []
    for row in reader:
        if as_of is None and not _blank(row.get("as_of")):
            as_of = _parse_date(row["as_of"])
        records.append(_unflatten(row))
    return as_of, records


def _unflatten(row: Mapping[str, Any]) -> Dict[str, Any]:
    record: Dict[str, Any] = {k: v for k, v in row.items() if k in REQUIRED_FIELDS}
    record["eps_fy0_est"] = row.get("eps_fy0_est")
    record["eps_fy1_est"] = row.get("eps_fy1_est")

    cells = [row.get(column) for column in CSV_HISTORY_COLUMNS]
    if all(_blank(cell) for cell in cells):
        return record

    # an unusable anchor year is passed on as is and rejected by validation
    first_year = row.get("eps_year1")
    try:
        years = [_count(first_year) + i for i in range(len(cells))]
    except (TypeError, ValueError):
        years = [first_year] * len(cells)
    record["eps_history"] = [
        {"year": year, "eps": cell} for year, cell in zip(years, cells) if not _blank(cell)
    ]
    return record


def _read_text(source: Source) -> str:
    if isinstance(source, (str, Path)):
        with open(source, "rb") as f:
            data = f.read()
    else:
        data = source.read()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError:
            raise SchemaError({"encoding": "Snapshot is not UTF-8."})
    return data.lstrip("\ufeff")


def infer_format(source: Source, fmt: Optional[str] = None) -> str:
    if fmt is None and isinstance(source, (str, Path)):
        fmt = Path(source).suffix.lstrip(".")
    if fmt is None or fmt.lower() not in FORMATS:
        raise SchemaError({"format": f"Unknown snapshot format {fmt!r}."})
    return fmt.lower()


def load_universe(source: Source, fmt: Optional[str] = None) -> Tuple[Universe, IngestReport]:
    """
    Load a snapshot file into a universe of validated stock snapshots.

    The source may be a path or an open stream. Without an explicit
    format, it is inferred from the file extension. Records are numbered
    from 1 in file order; if a ticker occurs more than once, the first
    record wins and later ones are rejected as duplicates.

    :raises OSError: If the source cannot be read.
    :raises SchemaError: If the file is structurally malformed.
    """
    fmt = infer_format(source, fmt)
    text = _read_text(source)
    as_of, records = (_read_json if fmt == "json" else _read_csv)(text)
    if as_of is None:
        as_of = date.today()
        log.warning("Snapshot has no as-of date, assuming %s", as_of)

    report = IngestReport(as_of=as_of)
    accepted: Dict[str, StockSnapshot] = {}
    for number, raw in enumerate(records, start=1):
        result = (
            validate_record(raw, as_of)
            if isinstance(raw, Mapping)
            else RejectReason.MISSING_FIELD
        )
        if isinstance(result, StockSnapshot) and result.ticker in accepted:
            result = RejectReason.DUPLICATE_TICKER
        if isinstance(result, RejectReason):
            log.info("Rejected record %d: %s", number, result)
            report.rejected.append((number, result))
        else:
            accepted[result.ticker] = result
            report.accepted += 1

    if not accepted:
        log.warning("Snapshot of %s contains no valid stocks", as_of)

    metrics.record_ingest(report)
    return Universe(as_of, accepted.values()), report


def dump_universe(universe: Universe, indent: Optional[int] = 2) -> str:
    """
    Get the canonical JSON form of a universe.

    Loading the result again yields an identical universe.
    """
    return json.dumps(
        {"as_of": universe.as_of.isoformat(), "stocks": [s.info() for s in universe]},
        indent=indent,
        ensure_ascii=False,
    )


def iter_reasons(report: IngestReport) -> Iterable[str]:
    for number, reason in report.rejected:
        yield f"record {number}: {reason}"
