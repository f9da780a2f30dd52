from dataclasses import dataclass
from datetime import date
from decimal import Decimal, InvalidOperation
from enum import Enum
from types import MappingProxyType
from typing import Any, Dict, Iterable, Iterator, List, Mapping, NewType, Optional, Tuple

from babel.numbers import is_currency

Percent = NewType("Percent", Decimal)
"""A rate in percentage points, i.e. 15 means 15%. Negative values are legal."""


def to_decimal(value: Any) -> Decimal:
    """
    Convert a number to a finite :class:`Decimal`.

    Floats are converted via their shortest repr so that 0.1 becomes
    Decimal("0.1") and not its binary expansion.

    :raises ValueError: If the value is not a number or not finite.
    """
    if isinstance(value, bool):
        raise ValueError(f"{value!r} is not a number.")
    try:
        if isinstance(value, Decimal):
            result = value
        elif isinstance(value, float):
            result = Decimal(repr(value))
        else:
            result = Decimal(value if isinstance(value, (int, str)) else str(value))
    except (InvalidOperation, TypeError, ValueError):
        raise ValueError(f"{value!r} is not a number.")
    if not result.is_finite():
        raise ValueError(f"{value!r} is not finite.")
    return result


@dataclass(frozen=True)
class MoneyPerShare:
    """An amount of money per share in the currency given by an ISO-4217 code."""

    amount: Decimal
    currency: str = "USD"

    def __post_init__(self):
        object.__setattr__(self, "amount", to_decimal(self.amount))

    def __str__(self) -> str:
        return f"{self.amount} {self.currency}"


class RejectReason(str, Enum):
    """Why a raw snapshot record did not become a :class:`StockSnapshot`."""

    MISSING_FIELD = "missing-field"
    NON_POSITIVE_PRICE = "non-positive-price"
    NEGATIVE_CAP = "negative-cap"
    NEGATIVE_VALUE = "negative-value"
    BAD_YEAR_ORDER = "bad-year-order"
    NON_FINITE_NUMBER = "non-finite-number"
    BAD_CURRENCY_CODE = "bad-currency-code"
    DUPLICATE_TICKER = "duplicate-ticker"

    def __str__(self) -> str:
        return self.value


class InvalidSnapshot(ValueError):
    """
    Raised when a snapshot violates one of its invariants.

    The arguments are dicts mapping the offending field to a
    :class:`RejectReason`, in the order the checks ran.
    """

    @property
    def reason(self) -> RejectReason:
        return next(iter(self.args[0].values()))


@dataclass(frozen=True)
class StockSnapshot:
    """
    The fundamentals of one stock at a point in time.

    Everything the valuation pipeline needs is in here: the current
    price, the market cap (already converted to USD by whoever produced
    the snapshot), the analyst consensus for annual growth over the next
    years, the trailing growth, the EPS history and the EPS forecasts for
    the current and the next fiscal year.

    The current fiscal year is the year after the last history year. If
    there is no history, it is the calendar year of `as_of`.
    """

    ticker: str
    name: str
    sector: str
    industry: str
    currency: str
    price: Decimal
    market_cap_usd: Decimal
    analyst_count: int
    growth_5y_est: Percent
    past_growth_5y: Percent
    current_ratio: Decimal
    eps_history: Tuple[Tuple[int, Decimal], ...] = ()
    eps_fy0_est: Optional[Decimal] = None
    eps_fy1_est: Optional[Decimal] = None
    as_of: Optional[date] = None

    def __post_init__(self):
        errors: List[Dict[str, RejectReason]] = []

        if not self.ticker or not str(self.ticker).strip():
            errors.append({"ticker": RejectReason.MISSING_FIELD})

        numbers = [
            "price",
            "market_cap_usd",
            "growth_5y_est",
            "past_growth_5y",
            "current_ratio",
            "eps_fy0_est",
            "eps_fy1_est",
        ]
        for name in numbers:
            value = getattr(self, name)
            if value is None and name.startswith("eps_"):
                continue
            try:
                object.__setattr__(self, name, to_decimal(value))
            except ValueError:
                errors.append({name: RejectReason.NON_FINITE_NUMBER})

        try:
            history = tuple((int(year), to_decimal(eps)) for year, eps in self.eps_history)
        except (TypeError, ValueError):
            errors.append({"eps_history": RejectReason.NON_FINITE_NUMBER})
            history = ()
        object.__setattr__(self, "eps_history", history)

        if not is_currency(self.currency):
            errors.append({"currency": RejectReason.BAD_CURRENCY_CODE})

        if isinstance(self.price, Decimal) and self.price <= 0:
            errors.append({"price": RejectReason.NON_POSITIVE_PRICE})

        if isinstance(self.market_cap_usd, Decimal) and self.market_cap_usd < 0:
            errors.append({"market_cap_usd": RejectReason.NEGATIVE_CAP})

        if isinstance(self.analyst_count, bool) or not isinstance(self.analyst_count, int):
            errors.append({"analyst_count": RejectReason.NON_FINITE_NUMBER})
        elif self.analyst_count < 0:
            errors.append({"analyst_count": RejectReason.NEGATIVE_VALUE})

        if isinstance(self.current_ratio, Decimal) and self.current_ratio < 0:
            errors.append({"current_ratio": RejectReason.NEGATIVE_VALUE})

        years = [year for year, _ in history]
        if any(a >= b for a, b in zip(years, years[1:])):
            errors.append({"eps_history": RejectReason.BAD_YEAR_ORDER})

        if errors:
            raise InvalidSnapshot(*errors)

    @property
    def fy0_year(self) -> Optional[int]:
        if self.eps_history:
            return self.eps_history[-1][0] + 1
        return self.as_of.year if self.as_of else None

    @property
    def price_per_share(self) -> MoneyPerShare:
        return MoneyPerShare(self.price, self.currency)

    def info(self) -> Dict[str, Any]:
        """
        Get the snapshot in its canonical serialized form.

        All numbers except integers are rendered as decimal strings so
        that reading the result back yields an identical snapshot.
        """
        return {
            "ticker": self.ticker,
            "name": self.name,
            "sector": self.sector,
            "industry": self.industry,
            "currency": self.currency,
            "price": str(self.price),
            "market_cap_usd": str(self.market_cap_usd),
            "analyst_count": self.analyst_count,
            "growth_5y_est_pct": str(self.growth_5y_est),
            "past_growth_5y_pct": str(self.past_growth_5y),
            "current_ratio": str(self.current_ratio),
            "eps_history": [{"year": year, "eps": str(eps)} for year, eps in self.eps_history],
            "eps_fy0_est": None if self.eps_fy0_est is None else str(self.eps_fy0_est),
            "eps_fy1_est": None if self.eps_fy1_est is None else str(self.eps_fy1_est),
        }

    def __repr__(self) -> str:
        return f"Snapshot {self.ticker} ({self.price} {self.currency} as of {self.as_of})"


class Universe:
    """
    All stock snapshots of one date, keyed by ticker.

    A universe is read-only once constructed. Iterating over it yields
    the snapshots in ticker order so that everything computed from it is
    deterministic.
    """

    def __init__(self, as_of: date, snapshots: Iterable[StockSnapshot] = ()):
        if not isinstance(as_of, date):
            raise ValueError({"Universe": "As-of date not a date object."})

        entries: Dict[str, StockSnapshot] = {}
        for snapshot in snapshots:
            if snapshot.ticker in entries:
                raise ValueError({"Universe": f"Duplicate ticker {snapshot.ticker}."})
            entries[snapshot.ticker] = snapshot

        self.as_of: date = as_of
        self._snapshots: Mapping[str, StockSnapshot] = MappingProxyType(
            dict(sorted(entries.items()))
        )

    @property
    def snapshots(self) -> Mapping[str, StockSnapshot]:
        return self._snapshots

    def get(self, ticker: str) -> Optional[StockSnapshot]:
        return self._snapshots.get(ticker)

    def __contains__(self, ticker: object) -> bool:
        return ticker in self._snapshots

    def __iter__(self) -> Iterator[StockSnapshot]:
        return iter(self._snapshots.values())

    def __len__(self) -> int:
        return len(self._snapshots)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Universe):
            return NotImplemented
        return self.as_of == other.as_of and dict(self._snapshots) == dict(other._snapshots)

    def __repr__(self) -> str:
        return f"Universe of {len(self)} stocks as of {self.as_of}"
