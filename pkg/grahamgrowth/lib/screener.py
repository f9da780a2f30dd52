import logging
from dataclasses import dataclass
from datetime import date
from decimal import Decimal
from typing import Any, Dict, List, Optional, Tuple, Type, Union

from grahamgrowth.config.tiers import TierScheme
from grahamgrowth.lib.valuation import ValuationReport, appraise
from grahamgrowth.model.constants import GrahamConstants
from grahamgrowth.model.errors import InvalidInput, ValuationUnavailable
from grahamgrowth.model.snapshot import Percent, StockSnapshot, Universe
from grahamgrowth.model.tier import MarketCapTier, classify_market_cap, min_analysts_for_tier

log = logging.getLogger(__name__)

DEFAULT_TOP_N = 10


def week_label(as_of: date) -> str:
    return f"WK {as_of.isocalendar()[1]:02d}"


@dataclass(frozen=True)
class ScreenRow:
    """One line of a buy or sell screen, copied from a stock's valuation."""

    ticker: str
    ret_5y_annualized: Percent
    ret_1y: Optional[Percent]
    ret_0y: Optional[Percent]
    past_growth_5y: Percent
    analyst_count: int
    current_ratio: Decimal

    @classmethod
    def of(cls, snapshot: StockSnapshot, report: ValuationReport) -> "ScreenRow":
        return cls(
            ticker=snapshot.ticker,
            ret_5y_annualized=report.implied_return_5y_annualized,
            ret_1y=report.implied_return_1y,
            ret_0y=report.implied_return_0y,
            past_growth_5y=snapshot.past_growth_5y,
            analyst_count=snapshot.analyst_count,
            current_ratio=snapshot.current_ratio,
        )

    def info(self) -> Dict[str, Any]:
        return {
            "ticker": self.ticker,
            "ret_5y": self.ret_5y_annualized,
            "ret_1y": self.ret_1y,
            "ret_0y": self.ret_0y,
            "past_5y": self.past_growth_5y,
            "analysts": self.analyst_count,
            "current_ratio": self.current_ratio,
        }


@dataclass(frozen=True)
class ScreenResult:
    """
    The buy and sell screen of one market cap tier.

    Besides the two lists, the result counts the stocks of the tier that
    were left out before filtering: those covered by too few analysts
    and those without a 5-year return estimate.
    """

    tier: MarketCapTier
    week_label: str
    buys: Tuple[ScreenRow, ...]
    sells: Tuple[ScreenRow, ...]
    as_of: date
    below_analyst_floor: int = 0
    unavailable: int = 0

    def info(self) -> Dict[str, Any]:
        return {
            "tier": self.tier.slug,
            "week": self.week_label,
            "as_of": self.as_of.isoformat(),
            "buys": [row.info() for row in self.buys],
            "sells": [row.info() for row in self.sells],
            "below_analyst_floor": self.below_analyst_floor,
            "unavailable": self.unavailable,
        }


def _is_buy(row: ScreenRow, constants: GrahamConstants) -> bool:
    return row.ret_5y_annualized >= constants.buy_growth_threshold and row.past_growth_5y > 0


def _is_sell(row: ScreenRow) -> bool:
    return row.ret_5y_annualized < 0


def screen_tier(
    universe: Universe,
    tier: Union[MarketCapTier, str],
    constants: GrahamConstants = GrahamConstants(),
    top_n: int = DEFAULT_TOP_N,
    scheme: Optional[Type[TierScheme]] = None,
    week: Optional[str] = None,
) -> ScreenResult:
    """
    Screen the stocks of one market cap tier for buys and sells.

    Only stocks of the tier covered by at least the tier's minimum number
    of analysts are considered. Buys have an implied annualized 5-year
    return of at least `buy_growth_threshold` and grew during the last 5
    years; they are ranked by that return, highest first. Sells have a
    negative implied 5-year return and are ranked lowest first. Ties are
    broken by ticker. Both lists are cut to `top_n`.

    :raises InvalidInput: If the tier is unknown or `top_n` is not positive.
    """
    tier = MarketCapTier.parse(tier)
    if isinstance(top_n, bool) or not isinstance(top_n, int) or top_n < 1:
        raise InvalidInput({"top_n": "Number of rows is not a positive integer."})

    floor = min_analysts_for_tier(tier, scheme)
    candidates: List[ScreenRow] = []
    below_floor = 0
    unavailable = 0

    for snapshot in universe:
        if classify_market_cap(snapshot.market_cap_usd, scheme) != tier:
            continue
        if snapshot.analyst_count < floor:
            below_floor += 1
            continue
        try:
            report = appraise(snapshot, constants)
        except ValuationUnavailable:
            report = None
        if report is None or report.implied_return_5y_annualized is None:
            log.debug("Excluding %s from the %s screen: no 5Y estimate", snapshot.ticker, tier)
            unavailable += 1
            continue
        candidates.append(ScreenRow.of(snapshot, report))

    buys = sorted(
        (row for row in candidates if _is_buy(row, constants)),
        key=lambda row: (-row.ret_5y_annualized, row.ticker),
    )
    sells = sorted(
        (row for row in candidates if _is_sell(row)),
        key=lambda row: (row.ret_5y_annualized, row.ticker),
    )

    return ScreenResult(
        tier=tier,
        week_label=week or week_label(universe.as_of),
        buys=tuple(buys[:top_n]),
        sells=tuple(sells[:top_n]),
        as_of=universe.as_of,
        below_analyst_floor=below_floor,
        unavailable=unavailable,
    )


def screen_all_tiers(
    universe: Universe,
    constants: GrahamConstants = GrahamConstants(),
    top_n: int = DEFAULT_TOP_N,
    scheme: Optional[Type[TierScheme]] = None,
    week: Optional[str] = None,
) -> List[ScreenResult]:
    """Screen every tier from Mega Cap down to Nano Cap."""
    return [screen_tier(universe, tier, constants, top_n, scheme, week) for tier in MarketCapTier]
