import logging
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Any, Dict, List, Optional, Union

from grahamgrowth.lib import forecast
from grahamgrowth.model.constants import GrahamConstants
from grahamgrowth.model.errors import (
    InsufficientData,
    InvalidInput,
    NotMeaningful,
    ValuationUnavailable,
)
from grahamgrowth.model.snapshot import MoneyPerShare, Percent, StockSnapshot, to_decimal

log = logging.getLogger(__name__)

Number = Union[Decimal, int, float, str]

HUNDRED = Decimal(100)


def _finite(value: Number, name: str) -> Decimal:
    try:
        return to_decimal(value)
    except ValueError:
        raise InvalidInput({name: f"{value!r} is not a finite number."})


def graham_multiplier(g: Number, constants: GrahamConstants = GrahamConstants()) -> Decimal:
    """
    Get Graham's fair P/E for a company growing `g` percent annually.

    This is `base_pe + growth_multiplier * g`, i.e. 8.5 for a company
    without growth and 12.5 for one growing at 2%. The result is not
    clamped and becomes negative for strongly negative growth.
    """
    return constants.base_pe + constants.growth_multiplier * _finite(g, "growth")


def graham_intrinsic_value(
    g: Number, eps: MoneyPerShare, constants: GrahamConstants = GrahamConstants()
) -> MoneyPerShare:
    """
    Get Graham's intrinsic value `(8.5 + 2 * G) * E` of a share.

    :raises NotMeaningful: If the earnings are not positive.
    :raises InvalidInput: If the growth is not a finite number.
    """
    multiplier = graham_multiplier(g, constants)
    if eps.amount <= 0:
        raise NotMeaningful({"eps": f"Earnings of {eps} are not positive."})
    return MoneyPerShare(multiplier * eps.amount, eps.currency)


def graham_estimate(
    g: Number,
    eps: Number,
    constants: GrahamConstants = GrahamConstants(),
    price: Optional[Number] = None,
    currency: str = "USD",
) -> Dict[str, Any]:
    """
    Value a share from a growth rate and earnings given by hand, e.g. to
    find the growth the market prices in. With a price, the simple return
    the estimate implies is included.

    >>> graham_estimate(101, "27.12")["iv"]
    Decimal('5708.760')
    """
    value = graham_intrinsic_value(g, MoneyPerShare(_finite(eps, "eps"), currency), constants)
    result = {
        "growth": _finite(g, "growth"),
        "eps": _finite(eps, "eps"),
        "multiplier": graham_multiplier(g, constants),
        "iv": value.amount,
        "price": None,
        "ret": None,
    }
    if price is not None:
        price = _finite(price, "price")
        if price <= 0:
            raise InvalidInput({"price": "Price is not positive."})
        result.update(price=price, ret=simple_return(price, value.amount))
    return result


def compound_value(principal: Number, rate: Number, years: int) -> Decimal:
    """
    Get the value of `principal` after growing `rate` percent for `years` years.

    :raises InvalidInput: If the rate would wipe out the principal or
        the number of years is negative.
    """
    principal = _finite(principal, "principal")
    rate = _finite(rate, "rate")
    if rate <= -HUNDRED:
        raise InvalidInput({"rate": "Rate must be greater than -100%."})
    if isinstance(years, bool) or not isinstance(years, int) or years < 0:
        raise InvalidInput({"years": "Years is not a non-negative integer."})
    return principal * (1 + rate / HUNDRED) ** years


def annualized_return(start: Number, end: Number, years: int) -> Percent:
    """
    Get the constant annual rate in percent that grows `start` into `end`.

    This is the inverse of :func:`compound_value`.

    :raises InvalidInput: If `start` is not positive, `end` is negative
        or `years` is less than 1.
    """
    start = _finite(start, "start")
    end = _finite(end, "end")
    if start <= 0:
        raise InvalidInput({"start": "Start value is not positive."})
    if end < 0:
        raise InvalidInput({"end": "End value is negative."})
    if isinstance(years, bool) or not isinstance(years, int) or years < 1:
        raise InvalidInput({"years": "Years is not a positive integer."})
    if end == 0:
        return Percent(-HUNDRED)
    with localcontext() as ctx:
        ctx.prec = 40
        ratio = end / start
        root = ratio ** (Decimal(1) / Decimal(years))
    return Percent(+(HUNDRED * (root - 1)))


def simple_return(price: Decimal, value: Decimal) -> Percent:
    return Percent(HUNDRED * (value / price - 1))


@dataclass(frozen=True)
class ValuationReport:
    """
    Graham estimates of one stock for the current year, the next year
    and `horizon_years` ahead, with the returns they imply at the current
    price.

    A horizon whose earnings are not positive has no estimate and all
    its fields are None. The 5-year return is annualized, the other two
    are simple returns.
    """

    ticker: str
    currency: str
    price: Decimal
    growth: Percent
    horizon_years: int
    horizon_year: Optional[int]
    eps_0y: Optional[MoneyPerShare]
    eps_1y: Optional[MoneyPerShare]
    eps_5y: Optional[MoneyPerShare]
    intrinsic_value_0y: Optional[MoneyPerShare]
    intrinsic_value_1y: Optional[MoneyPerShare]
    intrinsic_value_5y: Optional[MoneyPerShare]
    implied_return_0y: Optional[Percent]
    implied_return_1y: Optional[Percent]
    implied_return_5y_annualized: Optional[Percent]

    def info(self) -> Dict[str, Any]:
        def amount(money: Optional[MoneyPerShare]) -> Optional[Decimal]:
            return None if money is None else money.amount

        return {
            "ticker": self.ticker,
            "currency": self.currency,
            "price": self.price,
            "growth_5y_est": self.growth,
            "horizon_year": self.horizon_year,
            "eps_0y": amount(self.eps_0y),
            "eps_1y": amount(self.eps_1y),
            "eps_5y": amount(self.eps_5y),
            "iv_0y": amount(self.intrinsic_value_0y),
            "iv_1y": amount(self.intrinsic_value_1y),
            "iv_5y": amount(self.intrinsic_value_5y),
            "ret_0y": self.implied_return_0y,
            "ret_1y": self.implied_return_1y,
            "ret_5y_annualized": self.implied_return_5y_annualized,
        }


def _estimate(
    growth: Decimal, eps: Optional[MoneyPerShare], constants: GrahamConstants
) -> Optional[MoneyPerShare]:
    if eps is None or eps.amount <= 0:
        return None
    return graham_intrinsic_value(growth, eps, constants)


def build_valuation_report(
    snapshot: StockSnapshot,
    eps_5y: Optional[MoneyPerShare],
    constants: GrahamConstants = GrahamConstants(),
) -> ValuationReport:
    """
    Value a stock with Graham's formula at three horizons.

    All horizons use the same consensus growth estimate and differ only
    in the earnings: the current year forecast, the next year forecast
    and the extrapolated earnings `horizon_years` after the current year.

    An intrinsic value of zero or below implies a total loss, so its
    annualized return is -100%.

    :raises ValuationUnavailable: If none of the three earnings is positive.
    """
    currency = snapshot.currency

    def money(amount: Optional[Decimal]) -> Optional[MoneyPerShare]:
        return None if amount is None else MoneyPerShare(amount, currency)

    eps_0y = money(snapshot.eps_fy0_est)
    eps_1y = money(snapshot.eps_fy1_est)

    iv0 = _estimate(snapshot.growth_5y_est, eps_0y, constants)
    iv1 = _estimate(snapshot.growth_5y_est, eps_1y, constants)
    iv5 = _estimate(snapshot.growth_5y_est, eps_5y, constants)

    if iv0 is None and iv1 is None and iv5 is None:
        raise ValuationUnavailable(snapshot.ticker)

    price = snapshot.price
    fy0_year = snapshot.fy0_year

    return ValuationReport(
        ticker=snapshot.ticker,
        currency=currency,
        price=price,
        growth=snapshot.growth_5y_est,
        horizon_years=constants.horizon_years,
        horizon_year=None if fy0_year is None else fy0_year + constants.horizon_years,
        eps_0y=eps_0y,
        eps_1y=eps_1y,
        eps_5y=eps_5y,
        intrinsic_value_0y=iv0,
        intrinsic_value_1y=iv1,
        intrinsic_value_5y=iv5,
        implied_return_0y=None if iv0 is None else simple_return(price, iv0.amount),
        implied_return_1y=None if iv1 is None else simple_return(price, iv1.amount),
        implied_return_5y_annualized=(
            None
            if iv5 is None
            else annualized_return(price, max(iv5.amount, Decimal(0)), constants.horizon_years)
        ),
    )


def appraise(
    snapshot: StockSnapshot, constants: GrahamConstants = GrahamConstants()
) -> ValuationReport:
    """
    Forecast the earnings of a stock and value it.

    If the earnings trend cannot be fitted, the 5-year horizon is
    unavailable but the other two may still be valued.

    :raises ValuationUnavailable: If no horizon can be valued.
    """
    try:
        eps_5y = forecast.eps_horizon_estimate(snapshot, constants)
    except InsufficientData:
        log.debug("No earnings trend for %s", snapshot.ticker)
        eps_5y = None
    return build_valuation_report(snapshot, eps_5y, constants)


@dataclass(frozen=True)
class ProjectionRow:
    year: int
    eps: MoneyPerShare
    intrinsic_value: Optional[MoneyPerShare]
    implied_return: Optional[Percent]

    def info(self) -> Dict[str, Any]:
        return {
            "year": self.year,
            "eps": self.eps.amount,
            "iv": None if self.intrinsic_value is None else self.intrinsic_value.amount,
            "ret": self.implied_return,
        }


def project_estimates(
    snapshot: StockSnapshot, constants: GrahamConstants = GrahamConstants()
) -> List[ProjectionRow]:
    """
    Get Graham estimates for every year from the current fiscal year up
    to `horizon_years` ahead, using the earnings on the fitted trend line.

    The return of year 0 is simple, later returns are annualized over the
    years elapsed since the current year.

    :raises InsufficientData: If no earnings trend can be fitted.
    """
    points = forecast.assemble_fit_points(snapshot)
    fit = forecast.fit_eps_trend(points, snapshot.currency)
    fy0_year = snapshot.fy0_year

    rows = []
    for elapsed in range(constants.horizon_years + 1):
        year = fy0_year + elapsed
        eps = MoneyPerShare(forecast.extrapolate_eps(fit, year), snapshot.currency)
        iv = _estimate(snapshot.growth_5y_est, eps, constants)
        if iv is None:
            ret = None
        elif elapsed == 0:
            ret = simple_return(snapshot.price, iv.amount)
        else:
            ret = annualized_return(snapshot.price, max(iv.amount, Decimal(0)), elapsed)
        rows.append(ProjectionRow(year, eps, iv, ret))
    return rows
