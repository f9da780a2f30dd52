from dataclasses import dataclass
from decimal import Decimal
from typing import List, Sequence, Tuple

import numpy as np

from grahamgrowth.model.constants import GrahamConstants
from grahamgrowth.model.errors import InsufficientData, InvalidInput
from grahamgrowth.model.snapshot import MoneyPerShare, StockSnapshot, to_decimal

FitPoint = Tuple[int, Decimal]

EPS_QUANTUM = Decimal("1e-10")


@dataclass(frozen=True)
class LinearFit:
    """
    A least squares line through EPS over fiscal years.

    The line is parameterized over the year index `year - base_year`,
    with `base_year` being the earliest year fitted, so the intercept is
    the fitted EPS of the base year.
    """

    slope: float
    intercept: float
    n_points: int
    sse: float
    base_year: int
    currency: str = "USD"

    def predict(self, year: int) -> float:
        return self.intercept + self.slope * (year - self.base_year)


def fit_eps_trend(points: Sequence[FitPoint], currency: str = "USD") -> LinearFit:
    """
    Fit an ordinary least squares line through (fiscal year, EPS) points.

    Years need not be consecutive or unique, but at least two distinct
    years are needed to determine a line.

    :raises InsufficientData: If there are fewer than two distinct years.
    """
    if len({year for year, _ in points}) < 2:
        raise InsufficientData({"eps": "Need earnings of at least two distinct years."})

    base_year = min(year for year, _ in points)
    x = np.array([year - base_year for year, _ in points], dtype=float)
    y = np.array([float(eps) for _, eps in points], dtype=float)

    design = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(design, y, rcond=None)
    residuals = y - design @ np.array([slope, intercept])

    return LinearFit(
        slope=float(slope),
        intercept=float(intercept),
        n_points=len(points),
        sse=float(residuals @ residuals),
        base_year=base_year,
        currency=currency,
    )


def assemble_fit_points(snapshot: StockSnapshot) -> List[FitPoint]:
    """
    Get the points the earnings trend of a stock is fitted through.

    These are the reported EPS history followed by the forecasts for the
    current and the next fiscal year, which are placed one and two years
    after the last history year. Without any history, the current fiscal
    year is the calendar year of the snapshot.

    :raises InsufficientData: If a forecast is missing or the current
        fiscal year is unknown.
    """
    if snapshot.eps_fy0_est is None or snapshot.eps_fy1_est is None:
        raise InsufficientData(
            {"eps": f"{snapshot.ticker} lacks current or next year earnings forecasts."}
        )
    fy0_year = snapshot.fy0_year
    if fy0_year is None:
        raise InsufficientData({"eps": f"Current fiscal year of {snapshot.ticker} is unknown."})

    points = list(snapshot.eps_history)
    points.append((fy0_year, snapshot.eps_fy0_est))
    points.append((fy0_year + 1, snapshot.eps_fy1_est))
    return points


def extrapolate_eps(fit: LinearFit, target_year: int) -> Decimal:
    """
    Get the EPS on the fitted line at `target_year`.

    The result is a decimal rounded to 1e-10 so that money arithmetic
    downstream stays decimal.

    :raises InvalidInput: If the target year precedes the fitted years.
    """
    if target_year < fit.base_year:
        raise InvalidInput({"year": f"{target_year} is before {fit.base_year}."})
    return to_decimal(fit.predict(target_year)).quantize(EPS_QUANTUM)


def eps_horizon_estimate(
    snapshot: StockSnapshot, constants: GrahamConstants = GrahamConstants()
) -> MoneyPerShare:
    """
    Get the EPS of a stock `horizon_years` after its current fiscal year
    by extending the least squares trend of its earnings.

    The result is not clamped and may be zero or negative.

    :raises InsufficientData: If no trend can be fitted.
    """
    fit = fit_eps_trend(assemble_fit_points(snapshot), snapshot.currency)
    amount = extrapolate_eps(fit, snapshot.fy0_year + constants.horizon_years)
    return MoneyPerShare(amount, snapshot.currency)
