from decimal import Decimal
from enum import Enum
from functools import total_ordering
from typing import Optional, Type, Union

from grahamgrowth.config.tiers import Investopedia, TierScheme
from grahamgrowth.model.errors import InvalidInput
from grahamgrowth.model.snapshot import to_decimal


@total_ordering
class MarketCapTier(Enum):
    """
    The six market cap tiers, from the largest to the smallest companies.

    Tiers compare by size, i.e. `MEGA > BIG > ... > NANO`. Iteration
    yields them from MEGA down to NANO.
    """

    MEGA = 6
    BIG = 5
    MID = 4
    SMALL = 3
    MICRO = 2
    NANO = 1

    def __lt__(self, other):
        if not isinstance(other, MarketCapTier):
            return NotImplemented
        return self.value < other.value

    @property
    def label(self) -> str:
        return f"{self.name.capitalize()} Cap"

    @property
    def title(self) -> str:
        return f"{self.name.capitalize()}Cap"

    @property
    def slug(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, value: Union[str, "MarketCapTier"]) -> "MarketCapTier":
        """
        Get a tier by its name, case-insensitively.

        :raises InvalidInput: If there is no tier of that name.
        """
        if isinstance(value, cls):
            return value
        try:
            return cls[str(value).strip().upper()]
        except KeyError:
            raise InvalidInput({"tier": f"Unknown market cap tier {value!r}."})


def _scheme(scheme: Optional[Type[TierScheme]]) -> Type[TierScheme]:
    if scheme is not None:
        return scheme
    from grahamgrowth import app

    return app.config.get("TIER_SCHEME") or Investopedia


def classify_market_cap(
    cap_usd: Union[Decimal, int, float], scheme: Optional[Type[TierScheme]] = None
) -> MarketCapTier:
    """
    Get the tier a market cap in USD belongs to.

    Lower bounds are inclusive and upper bounds are exclusive, so a cap
    of exactly 300 bn is a Mega Cap and anything below 50 m a Nano Cap.

    :raises InvalidInput: If the cap is negative or not finite.
    """
    try:
        cap = to_decimal(cap_usd)
    except ValueError:
        raise InvalidInput({"market_cap_usd": "Market cap is not a finite number."})
    if cap < 0:
        raise InvalidInput({"market_cap_usd": "Market cap is negative."})

    bounds = _scheme(scheme).get("lower_bounds", {})
    for tier in MarketCapTier:
        if cap >= bounds.get(tier.name, 0):
            return tier
    return MarketCapTier.NANO


def min_analysts_for_tier(tier: MarketCapTier, scheme: Optional[Type[TierScheme]] = None) -> int:
    """
    Get the minimum number of analysts covering a stock of a given tier.

    Consensus growth estimates of only a handful of analysts are too
    noisy, and the bigger the company, the more analysts we expect.
    """
    return _scheme(scheme).get("min_analysts", {})[MarketCapTier.parse(tier).name]
