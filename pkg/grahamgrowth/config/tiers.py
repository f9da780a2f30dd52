import json


class _TierSchemeType(type):
    def __getattr__(cls, attr):
        return None


class TierScheme(metaclass=_TierSchemeType):
    """
    A partition of market capitalization into tiers.

    `lower_bounds` maps each tier name to the smallest market cap in USD
    that still belongs to it (inclusive). The next larger tier's bound is
    the exclusive upper limit. `min_analysts` maps each tier name to the
    number of covering analysts a stock needs to enter that tier's screen.
    Tier names are the member names of
    :class:`grahamgrowth.model.tier.MarketCapTier`.
    """

    @classmethod
    def get(cls, attr, default=None):
        return getattr(cls, attr) if attr in dir(cls) else default

    @classmethod
    def override(cls, attr, value):
        setattr(cls, attr, value)

    @classmethod
    def json(cls):
        return json.dumps(
            {
                "name": cls.__name__,
                "lower_bounds": cls.get("lower_bounds", {}),
                "min_analysts": cls.get("min_analysts", {}),
            }
        )


class Investopedia(TierScheme):
    lower_bounds = {
        "MEGA": 300_000_000_000,
        "BIG": 10_000_000_000,
        "MID": 2_000_000_000,
        "SMALL": 300_000_000,
        "MICRO": 50_000_000,
        "NANO": 0,
    }
    min_analysts = {
        "MEGA": 25,
        "BIG": 20,
        "MID": 15,
        "SMALL": 10,
        "MICRO": 5,
        "NANO": 3,
    }
