import json
from decimal import Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grahamgrowth.config.tiers import Investopedia, TierScheme
from grahamgrowth.model.errors import InvalidInput
from grahamgrowth.model.tier import MarketCapTier, classify_market_cap, min_analysts_for_tier

BOUNDS = sorted(Investopedia.lower_bounds.values())

boundary_caps = st.builds(
    lambda bound, offset: max(bound + offset, 0),
    st.sampled_from(BOUNDS),
    st.integers(min_value=-2, max_value=2),
)
caps = st.one_of(boundary_caps, st.integers(min_value=0, max_value=10**13))


class Tiny(TierScheme):
    lower_bounds = {"MEGA": 500, "BIG": 400, "MID": 300, "SMALL": 200, "MICRO": 100, "NANO": 0}
    min_analysts = {"MEGA": 6, "BIG": 5, "MID": 4, "SMALL": 3, "MICRO": 2, "NANO": 1}


@pytest.mark.parametrize(
    "cap,tier",
    [
        (2_000_000_000_000, MarketCapTier.MEGA),
        (300_000_000_000, MarketCapTier.MEGA),
        (299_999_999_999, MarketCapTier.BIG),
        (10_000_000_000, MarketCapTier.BIG),
        (9_999_999_999, MarketCapTier.MID),
        (2_000_000_000, MarketCapTier.MID),
        (1_999_999_999, MarketCapTier.SMALL),
        (300_000_000, MarketCapTier.SMALL),
        (299_999_999, MarketCapTier.MICRO),
        (50_000_000, MarketCapTier.MICRO),
        (49_999_999, MarketCapTier.NANO),
        (0, MarketCapTier.NANO),
        (Decimal("49999999.99"), MarketCapTier.NANO),
    ],
)
def test_classify_market_cap(cap, tier):
    assert classify_market_cap(cap) is tier


@pytest.mark.parametrize("cap", [-1, Decimal("-0.01"), float("nan"), float("inf"), "foo"])
def test_classify_market_cap_invalid(cap):
    with pytest.raises(InvalidInput, match="Market cap"):
        classify_market_cap(cap)


@pytest.mark.parametrize(
    "tier,n",
    [
        (MarketCapTier.MEGA, 25),
        (MarketCapTier.BIG, 20),
        (MarketCapTier.MID, 15),
        (MarketCapTier.SMALL, 10),
        (MarketCapTier.MICRO, 5),
        (MarketCapTier.NANO, 3),
    ],
)
def test_min_analysts_for_tier(tier, n):
    assert min_analysts_for_tier(tier) == n


def test_tier_order():
    assert list(MarketCapTier) == sorted(MarketCapTier, reverse=True)
    assert MarketCapTier.MEGA > MarketCapTier.BIG > MarketCapTier.NANO


def test_tier_names():
    assert MarketCapTier.MEGA.label == "Mega Cap"
    assert MarketCapTier.MEGA.title == "MegaCap"
    assert MarketCapTier.MICRO.slug == "micro"


@pytest.mark.parametrize("name", ["mega", "MEGA", " Mega ", MarketCapTier.MEGA])
def test_tier_parse(name):
    assert MarketCapTier.parse(name) is MarketCapTier.MEGA


@pytest.mark.parametrize("name", ["giant", "", "all"])
def test_tier_parse_invalid(name):
    with pytest.raises(InvalidInput, match="Unknown market cap tier"):
        MarketCapTier.parse(name)


def test_explicit_scheme():
    assert classify_market_cap(450, Tiny) is MarketCapTier.BIG
    assert min_analysts_for_tier(MarketCapTier.BIG, Tiny) == 5


def test_scheme_from_config(config):
    config["TIER_SCHEME"] = Tiny
    assert classify_market_cap(100) is MarketCapTier.MICRO
    assert min_analysts_for_tier("nano") == 1


def test_scheme_override():
    class Overridden(Investopedia):
        pass

    Overridden.override("min_analysts", {**Investopedia.min_analysts, "NANO": 0})
    assert min_analysts_for_tier(MarketCapTier.NANO, Overridden) == 0
    assert min_analysts_for_tier(MarketCapTier.NANO, Investopedia) == 3


def test_scheme_get_missing():
    assert Tiny.get("colors", "none") == "none"


def test_scheme_json():
    info = json.loads(Investopedia.json())
    assert info["name"] == "Investopedia"
    assert info["lower_bounds"]["MEGA"] == 300_000_000_000


@settings(max_examples=1000)
@given(cap=caps)
def test_tiers_partition_caps(cap):
    tier = classify_market_cap(cap)
    lower = Investopedia.lower_bounds[tier.name]
    bigger = [t for t in MarketCapTier if t > tier]
    upper = Investopedia.lower_bounds[min(bigger).name] if bigger else None
    assert lower <= cap
    assert upper is None or cap < upper


@settings(max_examples=1000)
@given(a=caps, b=caps)
def test_tiers_are_monotonic(a, b):
    if a <= b:
        assert classify_market_cap(a) <= classify_market_cap(b)
    else:
        assert classify_market_cap(a) >= classify_market_cap(b)
