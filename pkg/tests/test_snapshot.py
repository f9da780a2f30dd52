from datetime import date
from decimal import Decimal

import pytest

from grahamgrowth.model.snapshot import (
    InvalidSnapshot,
    MoneyPerShare,
    RejectReason,
    Universe,
    to_decimal,
)

from .stocks import AS_OF, make_snapshot


@pytest.fixture
def snapshot():
    return make_snapshot("AMZN", price=Decimal("1900.10"))


def test_snapshot_ticker(snapshot):
    assert snapshot.ticker == "AMZN"


def test_snapshot_price_is_decimal(snapshot):
    assert snapshot.price == Decimal("1900.10")


def test_snapshot_fy0_year_follows_history(snapshot):
    assert snapshot.fy0_year == 2020


def test_snapshot_fy0_year_without_history():
    assert make_snapshot(eps_history=(), as_of=date(2021, 6, 1)).fy0_year == 2021


def test_snapshot_fy0_year_unknown():
    assert make_snapshot(eps_history=(), as_of=None).fy0_year is None


def test_snapshot_price_per_share(snapshot):
    assert snapshot.price_per_share == MoneyPerShare(Decimal("1900.10"), "USD")


def test_snapshot_floats_are_converted_exactly():
    assert make_snapshot(price=0.1).price == Decimal("0.1")


def test_snapshot_info_uses_decimal_strings(snapshot):
    info = snapshot.info()
    assert info["price"] == "1900.10"
    assert info["eps_history"][0] == {"year": 2015, "eps": "1.00"}
    assert info["analyst_count"] == 30


def test_snapshot_is_immutable(snapshot):
    with pytest.raises(AttributeError):
        snapshot.price = Decimal(1)  # noqa


@pytest.mark.parametrize(
    "kwargs,reason",
    [
        ({"price": Decimal(0)}, RejectReason.NON_POSITIVE_PRICE),
        ({"price": Decimal(-5)}, RejectReason.NON_POSITIVE_PRICE),
        ({"market_cap_usd": Decimal(-1)}, RejectReason.NEGATIVE_CAP),
        ({"analyst_count": -1}, RejectReason.NEGATIVE_VALUE),
        ({"current_ratio": Decimal("-0.1")}, RejectReason.NEGATIVE_VALUE),
        ({"currency": "XXQ"}, RejectReason.BAD_CURRENCY_CODE),
        ({"price": "nan"}, RejectReason.NON_FINITE_NUMBER),
        ({"growth_5y_est": float("inf")}, RejectReason.NON_FINITE_NUMBER),
        ({"analyst_count": 2.5}, RejectReason.NON_FINITE_NUMBER),
        ({"eps_history": ((2016, 1), (2015, 1))}, RejectReason.BAD_YEAR_ORDER),
        ({"eps_history": ((2015, 1), (2015, 2))}, RejectReason.BAD_YEAR_ORDER),
    ],
)
def test_snapshot_invalid(kwargs, reason):
    with pytest.raises(InvalidSnapshot) as e:
        make_snapshot(**kwargs)
    assert e.value.reason is reason


def test_snapshot_invalid_ticker():
    with pytest.raises(InvalidSnapshot) as e:
        make_snapshot(" ")
    assert e.value.reason is RejectReason.MISSING_FIELD


def test_snapshot_first_failing_check_is_the_reason():
    with pytest.raises(InvalidSnapshot) as e:
        make_snapshot(currency="XXQ", price=Decimal(0), market_cap_usd=Decimal(-1))
    assert e.value.reason is RejectReason.BAD_CURRENCY_CODE
    assert len(e.value.args) == 3


def test_snapshot_zero_cap_is_valid():
    assert make_snapshot(market_cap_usd=0).market_cap_usd == 0


def test_snapshot_negative_growth_is_valid():
    assert make_snapshot(growth_5y_est=-30).growth_5y_est == Decimal(-30)


def test_reject_reason_str():
    assert str(RejectReason.DUPLICATE_TICKER) == "duplicate-ticker"


@pytest.mark.parametrize("value", ["foo", "nan", "inf", None, True, [1]])
def test_to_decimal_invalid(value):
    with pytest.raises(ValueError, match="not"):
        to_decimal(value)


@pytest.mark.parametrize(
    "value,expected",
    [(1, Decimal(1)), ("2.50", Decimal("2.50")), (0.3, Decimal("0.3")), (Decimal(7), Decimal(7))],
)
def test_to_decimal(value, expected):
    assert to_decimal(value) == expected


def test_money_per_share_str():
    assert str(MoneyPerShare("27.12", "USD")) == "27.12 USD"


def test_universe_iterates_in_ticker_order():
    universe = Universe(AS_OF, [make_snapshot("MSFT"), make_snapshot("AAPL"), make_snapshot("V")])
    assert [s.ticker for s in universe] == ["AAPL", "MSFT", "V"]


def test_universe_lookup():
    universe = Universe(AS_OF, [make_snapshot("MSFT")])
    assert "MSFT" in universe
    assert universe.get("MSFT").ticker == "MSFT"
    assert universe.get("AAPL") is None
    assert len(universe) == 1


def test_universe_duplicate_ticker():
    with pytest.raises(ValueError, match="Duplicate ticker"):
        Universe(AS_OF, [make_snapshot("MSFT"), make_snapshot("MSFT")])


@pytest.mark.parametrize("as_of", ["2020-03-15", None, 20200315])
def test_universe_invalid_as_of(as_of):
    with pytest.raises(ValueError, match="not a date"):
        Universe(as_of, [])


def test_universe_is_read_only():
    universe = Universe(AS_OF, [make_snapshot("MSFT")])
    with pytest.raises(TypeError):
        universe.snapshots["AAPL"] = make_snapshot("AAPL")  # noqa


def test_universe_empty():
    assert len(Universe(AS_OF)) == 0
