import csv
import io
import json
from decimal import Decimal

import pytest

from grahamgrowth.lib import render
from grahamgrowth.lib.screener import screen_all_tiers, screen_tier
from grahamgrowth.lib.summary import GroupBy, SummaryRow, summarize
from grahamgrowth.lib.valuation import appraise, compound_value, project_estimates
from grahamgrowth.model.snapshot import Universe

from .stocks import AS_OF, growth_for_return, load_fixture, make_snapshot


@pytest.fixture
def mixed():
    universe = Universe(
        AS_OF,
        [
            make_snapshot("GROW", growth_5y_est=growth_for_return(21), past_growth_5y=30),
            make_snapshot("SHRK", growth_5y_est=growth_for_return(-10)),
        ],
    )
    return screen_tier(universe, "mega")


@pytest.fixture
def summary12():
    return load_fixture("summary12.json")


@pytest.mark.parametrize(
    "value,expected",
    [
        (Decimal(21), "21"),
        (Decimal("21.04"), "21"),
        (Decimal("21.06"), "21.1"),
        (Decimal("21.05"), "21.1"),
        (Decimal("-0.04"), "0"),
        (Decimal("-40.951"), "-41"),
        (Decimal("1.5"), "1.5"),
        (None, "-"),
    ],
)
def test_format_percent(value, expected):
    assert render.format_percent(value) == expected


@pytest.mark.parametrize(
    "value,expected",
    [(Decimal("5708.76"), "5708.76"), (Decimal("2.345"), "2.35"), (Decimal(100), "100.00")],
)
def test_format_money(value, expected):
    assert render.format_money(value) == expected


def test_plain():
    assert render.plain(Decimal("1.23456789")) == 1.234568
    assert render.plain(AS_OF) == "2020-03-15"
    assert render.plain(7) == 7


def test_screen_text_block(mixed):
    title, blank, header, row = render.screen_text_block(mixed)
    assert title == "(WK 11) Graham's Growth MegaCap Buy/Sell"
    assert blank == ""
    assert header.split() == ["▲BUY", *render.SCREEN_COLUMNS, "▼SELL", *render.SCREEN_COLUMNS]
    assert row.split() == [
        "GROW", "21", "159.4", "159.4", "30", "30", "1.5",
        "SHRK", "-10", "-41", "-41", "5", "30", "1.5",
    ]  # fmt: skip


def test_screen_text_aligns_sells():
    universe = Universe(AS_OF, [make_snapshot("SHRK", growth_5y_est=growth_for_return(-10))])
    row = render.screen_text_block(screen_tier(universe, "mega"))[3]
    header = render.screen_text_block(screen_tier(universe, "mega"))[2]
    assert row.index("SHRK") == header.index("▼SELL")


def test_screen_text_separates_wide_cells():
    universe = Universe(
        AS_OF,
        [
            make_snapshot("BOOMINGCO", growth_5y_est=growth_for_return(80)),
            make_snapshot("SHRK", growth_5y_est=growth_for_return(-10)),
        ],
    )
    header, row = render.screen_text_block(screen_tier(universe, "mega"))[2:]
    assert row.split()[:4] == ["BOOMINGCO", "80", "1789.6", "1789.6"]
    assert row.split()[7:9] == ["SHRK", "-10"]
    assert row.index("SHRK") == header.index("▼SELL")


def test_screen_text_footer(mixed):
    lines = render.screen_text([mixed], "Sun Mar 15 12:00:00 UTC 2020").splitlines()
    assert lines[-5:] == [
        render.SCREEN_LEGEND,
        "",
        render.DISCLAIMER,
        "",
        "Sun Mar 15 12:00:00 UTC 2020",
    ]


def test_screen_text_without_timestamp(mixed):
    lines = render.screen_text([mixed]).splitlines()
    assert lines[-1] == render.DISCLAIMER


def test_screen_text_mega():
    results = screen_all_tiers(load_fixture("mega_cap.json"))
    text = render.screen_text(results)
    rows = render.screen_text_block(results[0])[3:]
    assert [row.split()[0] for row in rows] == ["BABA", "FB", "JPM", "AMZN", "AAPL", "MSFT", "V"]
    assert text.count("Buy/Sell") == 6
    assert all(line == line.rstrip() for line in text.splitlines())


def test_screen_formats_agree():
    results = screen_all_tiers(load_fixture("mega_cap.json"))
    records = list(csv.DictReader(io.StringIO(render.screen_csv(results))))
    document = json.loads(render.screen_json(results))
    buys = [row for screen in document["screens"] for row in screen["buys"]]
    assert [r["ticker"] for r in records] == [row["ticker"] for row in buys]
    assert [float(r["ret_5y"]) for r in records] == [row["ret_5y"] for row in buys]
    assert records[0]["tier"] == "mega"
    assert records[0]["side"] == "buy"
    assert records[0]["rank"] == "1"


def test_screen_csv_header(mixed):
    assert render.screen_csv([mixed]).splitlines()[0] == ",".join(render.SCREEN_CSV_FIELDS)


def test_screen_csv_missing_values():
    snapshot = make_snapshot(
        "LATE", eps_fy0_est=Decimal("-0.01"), growth_5y_est=growth_for_return(-10)
    )
    universe = Universe(AS_OF, [snapshot])
    (record,) = render.screen_records([screen_tier(universe, "mega")])
    assert record["ret_0y"] is None
    line = render.screen_csv([screen_tier(universe, "mega")]).splitlines()[1]
    assert ",," in line


def test_screen_json_is_deterministic():
    results = screen_all_tiers(load_fixture("mega_cap.json"))
    assert render.screen_json(results) == render.screen_json(results)


def test_summary_text(summary12):
    blocks = [
        ("Sector", summarize(summary12, GroupBy.SECTOR)),
        ("Industry", summarize(summary12, GroupBy.INDUSTRY) + summarize(summary12, GroupBy.ALL)),
    ]
    lines = render.summary_text(blocks, "WK 11", 10).splitlines()
    assert lines[:3] == ["(WK 11)", "Graham's Growth Summary", ""]
    assert lines[3].split() == ["Sector", "W5Y%", "WP5%", "#'s", "Industry", "W5Y%", "WP5%", "#'s"]
    assert lines[4].split()[:4] == ["Energy", "1.3", "2.3", "3"]
    assert any("All Sectors" in line for line in lines)
    assert "we only select >=10 analysts" in lines[-3]
    assert lines[-1] == render.DISCLAIMER


def test_summary_text_separates_wide_cells():
    row = SummaryRow("Biotechnology", Decimal("12345.6"), Decimal("-100.5"), 1000)
    lines = render.summary_text([("Industry", [row])], "WK 11", 10).splitlines()
    assert lines[4].split() == ["Biotechnology", "12345.6", "-100.5", "1000"]


def test_summary_records(summary12):
    blocks = [("Sector", summarize(summary12) + summarize(summary12, GroupBy.ALL))]
    records = render.summary_records(blocks)
    assert [r["block"] for r in records] == ["sector"] * 3 + ["all"]
    assert records[-1]["group"] == "All Sectors"
    assert records[-1]["count"] == 9


def test_valuation_text():
    snapshot = load_fixture("amzn.json").get("AMZN")
    lines = render.valuation_text(snapshot, appraise(snapshot)).splitlines()
    assert lines[1] == "Price 292.24, consensus growth 101%"
    assert lines[4].split()[:5] == ["Current", "year", "2020", "27.12", "5708.76"]
    assert lines[6].split()[:4] == ["5", "years", "2025", "27.12"]


def test_valuation_text_missing_horizon():
    snapshot = make_snapshot(eps_fy0_est=Decimal(-1))
    lines = render.valuation_text(snapshot, appraise(snapshot)).splitlines()
    assert lines[4].split()[-2:] == ["-", "-"]


def test_projection_text():
    snapshot = make_snapshot()
    lines = render.projection_text(snapshot, project_estimates(snapshot)).splitlines()
    assert len(lines) == 4 + 6
    assert lines[4].split() == ["2020", "1.00", "28.50", "185.00"]


def test_growth_table():
    rates = [Decimal(3), Decimal(5), Decimal(15)]
    table = [[compound_value(100, r, year) for r in rates] for year in range(1, 6)]
    lines = render.growth_table_text(rates, table).splitlines()
    assert lines[0].split() == ["Year", "3%", "5%", "15%"]
    assert lines[5].split() == ["5", "115.93", "127.63", "201.14"]


def test_growth_table_records():
    rates = [Decimal(0)]
    records = render.growth_table_records(rates, [[Decimal(100)], [Decimal(100)]])
    assert records == [
        {"year": 1, "rate": Decimal(0), "value": Decimal("100.00")},
        {"year": 2, "rate": Decimal(0), "value": Decimal("100.00")},
    ]


def test_growth_table_separates_wide_cells():
    lines = render.growth_table_text(
        [Decimal(100), Decimal(200)], [[Decimal(104857600), Decimal(3486784401)]]
    ).splitlines()
    assert lines[0].split() == ["Year", "100%", "200%"]
    assert lines[1].split() == ["1", "104857600.00", "3486784401.00"]
