from prometheus_client import REGISTRY

from grahamgrowth.lib import metrics
from grahamgrowth.lib.ingest import load_universe
from grahamgrowth.lib.screener import screen_tier

from .stocks import fixture_path, load_fixture


def sample(name, **labels):
    return REGISTRY.get_sample_value(name, labels)


def test_record_ingest():
    load_universe(fixture_path("small.csv"))
    assert sample("grahamgrowth_ingest_rejected_count", reason="non-positive-price") == 1
    assert sample("grahamgrowth_ingest_rejected_count", reason="duplicate-ticker") == 0


def test_record_ingest_resets():
    load_universe(fixture_path("duplicates.csv"))
    load_universe(fixture_path("mega_cap.json"))
    assert sample("grahamgrowth_ingest_rejected_count", reason="duplicate-ticker") == 0


def test_record_universe():
    metrics.record_universe(load_fixture("mega_cap.json"))
    assert sample("grahamgrowth_stock_count", tier="mega") == 9
    assert sample("grahamgrowth_stock_count", tier="nano") == 0


def test_record_screen():
    metrics.record_screen(screen_tier(load_fixture("mega_cap.json"), "mega"))
    assert sample("grahamgrowth_screen_row_count", tier="mega", side="buy") == 7
    assert sample("grahamgrowth_screen_row_count", tier="mega", side="sell") == 0
