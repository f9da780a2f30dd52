from time import time

from flask import request
from prometheus_client import Counter, Gauge, Histogram, start_http_server

from grahamgrowth.model.snapshot import RejectReason
from grahamgrowth.model.tier import MarketCapTier, classify_market_cap

stock_count = Gauge(
    "grahamgrowth_stock_count",
    "grahamgrowth count of stocks in the loaded universe grouped by market cap tier",
    ["tier"],
)

screen_row_count = Gauge(
    "grahamgrowth_screen_row_count",
    "grahamgrowth count of screen rows grouped by market cap tier and side",
    ["tier", "side"],
)

ingest_rejected_count = Gauge(
    "grahamgrowth_ingest_rejected_count",
    "grahamgrowth count of snapshot records rejected at the last ingest grouped by reason",
    ["reason"],
)

request_latency = Histogram(
    "grahamgrowth_request_latency_seconds",
    "grahamgrowth Request Latency",
    ["method", "endpoint"],
)

request_count = Counter(
    "grahamgrowth_request_count",
    "grahamgrowth Request Count",
    ["method", "endpoint", "http_status"],
)


def record_ingest(report):
    for reason in RejectReason:
        ingest_rejected_count.labels(reason=reason.value).set(
            sum(1 for _, r in report.rejected if r is reason)
        )


def record_universe(universe, scheme=None):
    counts = {tier: 0 for tier in MarketCapTier}
    for snapshot in universe:
        counts[classify_market_cap(snapshot.market_cap_usd, scheme)] += 1
    for tier, count in counts.items():
        stock_count.labels(tier=tier.slug).set(count)


def record_screen(result):
    screen_row_count.labels(tier=result.tier.slug, side="buy").set(len(result.buys))
    screen_row_count.labels(tier=result.tier.slug, side="sell").set(len(result.sells))


def before_request():
    request.start_time = time()


def after_request(response):
    latency = time() - request.start_time
    request_latency.labels(request.method, request.endpoint).observe(latency)
    request_count.labels(request.method, request.endpoint, response.status_code).inc()
    return response


def monitor(app, universe=None):
    address = app.config.get("PROMETHEUS_ADDRESS", "127.0.0.1")
    port = app.config.get("PROMETHEUS_PORT", 9567)
    if universe is not None:
        record_universe(universe, app.config.get("TIER_SCHEME"))
    app.before_request(before_request)
    app.after_request(after_request)
    start_http_server(port, address)
    print("Prometheus exporter started on http://{}:{}/".format(address, port))
