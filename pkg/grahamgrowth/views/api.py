import json
import logging

from flask import Blueprint, Response, abort, request

from grahamgrowth import app
from grahamgrowth.config.tiers import Investopedia
from grahamgrowth.lib import metrics, render
from grahamgrowth.lib.ingest import load_universe
from grahamgrowth.lib.screener import screen_all_tiers, screen_tier
from grahamgrowth.lib.summary import GroupBy, summarize
from grahamgrowth.lib.valuation import appraise
from grahamgrowth.model.constants import GrahamConstants
from grahamgrowth.model.errors import InvalidInput, SchemaError, ValuationUnavailable
from grahamgrowth.model.snapshot import Universe
from grahamgrowth.model.tier import MarketCapTier
from grahamgrowth.views import json_error

bp = Blueprint("api", __name__, url_prefix="/api")

log = logging.getLogger(__name__)


def get_universe() -> Universe:
    """
    Get the universe the API serves. Unless it was loaded at startup, the
    snapshot at `INPUT_PATH` is loaded on first use.

    A snapshot that cannot be read or parsed aborts the request with 503.
    """
    universe = app.config.get("UNIVERSE")
    if universe is None and app.config.get("INPUT_PATH"):
        try:
            universe, _ = load_universe(app.config["INPUT_PATH"])
        except (OSError, SchemaError) as e:
            log.error("Cannot load snapshot %s: %s", app.config["INPUT_PATH"], e)
            abort(json_error(503, {"universe": "The snapshot could not be loaded."}))
        app.config["UNIVERSE"] = universe
    return universe


def _json(payload) -> Response:
    return Response(render.to_json(payload), mimetype="application/json")


def _unloaded() -> Response:
    return json_error(503, {"universe": "No snapshot has been loaded."})


@bp.route("/")
def index():
    universe = get_universe()
    scheme = app.config.get("TIER_SCHEME") or Investopedia
    return _json(
        {
            "as_of": None if universe is None else universe.as_of,
            "stocks": 0 if universe is None else len(universe),
            "tiers": [tier.slug for tier in MarketCapTier],
            "groups": [group.value for group in GroupBy],
            "scheme": json.loads(scheme.json()),
        }
    )


@bp.route("/value/<ticker>.json")
def value(ticker):
    universe = get_universe()
    if universe is None:
        return _unloaded()
    snapshot = universe.get(ticker.upper())
    if snapshot is None:
        return json_error(404, {"ticker": f"Unknown ticker {ticker}."})
    try:
        report = appraise(snapshot, GrahamConstants.from_config(app.config))
    except ValuationUnavailable as e:
        return json_error(422, *e.args)
    return _json(report.info())


@bp.route("/screen/<tier>.json")
def screen(tier):
    universe = get_universe()
    if universe is None:
        return _unloaded()
    constants = GrahamConstants.from_config(app.config)
    scheme = app.config.get("TIER_SCHEME")
    try:
        top_n = int(request.values.get("top", app.config.get("TOP_N", 10)))
        if tier.lower() == "all":
            results = screen_all_tiers(universe, constants, top_n, scheme)
        else:
            results = [screen_tier(universe, tier, constants, top_n, scheme)]
    except InvalidInput as e:
        return json_error(400, *e.args)
    except ValueError:
        return json_error(400, {"top": "Number of rows is not an integer."})
    for result in results:
        metrics.record_screen(result)
    return Response(render.screen_json(results), mimetype="application/json")


@bp.route("/summary/<group>.json")
def summary(group):
    universe = get_universe()
    if universe is None:
        return _unloaded()
    errors = []
    try:
        group_by = GroupBy.parse(group)
        rows = summarize(universe, group_by, GrahamConstants.from_config(app.config), errors)
    except InvalidInput as e:
        return json_error(400, *e.args)
    return _json(
        {
            "group": group_by.value,
            "rows": [row.info() for row in rows],
            "degenerate": [e.group_name for e in errors],
        }
    )
