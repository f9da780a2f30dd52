import sys

from flask import Flask

from grahamgrowth.config.tiers import Investopedia

app = Flask(__name__)

app.config.update(
    INPUT_PATH=None,
    BASE_PE=8.5,
    GROWTH_MULTIPLIER=2.0,
    BUY_GROWTH_THRESHOLD=15,
    HORIZON_YEARS=5,
    SUMMARY_MIN_ANALYSTS=10,
    TOP_N=10,
    TIER_SCHEME=Investopedia,
    UNIVERSE=None,
)

if "pytest" not in sys.modules:
    try:
        import config

        app.config.from_object(config)
    except ImportError:
        pass
else:
    app.config["TESTING"] = True

from grahamgrowth.views.api import bp as bp_api  # noqa  # isort:skip

app.register_blueprint(bp_api)
