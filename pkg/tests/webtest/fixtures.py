import pytest
from flask_webtest import TestApp

from grahamgrowth import app

from ..stocks import load_fixture

testapp = TestApp(app)


@pytest.fixture
def fresh_state():
    testapp.reset()
    app.config["UNIVERSE"] = None
    app.config["INPUT_PATH"] = None


@pytest.fixture
def with_universe(fresh_state):
    universe = load_fixture("mega_cap.json")
    app.config["UNIVERSE"] = universe
    return universe


@pytest.fixture
def with_summary_universe(fresh_state):
    universe = load_fixture("summary12.json")
    app.config["UNIVERSE"] = universe
    return universe
