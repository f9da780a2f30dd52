import pytest

from grahamgrowth import app


@pytest.fixture(scope="function", autouse=True)
def app_ctx():
    with app.app_context():
        yield


@pytest.fixture(scope="function", autouse=True)
def config(request):
    saved = dict(app.config)

    def fin():
        app.config.clear()
        app.config.update(saved)

    request.addfinalizer(fin)
    return app.config
