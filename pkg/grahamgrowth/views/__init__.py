import json

from flask import Response

from grahamgrowth import app


def json_error(status: int, *args) -> Response:
    return Response(
        json.dumps(args, indent=4 if app.debug else None),
        mimetype="application/json",
        status=status,
    )


@app.errorhandler(400)
def bad_request(_):
    return json_error(400, {"e": "API request failed."})


@app.errorhandler(404)
def not_found(_):
    return json_error(404, {"e": "The requested URL was not found on the server."})


@app.errorhandler(405)
def method_not_allowed(_):
    return json_error(405, {"e": "The API is read-only."})
