#!/usr/bin/env python3

# To be able to import modules in the project root directory, that directory
# has to be added to the module search path if it is not the working directory.
# If you are experiencing problems with modules not being found, please
# uncomment the following lines:

# import sys
# import os
# sys.path.insert(0, os.path.dirname(os.path.realpath(__file__)))

from grahamgrowth import app
from grahamgrowth.lib.metrics import monitor
from grahamgrowth.views.api import get_universe

application = app

# The snapshot is loaded once at startup so that all workers serve the same data.
universe = get_universe()

if app.config.get("PROMETHEUS_ENABLED", False):
    monitor(app, universe)
