# grahamgrowth example configuration file
#
# Copy this file to config.py in the working directory and edit it as needed.
# All settings are optional. Command line flags take precedence over the
# settings here.

# The snapshot file to load if neither --input nor GRAHAM_INPUT is given.
# Files ending in .json are read as JSON, files ending in .csv as CSV.
# INPUT_PATH = "data/snapshot-2020-03-15.json"

# The constants of Graham's formula: intrinsic value = (BASE_PE +
# GROWTH_MULTIPLIER * G) * EPS. The defaults are Graham's own.
# BASE_PE = 8.5
# GROWTH_MULTIPLIER = 2.0

# Minimum annualized 5-year return (in percent) of a buy. (default: 15)
# BUY_GROWTH_THRESHOLD = 15

# Number of years the earnings trend is extrapolated. (default: 5)
# HORIZON_YEARS = 5

# Minimum number of analysts covering a stock to enter the summary.
# (default: 10)
# SUMMARY_MIN_ANALYSTS = 10

# Number of buys and sells shown per market cap tier. (default: 10)
# TOP_N = 10

# The market cap tiers. The different schemes are defined in
# grahamgrowth/config/tiers.py and the setting here selects one of them. Any
# threshold or analyst minimum can be overridden by calling the override()
# method of a scheme.
# from grahamgrowth.config.tiers import *
# TIER_SCHEME = Investopedia
# Investopedia.override("min_analysts", {**Investopedia.min_analysts, "NANO": 1})

# Enable and configure the integrated Prometheus endpoint of the API server.
# To use Prometheus in a container, please set PROMETHEUS_ADDRESS to 0.0.0.0
# instead of 127.0.0.1 to make it accessible from outside the container.
# PROMETHEUS_ENABLED = True  # (default: False)
# PROMETHEUS_ADDRESS = "0.0.0.0"  # (default: 127.0.0.1)
# PROMETHEUS_PORT = 9567

# Show error messages in the web server log file instead of just "500".
# (default: False)
# PROPAGATE_EXCEPTIONS = True
