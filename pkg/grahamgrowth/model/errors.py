class InvalidInput(ValueError):
    """A numeric argument is outside the domain of an operation."""


class NotMeaningful(ValueError):
    """Graham's formula presumes positive earnings."""


class InsufficientData(ValueError):
    """Not enough distinct fiscal years to fit an earnings trend."""


class ValuationUnavailable(ValueError):
    """No horizon of a stock has positive earnings to value."""

    def __init__(self, ticker: str):
        super().__init__({"valuation": f"No valuation available for {ticker}."})
        self.ticker = ticker


class DegenerateGroup(ValueError):
    """All market caps in a nonempty summary group are zero."""

    def __init__(self, group_name: str):
        super().__init__({"summary": f"Group {group_name} has zero total market cap."})
        self.group_name = group_name


class SchemaError(ValueError):
    """A snapshot file is structurally malformed."""
