from dataclasses import dataclass, fields
from decimal import Decimal
from typing import Any, Dict, List, Mapping

from grahamgrowth.model.snapshot import Percent, to_decimal


@dataclass(frozen=True)
class GrahamConstants:
    """
    The parameters of Graham's growth formula and of the screens built on it.

    Intrinsic value is `(base_pe + growth_multiplier * G) * E`. Graham
    chose 8.5 as the fair P/E of a company without growth and 2 as the
    P/E points added per percentage point of growth. The defaults
    reproduce that and the screening thresholds the weekly screens use.
    """

    base_pe: Decimal = Decimal("8.5")
    growth_multiplier: Decimal = Decimal("2.0")
    buy_growth_threshold: Percent = Percent(Decimal("15"))
    horizon_years: int = 5
    summary_min_analysts: int = 10

    def __post_init__(self):
        errors: List[Dict[str, str]] = []

        for name in ("base_pe", "growth_multiplier", "buy_growth_threshold"):
            try:
                object.__setattr__(self, name, to_decimal(getattr(self, name)))
            except ValueError:
                errors.append({name: f"{name} is not a finite number."})

        if isinstance(self.base_pe, Decimal) and self.base_pe <= 0:
            errors.append({"base_pe": "Base P/E is not positive."})

        if isinstance(self.growth_multiplier, Decimal) and self.growth_multiplier <= 0:
            errors.append({"growth_multiplier": "Growth multiplier is not positive."})

        if not isinstance(self.horizon_years, int) or self.horizon_years < 1:
            errors.append({"horizon_years": "Horizon is not a positive number of years."})

        if not isinstance(self.summary_min_analysts, int) or self.summary_min_analysts < 0:
            errors.append({"summary_min_analysts": "Analyst minimum is negative."})

        if errors:
            raise ValueError(*errors)

    @classmethod
    def from_config(cls, config: Mapping[str, Any], **overrides: Any) -> "GrahamConstants":
        """
        Build constants from an app config, e.g. `app.config`.

        Keys are the upper-case field names (`BASE_PE`, `HORIZON_YEARS`,
        ...). Keyword overrides that are not None take precedence over
        the config.

        :raises ValueError: If the result violates an invariant.
        """
        values = {}
        for f in fields(cls):
            value = overrides.get(f.name)
            if value is None:
                value = config.get(f.name.upper())
            if value is not None:
                values[f.name] = value
        return cls(**values)
