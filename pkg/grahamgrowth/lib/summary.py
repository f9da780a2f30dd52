import logging
from collections import defaultdict
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from grahamgrowth.lib.valuation import appraise
from grahamgrowth.model.constants import GrahamConstants
from grahamgrowth.model.errors import DegenerateGroup, InvalidInput, ValuationUnavailable
from grahamgrowth.model.snapshot import Percent, StockSnapshot, Universe

ALL_SECTORS = "All Sectors"

log = logging.getLogger(__name__)


class GroupBy(str, Enum):
    SECTOR = "sector"
    INDUSTRY = "industry"
    ALL = "all"

    @classmethod
    def parse(cls, value: Union[str, "GroupBy"]) -> "GroupBy":
        try:
            return cls(str(value).strip().lower()) if not isinstance(value, cls) else value
        except ValueError:
            raise InvalidInput({"group_by": f"Unknown grouping {value!r}."})


@dataclass(frozen=True)
class SummaryRow:
    group_name: str
    weighted_5y_est: Percent
    weighted_past_5y: Percent
    count: int

    def info(self) -> Dict[str, Any]:
        return {
            "group": self.group_name,
            "w5y": self.weighted_5y_est,
            "wp5": self.weighted_past_5y,
            "count": self.count,
        }


def weighted_average(pairs: Iterable[Tuple[Decimal, Decimal]]) -> Decimal:
    """
    Get the average of (weight, value) pairs weighted by their weights.

    :raises ZeroDivisionError: If the weights sum up to zero.
    """
    total_weight = Decimal(0)
    total = Decimal(0)
    for weight, value in pairs:
        total_weight += weight
        total += weight * value
    if total_weight == 0:
        raise ZeroDivisionError("Weights sum up to zero.")
    return total / total_weight


def _group_name(snapshot: StockSnapshot, group_by: GroupBy) -> str:
    if group_by is GroupBy.SECTOR:
        return snapshot.sector
    if group_by is GroupBy.INDUSTRY:
        return snapshot.industry
    return ALL_SECTORS


def summarize(
    universe: Universe,
    group_by: Union[GroupBy, str] = GroupBy.SECTOR,
    constants: GrahamConstants = GrahamConstants(),
    errors: Optional[List[DegenerateGroup]] = None,
) -> List[SummaryRow]:
    """
    Summarize growth per sector, per industry or over all stocks.

    Only stocks covered by at least `summary_min_analysts` analysts and
    with an implied 5-year return enter the summary. Within a group, the
    implied annualized 5-year return and the past 5-year growth are
    averaged weighted by market cap, so that big and typically more
    conservatively estimated companies dominate the average.

    Rows are ordered by the number of stocks, largest groups first, and
    then by name.

    A group whose stocks all have zero market cap has no weighted average.
    It is left out of the rows and, if `errors` is given, a
    `DegenerateGroup` for it is appended there.
    """
    group_by = GroupBy.parse(group_by)
    groups: Dict[str, List[Tuple[Decimal, Decimal, Decimal]]] = defaultdict(list)

    for snapshot in universe:
        if snapshot.analyst_count < constants.summary_min_analysts:
            continue
        try:
            ret_5y = appraise(snapshot, constants).implied_return_5y_annualized
        except ValuationUnavailable:
            continue
        if ret_5y is None:
            continue
        groups[_group_name(snapshot, group_by)].append(
            (snapshot.market_cap_usd, ret_5y, snapshot.past_growth_5y)
        )

    rows = []
    for name, members in groups.items():
        try:
            w5y = weighted_average((cap, ret) for cap, ret, _ in members)
            wp5 = weighted_average((cap, past) for cap, _, past in members)
        except ZeroDivisionError:
            log.warning("Skipping %s: all %d stocks have zero market cap", name, len(members))
            if errors is not None:
                errors.append(DegenerateGroup(name))
            continue
        rows.append(SummaryRow(name, Percent(w5y), Percent(wp5), len(members)))

    return sorted(rows, key=lambda row: (-row.count, row.group_name))
