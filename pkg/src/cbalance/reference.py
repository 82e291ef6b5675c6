"""Bundled seasonal series for 2003-2023, as plotted in the source study's trend figure.

Values are the per-season means of all six indices over the eight groups.
"""

import csv
import io
from functools import lru_cache
from importlib import resources

from cbalance.errors import DomainError
from cbalance.indices import MEASURES
from cbalance.stats import IndexSeries


@lru_cache(maxsize=None)
def _rows():
    text = resources.files("cbalance.data").joinpath("reference_series.csv").read_text("utf-8")
    return tuple(csv.DictReader(io.StringIO(text)))


def reference_series(measure: str) -> IndexSeries:
    measure = measure.lower()
    if measure not in MEASURES:
        raise DomainError(f"unknown measure {measure!r}; expected one of {', '.join(MEASURES)}")
    return IndexSeries(measure, tuple((int(r["season"]), float(r[measure])) for r in _rows()))


def all_reference_series() -> dict[str, IndexSeries]:
    return {m: reference_series(m) for m in MEASURES}


def bundled_season_file(season: int):
    """Path-like handle to a bundled season file, or None if that season is not shipped."""
    res = resources.files("cbalance.data").joinpath("seasons", f"{season}.json")
    return res if res.is_file() else None
