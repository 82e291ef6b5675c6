"""Competitive balance indices for four-team round-robin groups.

Ex ante indices come from Elo win probabilities, ex post indices from Kendall
rank correlation between a benchmark ranking (pot allocation or Elo order) and
the final group ranking. Seasonal means can be trend-tested with OLS.
"""

from cbalance.elo import K_FACTOR, update, win_probability
from cbalance.errors import (
    CBError,
    DegenerateFitError,
    DomainError,
    FetchError,
    FormatError,
    RetryableFetchError,
    SchemaError,
)
from cbalance.indices import (
    GroupIndices,
    cb1a,
    cb2a,
    dcb,
    ex_post_indices,
    group_indices,
    hhi,
    season_mean,
    ucb1a,
    ucb2a,
)
from cbalance.models import GroupRecord, SeasonDataset, TeamEntry
from cbalance.ranking import (
    elo_benchmark_ranking,
    kendall_tau,
    kendall_tau_top2_exempt,
    pot_benchmark_ranking,
)
from cbalance.stats import TrendFit, fit_trend, student_t_sf

__version__ = "0.1.0"

__all__ = [
    "K_FACTOR",
    "CBError",
    "DegenerateFitError",
    "DomainError",
    "FetchError",
    "FormatError",
    "GroupIndices",
    "GroupRecord",
    "RetryableFetchError",
    "SchemaError",
    "SeasonDataset",
    "TeamEntry",
    "TrendFit",
    "cb1a",
    "cb2a",
    "dcb",
    "elo_benchmark_ranking",
    "ex_post_indices",
    "fit_trend",
    "group_indices",
    "hhi",
    "kendall_tau",
    "kendall_tau_top2_exempt",
    "pot_benchmark_ranking",
    "season_mean",
    "student_t_sf",
    "ucb1a",
    "ucb2a",
    "update",
    "win_probability",
]
