"""The six competitive balance indices per group, their seasonal means, and HHI/DCB baselines.

Ex ante indices (lower = more balanced expectations):

* ``cb1a`` sums, over all six pairs, the stronger side's win probability and
  rescales from [3, 6] to [0, 1].
* ``cb2a`` does the same for the three pairs among the three strongest teams,
  rescaled from [1.5, 3].

Ex post indices are Kendall correlations between a benchmark ranking and the
final ranking (higher = less surprise):

====== ========== ==========================
index  benchmark  winner/runner-up pair
====== ========== ==========================
cb1p   pots       counted
cb2p   pots       exempt
cb3p   Elo        counted
cb4p   Elo        exempt
====== ========== ==========================

Win probabilities use the rounded ratings; raw ratings only break ties.
"""

import math
from dataclasses import astuple, dataclass
from fractions import Fraction
from itertools import combinations

from cbalance.elo import win_probability
from cbalance.errors import DomainError
from cbalance.models import GROUPS_PER_SEASON
from cbalance.ranking import (
    elo_benchmark_ranking,
    elo_order,
    kendall_tau,
    kendall_tau_top2_exempt,
    pot_benchmark_ranking,
)

MEASURES = ("cb1a", "cb2a", "cb1p", "cb2p", "cb3p", "cb4p")
EX_ANTE = MEASURES[:2]
EX_POST = MEASURES[2:]

# HHI range for ex ante shares of any positive strength measure over 4 teams.
EX_ANTE_HHI_BOUNDS = (0.25, 1.0)
# Points shares in a 4-team double round robin with 3/1/0 scoring: minimum when
# all points are equal, maximum (18, 4, 4, 4) when one team wins every game and
# all other games are drawn.
POINTS_HHI_BOUNDS = (0.25, float(Fraction(31, 75)))


@dataclass(frozen=True)
class GroupIndices:
    cb1a: float
    cb2a: float
    cb1p: float
    cb2p: float
    cb3p: float
    cb4p: float

    def as_dict(self):
        return dict(zip(MEASURES, astuple(self)))


@dataclass(frozen=True)
class SeasonIndices:
    season: int
    cb1a: float
    cb2a: float
    cb1p: float
    cb2p: float
    cb3p: float
    cb4p: float

    def as_dict(self):
        return dict(zip(MEASURES, astuple(self)[1:]))


def _pair_sum(ratings):
    return sum(max(win_probability(a, b), win_probability(b, a)) for a, b in combinations(ratings, 2))


def ucb1a(group) -> float:
    """Sum of the favourite's win probability over all six pairs; in [3, 6]."""
    return _pair_sum([t.elo for t in elo_order(group.teams)])


def ucb2a(group) -> float:
    """Like :func:`ucb1a` but over the three strongest teams only; in [1.5, 3]."""
    return _pair_sum([t.elo for t in elo_order(group.teams)[:3]])


def cb1a(group) -> float:
    return ucb1a(group) / 3 - 1


def cb2a(group) -> float:
    return 2 * ucb2a(group) / 3 - 1


def ex_post_indices(group) -> tuple[float, float, float, float]:
    if group.final is None:
        raise DomainError(f"group {group.label}: no final ranking")
    pots = pot_benchmark_ranking(group)
    elo = elo_benchmark_ranking(group)
    return (
        kendall_tau(pots, group.final),
        kendall_tau_top2_exempt(pots, group.final),
        kendall_tau(elo, group.final),
        kendall_tau_top2_exempt(elo, group.final),
    )


def group_indices(group) -> GroupIndices:
    return GroupIndices(cb1a(group), cb2a(group), *ex_post_indices(group))


_SINGLE = {
    "cb1a": cb1a,
    "cb2a": cb2a,
    "cb1p": lambda g: ex_post_indices(g)[0],
    "cb2p": lambda g: ex_post_indices(g)[1],
    "cb3p": lambda g: ex_post_indices(g)[2],
    "cb4p": lambda g: ex_post_indices(g)[3],
}


def measure_function(measure):
    """Per-group function for a measure id such as ``"cb2a"``. Callables pass through."""
    if callable(measure):
        return measure
    try:
        return _SINGLE[measure.lower()]
    except (KeyError, AttributeError):
        raise DomainError(f"unknown measure {measure!r}; expected one of {', '.join(MEASURES)}") from None


def _groups_of(dataset):
    groups = getattr(dataset, "groups", dataset)
    groups = tuple(groups)
    if len(groups) != GROUPS_PER_SEASON:
        raise DomainError(f"seasonal mean needs {GROUPS_PER_SEASON} groups, got {len(groups)}")
    return groups


def season_mean(measure, dataset) -> float:
    """Mean of one measure over the eight groups of a season."""
    fn = measure_function(measure)
    groups = _groups_of(dataset)
    return math.fsum(fn(g) for g in groups) / len(groups)


def season_indices(dataset) -> SeasonIndices:
    per_group = [group_indices(g).as_dict() for g in _groups_of(dataset)]
    means = {m: math.fsum(row[m] for row in per_group) / len(per_group) for m in MEASURES}
    return SeasonIndices(dataset.season, **means)


def hhi(shares) -> float:
    """Herfindahl-Hirschman index of a share vector."""
    shares = [float(s) for s in shares]
    if not shares:
        raise DomainError("empty share vector")
    if any(not math.isfinite(s) or s < 0 for s in shares):
        raise DomainError(f"shares must be finite and nonnegative: {shares}")
    total = math.fsum(shares)
    if abs(total - 1.0) > 1e-9:
        raise DomainError(f"shares sum to {total!r}, not 1")
    return math.fsum(s * s for s in shares)


def dcb(hhi_value, hhi_min, hhi_max) -> float:
    """Distance to competitive balance: sqrt of the min-max normalized HHI."""
    if not hhi_min < hhi_max:
        raise DomainError(f"need hhi_min < hhi_max, got {hhi_min!r}, {hhi_max!r}")
    # Absorb float noise from share arithmetic at the bounds.
    eps = 1e-12
    if not hhi_min - eps <= hhi_value <= hhi_max + eps:
        raise DomainError(f"HHI {hhi_value!r} outside [{hhi_min!r}, {hhi_max!r}]")
    frac = (hhi_value - hhi_min) / (hhi_max - hhi_min)
    return math.sqrt(min(max(frac, 0.0), 1.0))
