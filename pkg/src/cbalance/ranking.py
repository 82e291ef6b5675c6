"""Benchmark rankings and Kendall rank correlation for group standings.

A ranking is a tuple of team keys, best first. Rankings never contain ties.
"""

import logging
from itertools import combinations

from cbalance.errors import DomainError

log = logging.getLogger(__name__)


def _positions(benchmark, final):
    benchmark, final = tuple(benchmark), tuple(final)
    if len(set(benchmark)) != len(benchmark) or len(set(final)) != len(final):
        raise DomainError("rankings must not contain duplicates")
    if set(benchmark) != set(final):
        raise DomainError(f"rankings cover different teams: {sorted(benchmark)} vs {sorted(final)}")
    if len(final) < 2:
        raise DomainError("rankings need at least two teams")
    return {team: i for i, team in enumerate(benchmark)}, final


def pair_verdicts(benchmark, final):
    """Yield ``(team_a, team_b, concordant, top_two)`` for every pair.

    Pairs are taken in final-ranking order (``team_a`` finished ahead of
    ``team_b``). ``top_two`` marks the pair that finished first and second.
    """
    bench_pos, final = _positions(benchmark, final)
    for i, j in combinations(range(len(final)), 2):
        a, b = final[i], final[j]
        yield a, b, bench_pos[a] < bench_pos[b], (i, j) == (0, 1)


def kendall_tau(benchmark, final) -> float:
    """Kendall's tau between two tie-free rankings of the same teams.

    >>> kendall_tau(["a", "b", "c", "d"], ["b", "a", "c", "d"])
    0.6666666666666666
    """
    c = d = 0
    for _, _, concordant, _ in pair_verdicts(benchmark, final):
        if concordant:
            c += 1
        else:
            d += 1
    return (c - d) / (c + d)


def kendall_tau_top2_exempt(benchmark, final) -> float:
    """Kendall's tau ignoring the pair that finished first and second.

    Winner and runner-up both qualify, so their relative order carries no
    consequence; the pair is dropped whatever the benchmark says about it.
    """
    c = d = 0
    for _, _, concordant, top_two in pair_verdicts(benchmark, final):
        if top_two:
            continue
        if concordant:
            c += 1
        else:
            d += 1
    if c + d == 0:
        raise DomainError("top-two exemption leaves no pairs; need at least three teams")
    return (c - d) / (c + d)


def elo_order(teams):
    """Teams sorted strongest first: rounded Elo, then raw Elo, then key.

    Falling through to the key logs a warning; it means two raw ratings are
    identical and the order is arbitrary.
    """
    teams = list(teams)
    missing = [t.name for t in teams if t.elo_raw is None]
    if missing:
        raise DomainError(f"missing Elo rating for {', '.join(missing)}")
    ordered = sorted(teams, key=lambda t: (-t.elo, -t.elo_raw, t.key))
    for prev, cur in zip(ordered, ordered[1:]):
        if prev.elo_raw == cur.elo_raw:
            log.warning("identical raw Elo %s for %s and %s; ordering by name", cur.elo_raw, prev.key, cur.key)
    return ordered


def elo_benchmark_ranking(group) -> tuple[str, ...]:
    return tuple(t.key for t in elo_order(group.teams))


def pot_benchmark_ranking(group) -> tuple[str, ...]:
    pots = [t.pot for t in group.teams]
    if len(set(pots)) != len(pots):
        raise DomainError(f"group {group.label}: repeated pot in {pots}")
    if sorted(pots) != list(range(1, len(pots) + 1)):
        raise DomainError(f"group {group.label}: pots {pots} are not 1..{len(pots)}")
    return tuple(t.key for t in sorted(group.teams, key=lambda t: t.pot))
