"""Value types shared across the package: teams, groups and season datasets."""

import math
from dataclasses import dataclass, field
from types import MappingProxyType

from cbalance.errors import DomainError
from cbalance.names import normalize_name

GROUP_SIZE = 4
GROUPS_PER_SEASON = 8


def round_rating(raw: float) -> int:
    """Nearest integer, halves away from zero.

    >>> round_rating(1766.5), round_rating(1911.2)
    (1767, 1911)
    """
    if not math.isfinite(raw):
        raise DomainError(f"rating must be finite, got {raw!r}")
    return int(math.copysign(math.floor(abs(raw) + 0.5), raw))


@dataclass(frozen=True)
class TeamEntry:
    name: str
    pot: int
    final_rank: int | None = None
    elo_raw: float | None = None
    key: str = ""

    def __post_init__(self):
        if not self.key:
            object.__setattr__(self, "key", normalize_name(self.name))
        if self.elo_raw is not None and not math.isfinite(self.elo_raw):
            raise DomainError(f"{self.name}: rating must be finite, got {self.elo_raw!r}")

    @property
    def elo(self) -> int | None:
        """Rating rounded to the nearest integer, the value the indices use."""
        return None if self.elo_raw is None else round_rating(self.elo_raw)

    def with_rating(self, raw: float) -> "TeamEntry":
        return TeamEntry(self.name, self.pot, self.final_rank, float(raw), self.key)


@dataclass(frozen=True)
class GroupRecord:
    """Four teams of one group. ``final`` is the final ranking as team keys, best first."""

    label: str
    teams: tuple[TeamEntry, ...]
    final: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "teams", tuple(self.teams))
        keys = [t.key for t in self.teams]
        if len(keys) != GROUP_SIZE:
            raise DomainError(f"group {self.label}: expected {GROUP_SIZE} teams, got {len(keys)}")
        if len(set(keys)) != len(keys):
            raise DomainError(f"group {self.label}: duplicate team {_first_duplicate(keys)!r}")
        if self.final is None and all(t.final_rank is not None for t in self.teams):
            ranks = sorted(t.final_rank for t in self.teams)
            if ranks != list(range(1, GROUP_SIZE + 1)):
                raise DomainError(f"group {self.label}: final ranks {ranks} are not a permutation of 1-4")
            final = tuple(t.key for t in sorted(self.teams, key=lambda t: t.final_rank))
            object.__setattr__(self, "final", final)
        elif self.final is not None:
            object.__setattr__(self, "final", tuple(self.final))
            if sorted(self.final) != sorted(keys):
                raise DomainError(f"group {self.label}: final ranking {self.final} does not match teams {keys}")

    @classmethod
    def from_rows(cls, label, rows):
        """Build from ``(name, pot, elo_raw, final_rank)`` tuples."""
        return cls(label, tuple(TeamEntry(name, pot, rank, elo) for name, pot, elo, rank in rows))

    def team(self, key: str) -> TeamEntry:
        for t in self.teams:
            if t.key == key:
                return t
        raise KeyError(key)


def _first_duplicate(items):
    seen = set()
    for x in items:
        if x in seen:
            return x
        seen.add(x)
    return None


@dataclass(frozen=True)
class SeasonDataset:
    """One season (labelled by its first calendar year) of exactly eight groups."""

    season: int
    groups: tuple[GroupRecord, ...]
    provenance: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))
        object.__setattr__(self, "provenance", MappingProxyType(dict(self.provenance)))
        if len(self.groups) != GROUPS_PER_SEASON:
            raise DomainError(
                f"season {self.season}: expected {GROUPS_PER_SEASON} groups, got {len(self.groups)}"
            )

    def group(self, label: str) -> GroupRecord:
        for g in self.groups:
            if g.label == label:
                return g
        raise KeyError(label)
