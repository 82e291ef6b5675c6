"""Season files, Elo snapshots, and the join between them.

Snapshots are the CSV bodies served by the Football Club Elo Ratings API at
``/<YYYY-MM-DD>``. They are cached verbatim, one file per date, so a season
can be recomputed offline once its snapshot has been fetched.
"""

import csv
import datetime as dt
import difflib
import io
import json
import logging
import math
import os
import tempfile
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType

import requests

from cbalance.errors import (
    FetchError,
    FormatError,
    RetryableFetchError,
    SchemaError,
    UnresolvedClubError,
)
from cbalance.models import GROUP_SIZE, GROUPS_PER_SEASON, GroupRecord, SeasonDataset, TeamEntry, round_rating
from cbalance.names import load_aliases, normalize_name

__all__ = [
    "EloSnapshot",
    "SeasonFile",
    "SnapshotEntry",
    "TeamSpec",
    "GroupSpec",
    "default_cache_dir",
    "fetch_snapshot",
    "load_season",
    "parse_season_file",
    "parse_snapshot",
    "read_season_file",
    "round_rating",
    "serialize_season_file",
    "snapshot_date_for",
]

log = logging.getLogger(__name__)

API_BASE = "http://api.clubelo.com"
CACHE_ENV = "CBALANCE_CACHE_DIR"
OFFLINE_ENV = "CBALANCE_OFFLINE"
SNAPSHOT_COLUMNS = ("Rank", "Club", "Country", "Level", "Elo", "From", "To")
SEASON_FORMAT = "cbalance-season/1"

MAX_ATTEMPTS = 3
BACKOFF_START = 1.0
TIMEOUT = 30.0


# -- snapshots ---------------------------------------------------------------


@dataclass(frozen=True)
class SnapshotEntry:
    club: str
    country: str
    elo: float
    level: str = ""


@dataclass(frozen=True)
class EloSnapshot:
    as_of: dt.date | None
    entries: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __len__(self):
        return len(self.entries)

    def __contains__(self, key):
        return key in self.entries

    def rating(self, key: str) -> float:
        return self.entries[key].elo


def parse_snapshot(data, as_of=None) -> EloSnapshot:
    """Parse a ratings CSV body (bytes or str).

    ``as_of`` is the snapshot date; the CSV itself only carries per-row
    validity intervals, so it is left as ``None`` when not given.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    elif data.startswith("﻿"):
        data = data[1:]
    if isinstance(as_of, str):
        as_of = dt.date.fromisoformat(as_of)

    reader = csv.reader(io.StringIO(data))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise FormatError("empty snapshot: no header row", line=1) from None
    for col in SNAPSHOT_COLUMNS:
        if col not in header:
            raise FormatError(f"snapshot header is missing column {col!r}", column=col, line=1)
    idx = {col: header.index(col) for col in SNAPSHOT_COLUMNS}

    entries = {}
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) < len(header):
            raise FormatError(f"line {lineno}: expected {len(header)} fields, got {len(row)}", line=lineno)
        club = row[idx["Club"]].strip()
        try:
            elo = float(row[idx["Elo"]])
        except ValueError:
            raise FormatError(f"line {lineno}: unparsable Elo {row[idx['Elo']]!r} for {club}", line=lineno) from None
        if not math.isfinite(elo):
            raise FormatError(f"line {lineno}: non-finite Elo for {club}", line=lineno)
        key = normalize_name(club)
        if key in entries:
            raise FormatError(f"line {lineno}: club {club!r} collides with {entries[key].club!r}", line=lineno)
        entries[key] = SnapshotEntry(club, row[idx["Country"]].strip(), elo, row[idx["Level"]].strip())

    if not entries:
        log.warning("snapshot %s has a header but no rows", as_of or "<undated>")
    return EloSnapshot(as_of, entries)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "cbalance"


def _network_enabled():
    return os.environ.get(OFFLINE_ENV, "").strip().lower() not in ("1", "true", "yes")


_cache_lock = threading.Lock()


def _check_date(date):
    if isinstance(date, dt.date):
        return date
    try:
        return dt.date.fromisoformat(str(date))
    except ValueError:
        raise ValueError(f"snapshot date must be YYYY-MM-DD, got {date!r}") from None


def cache_path(date, cache_dir=None) -> Path:
    return Path(cache_dir or default_cache_dir()) / f"{_check_date(date).isoformat()}.csv"


def _download(url, session, attempts, backoff, sleep):
    get = session.get if session is not None else requests.get
    delay = backoff
    for attempt in range(1, attempts + 1):
        try:
            resp = get(url, timeout=TIMEOUT)
        except (requests.ConnectionError, requests.Timeout) as exc:
            if attempt == attempts:
                raise RetryableFetchError(f"GET {url} failed after {attempts} attempts: {exc}") from exc
            log.info("GET %s failed (%s); retrying in %.1fs", url, exc, delay)
            sleep(delay)
            delay *= 2
            continue
        if resp.status_code != 200:
            raise FetchError(f"GET {url} returned HTTP {resp.status_code}", status=resp.status_code)
        return resp.content
    raise AssertionError("unreachable")


def fetch_snapshot(
    date,
    cache_dir=None,
    *,
    base_url=API_BASE,
    network=None,
    session=None,
    attempts=MAX_ATTEMPTS,
    backoff=BACKOFF_START,
    sleep=time.sleep,
) -> EloSnapshot:
    """Snapshot for ``date``, from the cache if present, otherwise downloaded and cached.

    Transport failures are retried with exponential backoff (1 s, 2 s, ...);
    an HTTP error status is not retried. ``network=False`` (or
    $CBALANCE_OFFLINE=1) turns a cache miss into a :class:`FetchError`.
    """
    date = _check_date(date)
    path = cache_path(date, cache_dir)
    with _cache_lock:
        if path.exists():
            log.debug("cache hit %s", path)
            return parse_snapshot(path.read_bytes(), as_of=date)
        if network is None:
            network = _network_enabled()
        if not network:
            raise FetchError(f"snapshot {date} not in cache {path.parent} and network access is disabled")
        body = _download(f"{base_url.rstrip('/')}/{date.isoformat()}", session, attempts, backoff, sleep)
        # Parse before caching so a garbage body never lands in the cache.
        snapshot = parse_snapshot(body, as_of=date)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".part")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(body)
            os.replace(tmp, path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return snapshot


# -- season files --------------------------------------------------------------


@dataclass(frozen=True)
class TeamSpec:
    name: str
    normalized: str
    pot: int
    rank: int


@dataclass(frozen=True)
class GroupSpec:
    label: str
    teams: tuple[TeamSpec, ...]


@dataclass(frozen=True)
class SeasonFile:
    season: int
    groups: tuple[GroupSpec, ...]
    competition: str = ""
    snapshot_date: dt.date | None = None
    source: str = ""


def snapshot_date_for(season: int) -> dt.date:
    """Ratings are taken on 1 September of the season's first year."""
    return dt.date(season, 9, 1)


def _require(obj, key, kind, where, group=None):
    if key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}", group=group)
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise SchemaError(f"{where}: field {key!r} must be an integer, got {value!r}", group=group)
    if kind is str and not isinstance(value, str):
        raise SchemaError(f"{where}: field {key!r} must be a string, got {value!r}", group=group)
    if kind is list and not isinstance(value, list):
        raise SchemaError(f"{where}: field {key!r} must be a list", group=group)
    return value


def parse_season_file(text) -> SeasonFile:
    """Parse and validate a season file (JSON; see docs/season_file.md)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"season file is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("season file must be a JSON object")
    fmt = doc.get("format", SEASON_FORMAT)
    if fmt != SEASON_FORMAT:
        raise SchemaError(f"unsupported season file format {fmt!r}; expected {SEASON_FORMAT!r}")
    season = _require(doc, "season", int, "season file")
    snapshot_date = doc.get("snapshot_date")
    if snapshot_date is not None:
        try:
            snapshot_date = dt.date.fromisoformat(snapshot_date)
        except (TypeError, ValueError):
            raise SchemaError(f"snapshot_date must be YYYY-MM-DD, got {snapshot_date!r}") from None

    raw_groups = _require(doc, "groups", list, "season file")
    if len(raw_groups) != GROUPS_PER_SEASON:
        raise SchemaError(f"season {season}: expected {GROUPS_PER_SEASON} groups, got {len(raw_groups)}")
    groups, labels, seen_clubs = [], set(), {}
    for gi, g in enumerate(raw_groups):
        if not isinstance(g, dict):
            raise SchemaError(f"group #{gi + 1} must be an object")
        label = _require(g, "label", str, f"group #{gi + 1}")
        if label in labels:
            raise SchemaError(f"duplicate group label {label!r}", group=label)
        labels.add(label)
        raw_teams = _require(g, "teams", list, f"group {label}", label)
        if len(raw_teams) != GROUP_SIZE:
            raise SchemaError(f"group {label}: expected {GROUP_SIZE} teams, got {len(raw_teams)}", group=label)
        teams = []
        for ti, t in enumerate(raw_teams):
            where = f"group {label}, team #{ti + 1}"
            if not isinstance(t, dict):
                raise SchemaError(f"{where} must be an object", group=label)
            name = _require(t, "name", str, where, label)
            normalized = t.get("normalized") or normalize_name(name)
            if not isinstance(normalized, str) or normalized != normalize_name(normalized):
                raise SchemaError(f"{where}: 'normalized' must already be in normal form, got {normalized!r}", group=label)
            if normalized in seen_clubs:
                raise SchemaError(
                    f"group {label}: {name!r} already appears in group {seen_clubs[normalized]}", group=label
                )
            seen_clubs[normalized] = label
            teams.append(TeamSpec(name, normalized, _require(t, "pot", int, where, label), _require(t, "rank", int, where, label)))
        for attr in ("pot", "rank"):
            values = sorted(getattr(t, attr) for t in teams)
            if values != list(range(1, GROUP_SIZE + 1)):
                raise SchemaError(f"group {label}: {attr}s {values} are not a permutation of 1-4", group=label)
        groups.append(GroupSpec(label, tuple(teams)))
    return SeasonFile(
        season,
        tuple(groups),
        competition=doc.get("competition", ""),
        snapshot_date=snapshot_date,
        source=doc.get("source", ""),
    )


def serialize_season_file(sf: SeasonFile) -> str:
    """Canonical text form: 2-space indented JSON with one team object per line."""

    def dump(value):
        return json.dumps(value, ensure_ascii=False)

    lines = ["{", f'  "format": {dump(SEASON_FORMAT)},', f'  "season": {sf.season},']
    if sf.competition:
        lines.append(f'  "competition": {dump(sf.competition)},')
    if sf.source:
        lines.append(f'  "source": {dump(sf.source)},')
    if sf.snapshot_date is not None:
        lines.append(f'  "snapshot_date": {dump(sf.snapshot_date.isoformat())},')
    lines.append('  "groups": [')
    for gi, g in enumerate(sf.groups):
        lines.append(f'    {{"label": {dump(g.label)}, "teams": [')
        for ti, t in enumerate(g.teams):
            team = {"name": t.name, "normalized": t.normalized, "pot": t.pot, "rank": t.rank}
            lines.append(f"      {dump(team)}" + ("," if ti < len(g.teams) - 1 else ""))
        lines.append("    ]}" + ("," if gi < len(sf.groups) - 1 else ""))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def read_season_file(path) -> SeasonFile:
    return parse_season_file(Path(path).read_text("utf-8"))


def _resolve(team, snapshot, aliases, label):
    key = team.normalized
    if key in snapshot.entries:
        return snapshot.entries[key].elo
    key = aliases.get(key, key)
    if key in snapshot.entries:
        return snapshot.entries[key].elo
    candidates = list(snapshot.entries)
    suggestions = difflib.get_close_matches(key, candidates, n=3, cutoff=0.5)
    suggestions += [c for c in candidates if (key in c or c in key) and c not in suggestions][:3]
    hint = f"; nearest snapshot names: {', '.join(suggestions)}" if suggestions else ""
    raise UnresolvedClubError(
        f"group {label}: club {team.name!r} (key {key!r}) not found in snapshot {snapshot.as_of}{hint}",
        name=team.name,
        suggestions=suggestions,
        group=label,
    )


def build_dataset(sf: SeasonFile, snapshot: EloSnapshot, aliases=None, provenance=None) -> SeasonDataset:
    """Attach snapshot ratings to every team of a parsed season file."""
    aliases = load_aliases() if aliases is None else aliases
    groups = []
    for g in sf.groups:
        teams = tuple(
            TeamEntry(t.name, t.pot, t.rank, _resolve(t, snapshot, aliases, g.label), key=t.normalized) for t in g.teams
        )
        groups.append(GroupRecord(g.label, teams))
    meta = {"season": sf.season, "snapshot_date": snapshot.as_of.isoformat() if snapshot.as_of else None}
    meta.update(provenance or {})
    return SeasonDataset(sf.season, tuple(groups), meta)


def load_season(path, cache_dir=None, *, snapshot=None, aliases=None, **fetch_kwargs) -> SeasonDataset:
    """Load a season file and join it with its 1 September Elo snapshot.

    The snapshot comes from ``snapshot`` if given, else from the cache or the
    network via :func:`fetch_snapshot`. A ``snapshot_date`` in the file
    overrides the default date.
    """
    sf = read_season_file(path)
    date = sf.snapshot_date or snapshot_date_for(sf.season)
    if snapshot is None:
        snapshot = fetch_snapshot(date, cache_dir, **fetch_kwargs)
    prov = {"season_file": str(path), "snapshot_date": date.isoformat()}
    if sf.snapshot_date is not None:
        prov["snapshot_date_override"] = True
    return build_dataset(sf, snapshot, aliases, prov)
