import os
import shutil
from pathlib import Path

import pytest

from cbalance.models import GroupRecord

FIXTURES = Path(__file__).parent / "fixtures"
SNAPSHOT_2023 = FIXTURES / "snapshots" / "2023-09-01.csv"
SEASON_2023 = Path(__file__).parents[1] / "src" / "cbalance" / "data" / "seasons" / "2023.json"


def make_group(rows, label="X"):
    """rows: (name, pot, elo_raw, final_rank)"""
    return GroupRecord.from_rows(label, rows)


@pytest.fixture
def group_c():
    # 2023/24 Group C with the published (integer) 1 September ratings.
    return make_group(
        [
            ("Napoli", 1, 1911, 2),
            ("Real Madrid", 2, 1917, 1),
            ("Braga", 3, 1677, 3),
            ("Union Berlin", 4, 1757, 4),
        ],
        label="C",
    )


@pytest.fixture
def cache_dir(tmp_path):
    """A cache directory pre-populated with the synthetic 2023-09-01 snapshot."""
    d = tmp_path / "cache"
    d.mkdir()
    shutil.copy(SNAPSHOT_2023, d / SNAPSHOT_2023.name)
    return d


@pytest.fixture(autouse=True)
def _no_user_env(monkeypatch):
    for var in ("CBALANCE_CACHE_DIR", "CBALANCE_ALIASES", "CBALANCE_OFFLINE"):
        monkeypatch.delenv(var, raising=False)


def real_cache():
    d = os.environ.get("CBALANCE_REAL_CACHE")
    return Path(d) if d else None


# Acceptance verdicts, one line per criterion, printed after the run.
ACCEPTANCE_LOG = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LOG:
        terminalreporter.write_line(line)
