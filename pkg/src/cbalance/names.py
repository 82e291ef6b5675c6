"""Club-name normalization and the alias table used to join season files to snapshots."""

import json
import os
import re
import unicodedata
from importlib import resources
from pathlib import Path

ALIASES_ENV = "CBALANCE_ALIASES"

# Letters that NFKD leaves intact.
_FOLD = str.maketrans({"ø": "o", "æ": "ae", "œ": "oe", "đ": "d", "ł": "l", "ı": "i", "þ": "th", "ð": "d"})
_APOSTROPHES = re.compile(r"['’`]")
_NON_WORD = re.compile(r"[^0-9a-z]+")


def normalize_name(name: str) -> str:
    """Casefold, strip diacritics and punctuation, collapse whitespace.

    >>> normalize_name("Borussia Mönchengladbach")
    'borussia monchengladbach'
    >>> normalize_name("  Paris Saint-Germain ")
    'paris saint germain'
    """
    text = unicodedata.normalize("NFKD", name.casefold().translate(_FOLD))
    text = "".join(ch for ch in text if not unicodedata.combining(ch))
    text = text.translate(_FOLD)
    text = _APOSTROPHES.sub("", text)
    return _NON_WORD.sub(" ", text).strip()


def load_aliases(path=None) -> dict[str, str]:
    """Bundled alias table, overlaid with a user table from ``path`` or $CBALANCE_ALIASES.

    Keys and values are normalized on load, so either side may be written in
    display form.
    """
    raw = json.loads(resources.files("cbalance.data").joinpath("aliases.json").read_text("utf-8"))
    table = {normalize_name(k): normalize_name(v) for k, v in raw["aliases"].items()}
    path = path or os.environ.get(ALIASES_ENV)
    if path:
        extra = json.loads(Path(path).read_text("utf-8"))
        extra = extra.get("aliases", extra)
        table.update({normalize_name(k): normalize_name(v) for k, v in extra.items()})
    return table
