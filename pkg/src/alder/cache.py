"""On-disk memo for count tables.

A cache entry is one JSON file per table key holding the horizon and the
counts as decimal strings (counts overflow 64 bits well inside the scales
this tool targets, so no binary integer packing).  The cache is a pure
memo: a valid hit must reproduce exactly what a fresh build would give,
and anything malformed or mismatched is discarded and rebuilt rather
than trusted.  Writes go through a temp file and os.replace so readers
never observe a torn file.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path

CACHE_VERSION = 1

_SAFE = re.compile(r"[^A-Za-z0-9._-]+")


def _path(cache_dir: Path, key: str) -> Path:
    return cache_dir / (_SAFE.sub("_", key) + ".json")


def load(cache_dir: str | os.PathLike, key: str, horizon: int) -> list[int] | None:
    """Return cached values [0..h] with h >= horizon, or None on any defect."""
    path = _path(Path(cache_dir), key)
    try:
        with open(path, "r", encoding="ascii") as fh:
            data = json.load(fh)
        if data["v"] != CACHE_VERSION or data["key"] != key:
            return None
        values = [int(s) for s in data["values"]]
        if data["horizon"] != len(values) - 1 or data["horizon"] < horizon:
            return None
        if not values or values[0] != 1 or any(v < 0 for v in values):
            return None
        return values
    except (OSError, ValueError, KeyError, TypeError):
        return None


def store(cache_dir: str | os.PathLike, key: str, values: list[int]) -> None:
    """Write a table to the cache; failures are non-fatal (cache is advisory)."""
    cache_dir = Path(cache_dir)
    try:
        cache_dir.mkdir(parents=True, exist_ok=True)
        payload = {
            "v": CACHE_VERSION,
            "key": key,
            "horizon": len(values) - 1,
            "values": [str(v) for v in values],
        }
        fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                json.dump(payload, fh)
            os.replace(tmp, _path(cache_dir, key))
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
    except OSError:
        pass
