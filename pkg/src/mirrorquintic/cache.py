"""On-disk cache for exact q-expansions.

Files are JSON with a sha256 over the canonical payload; a file whose
checksum does not match is ignored and rewritten.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .ramanujan import SeriesVector, expand
from .series import TruncSeries

CACHE_ENV = "MIRRORQUINTIC_CACHE"
FORMAT_VERSION = 1


def cache_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    d = explicit or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _path(d: Path, N: int) -> Path:
    return d / f"expand-v{FORMAT_VERSION}-{N}.json"


def _load(path: Path) -> SeriesVector | None:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        if doc.get("sha256") != _digest(doc["payload"]):
            return None
        return SeriesVector(tuple(TruncSeries.from_dict(s) for s in doc["payload"]["h"]))
    except (OSError, ValueError, KeyError, TypeError):
        return None


def _store(path: Path, sv: SeriesVector) -> None:
    payload = {"kind": "expand", "order": sv.order, "h": [s.to_dict() for s in sv.h]}
    doc = {"payload": payload, "sha256": _digest(payload)}
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
    os.replace(tmp, path)


def cached_expand(N: int, directory: str | os.PathLike | None = None) -> SeriesVector:
    """expand(N), read from or written to the cache directory when one is set."""
    d = cache_dir(directory)
    if d is None:
        return expand(N)
    path = _path(d, N)
    if path.exists():
        sv = _load(path)
        if sv is not None and sv.order == N:
            return sv
    sv = expand(N)
    _store(path, sv)
    return sv
