"""Content-addressed on-disk cache of serialized expansions.

Each entry stores its payload next to a sha256 checksum and the format
version.  A mismatch is reported with a warning and the entry is rebuilt.
Writes are serialized with a file lock and replaced atomically.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable

from filelock import FileLock

from .errors import CacheCorrupt
from .serialize import FORMAT_VERSION, from_json, to_json

log = logging.getLogger(__name__)


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


class FileCache:
    def __init__(self, directory: str | os.PathLike):
        self.dir = Path(directory)
        self.dir.mkdir(parents=True, exist_ok=True)

    def path_for(self, name: str, order: int) -> Path:
        key = _digest(json.dumps([name, order, FORMAT_VERSION]))
        return self.dir / f"{key}.json"

    def read(self, name: str, order: int):
        """Cached object, or None if absent.  Raises CacheCorrupt on a bad entry."""
        path = self.path_for(name, order)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            text = json.dumps(payload, sort_keys=True)
            if entry.get("format_version") != FORMAT_VERSION:
                raise CacheCorrupt(f"{path.name}: format version {entry.get('format_version')}")
            if entry.get("checksum") != _digest(text):
                raise CacheCorrupt(f"{path.name}: checksum mismatch")
            return from_json(payload)
        except CacheCorrupt:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheCorrupt(f"{path.name}: unreadable ({exc})") from exc

    def write(self, name: str, order: int, obj) -> Path:
        path = self.path_for(name, order)
        payload = to_json(obj)
        text = json.dumps(payload, sort_keys=True)
        entry = {"format_version": FORMAT_VERSION, "name": name, "order": order,
                 "checksum": _digest(text), "payload": payload}
        with FileLock(str(path) + ".lock"):
            fd, tmp = tempfile.mkstemp(dir=self.dir, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh)
            os.replace(tmp, path)
        return path

    def get_or_build(self, name: str, order: int, build: Callable[[], object]):
        try:
            hit = self.read(name, order)
        except CacheCorrupt as exc:
            log.warning("discarding cache entry: %s", exc)
            hit = None
        if hit is None:
            hit = build()
            self.write(name, order, hit)
        return hit
