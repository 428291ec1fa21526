"""Persistent cache of solved boards.

One JSON document maps ``kind:m:n`` keys (m <= n; boards are solved up to
transposition) to records ``{"T", "count_max", "counts", "version",
"timestamp"}``.  Writes are atomic (temp file + rename); a corrupt file is
reported on stderr and treated as empty; records from other cache versions
are ignored.
"""

from __future__ import annotations

import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

CACHE_VERSION = 1


def _key(kind: str, m: int, n: int) -> str:
    a, b = min(m, n), max(m, n)
    return f"{kind}:{a}:{b}"


@dataclass
class ResultCache:
    path: Optional[str] = None
    entries: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path: Optional[str]) -> "ResultCache":
        cache = cls(path=path)
        if path is None or not os.path.exists(path):
            return cache
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
        try:
            doc = json.loads(raw)
            if not isinstance(doc, dict) or not isinstance(doc.get("entries"), dict):
                raise ValueError("unexpected cache layout")
        except ValueError as exc:
            print(f"warning: ignoring corrupt cache {path}: {exc}", file=sys.stderr)
            return cache
        cache.entries = doc["entries"]
        return cache

    def save(self) -> None:
        if self.path is None:
            return
        doc = {"version": CACHE_VERSION, "entries": self.entries}
        directory = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(prefix=".no3line-cache-", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh, sort_keys=True, indent=1)
                fh.write("\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get(self, kind: str, m: int, n: int) -> Optional[dict]:
        rec = self.entries.get(_key(kind, m, n))
        if rec is None or rec.get("version") != CACHE_VERSION:
            return None
        return rec

    def put(self, kind: str, m: int, n: int, record: dict) -> None:
        record = dict(record)
        record["version"] = CACHE_VERSION
        record["timestamp"] = datetime.now(timezone.utc).isoformat()
        self.entries[_key(kind, m, n)] = record


def cache_get(cache: ResultCache, kind: str, m: int, n: int) -> Optional[dict]:
    return cache.get(kind, m, n)


def cache_put(cache: ResultCache, kind: str, m: int, n: int, record: dict) -> None:
    cache.put(kind, m, n, record)
