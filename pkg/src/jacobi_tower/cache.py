"""On-disk cache of computed expansions.

The root directory comes from ``JACOBI_TOWER_CACHE`` (default
``~/.cache/jacobi-tower``).  One JSON file per key holds the serialized
expansion and its SHA-256 digest; a digest or version mismatch counts as a
miss and the entry is recomputed.
"""

import hashlib
import json
import os
import tempfile
import threading
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .serialize import from_json_obj, to_json_obj

__all__ = ["CacheEntry", "ExpansionCache", "cache_root"]

ENV_VAR = "JACOBI_TOWER_CACHE"


def cache_root():
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path.home() / ".cache" / "jacobi-tower"


def _digest(payload_text):
    return hashlib.sha256(payload_text.encode()).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    name: str
    n: int
    trunc: str
    version: str = __version__

    @property
    def key(self):
        return f"{self.name}-n{self.n}-t{self.trunc.replace('/', '_')}-v{self.version}"


class ExpansionCache:
    def __init__(self, root=None):
        self.root = Path(root) if root is not None else cache_root()
        self._locks = {}
        self._guard = threading.Lock()

    def _lock(self, key):
        with self._guard:
            return self._locks.setdefault(key, threading.Lock())

    def path(self, entry):
        return self.root / f"{entry.key}.json"

    def load(self, entry):
        """The cached expansion, or None on a miss or a corrupt entry."""
        p = self.path(entry)
        with self._lock(entry.key):
            try:
                doc = json.loads(p.read_text())
            except (OSError, ValueError):
                return None
        if doc.get("version") != entry.version or doc.get("key") != entry.key:
            return None
        payload = doc.get("payload")
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        if _digest(text) != doc.get("digest"):
            return None
        return from_json_obj(payload)

    def store(self, entry, expansion):
        payload = to_json_obj(expansion)
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        doc = {"key": entry.key, "version": entry.version, "digest": _digest(text), "payload": payload}
        self.root.mkdir(parents=True, exist_ok=True)
        with self._lock(entry.key):
            fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
            try:
                with os.fdopen(fd, "w") as fh:
                    json.dump(doc, fh, separators=(",", ":"))
                os.replace(tmp, self.path(entry))
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
        return self.path(entry)

    def get_or_compute(self, entry, compute):
        hit = self.load(entry)
        if hit is not None:
            return hit, True
        value = compute()
        self.store(entry, value)
        return value, False

    def entries(self):
        if not self.root.exists():
            return []
        return sorted(p for p in self.root.glob("*.json") if not p.name.startswith(".tmp-"))

    def clear(self):
        removed = 0
        for p in self.entries():
            p.unlink()
            removed += 1
        return removed
