"""
Versioned on-disk store of admissible sets (unions of Bruhat lower
intervals) and reduced words, one JSON file per group.

The location is $WORKBENCH_CACHE_DIR, else ~/.cache/workbench. Files are
replaced atomically (write to a temporary file in the same directory, then
rename), so concurrent readers see either the old or the new file.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .affine_weyl import AffineWeylGroup, ExtAffineElement
from .root_datum import Cocharacter

__all__ = ["CACHE_VERSION", "cache_dir", "CacheFile"]

CACHE_VERSION = 1


def cache_dir() -> Path:
    env = os.environ.get("WORKBENCH_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "workbench"


def _key(mu) -> str:
    return ",".join(map(str, mu))


class CacheFile:
    """
    Cache for one group. `admissible_set` is a drop-in replacement for
    AffineWeylGroup.admissible_set; results are identical on hits and misses.
    """

    def __init__(self, group: AffineWeylGroup, directory: Path | str | None = None):
        self.group = group
        self.path = Path(directory or cache_dir()) / f"{group.datum.name}.v{CACHE_VERSION}.json"
        self.hits = 0
        self.misses = 0
        self._dirty = False
        self._data = self._load()

    def _empty(self) -> dict:
        return {
            "version": CACHE_VERSION,
            "group": self.group.datum.name,
            "datum": self.group.datum.to_json(),
            "admissible": {},
            "reduced_words": {},
        }

    def _load(self) -> dict:
        try:
            data = json.loads(self.path.read_text())
        except (OSError, ValueError):
            return self._empty()
        if (data.get("version") != CACHE_VERSION
                or data.get("datum") != self.group.datum.to_json()):
            return self._empty()
        return data

    def admissible_set(self, mu: Cocharacter) -> frozenset[ExtAffineElement]:
        key = _key(mu)
        stored = self._data["admissible"].get(key)
        if stored is not None:
            self.hits += 1
            return frozenset(ExtAffineElement.from_json(w) for w in stored)
        self.misses += 1
        adm = self.group.admissible_set(mu)
        self._data["admissible"][key] = sorted(
            (w.to_json() for w in adm), key=lambda j: (j["t"], j["w"])
        )
        self._dirty = True
        return adm

    def reduced_word(self, x: ExtAffineElement) -> tuple[ExtAffineElement, tuple[int, ...]]:
        key = json.dumps(x.to_json(), sort_keys=True)
        stored = self._data["reduced_words"].get(key)
        if stored is not None:
            self.hits += 1
            return ExtAffineElement.from_json(stored["omega"]), tuple(stored["word"])
        self.misses += 1
        omega, word = self.group.reduced_word(x)
        self._data["reduced_words"][key] = {"omega": omega.to_json(), "word": list(word)}
        self._dirty = True
        return omega, word

    def save(self) -> None:
        if not self._dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=self.path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(self._data, fh, sort_keys=True)
            os.replace(tmp, self.path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        self._dirty = False
