"""On-disk memo of computed invariants, one JSON file per key."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .braid import BraidWord
from .scalar import ScalarValue


def cache_key(word: BraidWord, invariant: str, engine: str, version: str = __version__) -> str:
    payload = json.dumps([word.canonical(), invariant, engine, version], separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class ResultCache:
    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> ScalarValue | None:
        path = self._path(key)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        try:
            return ScalarValue.from_json(text)
        except (ValueError, KeyError):
            return None  # treat a damaged record as a miss

    def put(self, key: str, value: ScalarValue) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(value.to_json())
            os.replace(tmp, self._path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
