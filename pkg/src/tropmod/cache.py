"""On-disk cache of result records, one JSON file per record."""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .weights import as_weights, weight_key

CACHE_ENV = "TROPMOD_CACHE"


@dataclass
class ResultRecord:
    key: str
    command: str
    payload: dict
    engine_version: str
    seconds: float


def canonical_key(w, command: str, **params) -> str:
    ws = ",".join(f"{x.numerator}/{x.denominator}" for x in weight_key(as_weights(w)))
    extra = ";".join(f"{k}={params[k]}" for k in sorted(params))
    return f"{command}|{ws}|{extra}"


def default_cache_dir() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


class ResultCache:
    def __init__(self, root):
        self.root = Path(root)

    def _path(self, key: str) -> Path:
        return self.root / (hashlib.sha256(key.encode()).hexdigest()[:32] + ".json")

    def get(self, key: str) -> ResultRecord | None:
        path = self._path(key)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if data.get("key") != key or data.get("engine_version") != __version__:
            return None
        return ResultRecord(**data)

    def put(self, record: ResultRecord) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(record.key)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(asdict(record), fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
