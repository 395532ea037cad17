"""On-disk cache of counting sequences.

One JSON document per (class, method, order), named by a content hash of
the class spec so that a changed spec never reads a stale entry.  Big
integers are stored as decimal strings; writes go to a temporary file that
is renamed into place.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Callable, Sequence

ENV_VAR = "PERMGRID_CACHE"
FORMAT_VERSION = 1


def default_dir() -> Path | None:
    value = os.environ.get(ENV_VAR)
    return Path(value) if value else None


def cache_key(spec: str, method: str, order: int) -> str:
    payload = json.dumps(
        {"spec": spec, "method": method, "order": order, "v": FORMAT_VERSION}, sort_keys=True
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:24]


class SequenceCache:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def path(self, spec: str, method: str, order: int) -> Path:
        return self.directory / f"{cache_key(spec, method, order)}.json"

    def load(self, spec: str, method: str, order: int) -> list[int] | None:
        p = self.path(spec, method, order)
        try:
            doc = json.loads(p.read_text())
        except FileNotFoundError:
            return None
        except (OSError, json.JSONDecodeError):
            return None
        if (doc.get("spec"), doc.get("method"), doc.get("order")) != (spec, method, order):
            return None
        return [int(x) for x in doc["terms"]]

    def store(self, spec: str, method: str, order: int, terms: Sequence[int]) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        target = self.path(spec, method, order)
        doc = {
            "spec": spec,
            "method": method,
            "order": order,
            "version": FORMAT_VERSION,
            "terms": [str(int(t)) for t in terms],
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh, indent=1)
                fh.write("\n")
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise
        return target

    def get_or_compute(
        self, spec: str, method: str, order: int, compute: Callable[[], Sequence[int]]
    ) -> list[int]:
        cached = self.load(spec, method, order)
        if cached is not None:
            return cached
        terms = [int(t) for t in compute()]
        self.store(spec, method, order, terms)
        return terms
