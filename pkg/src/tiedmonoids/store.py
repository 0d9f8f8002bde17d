"""Content-addressed cache of enumerated monoid tables.

Keys combine the family id, the strand count, a fingerprint of the
generator set and the serialization format version, so redefining a
family can never alias an old entry.  Entries checksum their payload;
a failed checksum or a version mismatch reads as a miss.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from dataclasses import dataclass
from pathlib import Path

from .diagrams import Diagram, MonoidTable
from .errors import DomainError
from .ramified import Ramified

FORMAT_VERSION = 1
CACHE_ENV = "TIEDMONOIDS_CACHE"


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "tiedmonoids"


@dataclass(frozen=True)
class CacheKey:
    family: str
    n: int
    gens_fingerprint: str
    version: int = FORMAT_VERSION

    def digest(self) -> str:
        blob = json.dumps(
            [self.family, self.n, self.gens_fingerprint, self.version],
            separators=(",", ":"),
        )
        return hashlib.sha256(blob.encode()).hexdigest()


def generators_fingerprint(gens) -> str:
    """Fingerprint of a labeled generator list (order matters: it fixes
    the discovery order of the closure)."""
    blob = json.dumps(
        [[label, element.to_text()] for label, element in gens],
        separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode()).hexdigest()


def _carrier_of(element) -> str:
    if isinstance(element, Ramified):
        return "ramified"
    if isinstance(element, Diagram):
        return "diagram"
    raise DomainError(f"cannot serialize elements of type {type(element).__name__}")


def table_to_payload(table: MonoidTable, n: int) -> dict:
    return {
        "carrier": _carrier_of(table.elements[0]),
        "n": n,
        "labels": list(table.labels),
        "elements": [e.to_text() for e in table.elements],
        "edges": [list(row) for row in table.edges],
    }


def table_from_payload(payload: dict) -> MonoidTable:
    n = int(payload["n"])
    if payload["carrier"] == "ramified":
        elements = [Ramified.from_text(t, n) for t in payload["elements"]]
    elif payload["carrier"] == "diagram":
        elements = [Diagram.from_text(t, n) for t in payload["elements"]]
    else:
        raise DomainError(f"unknown carrier {payload['carrier']!r}")
    return MonoidTable(payload["labels"], elements, payload["edges"])


def _payload_bytes(payload: dict) -> bytes:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def store_put(key: CacheKey, table: MonoidTable, n: int) -> Path:
    """Atomically write a table under its key; concurrent readers see
    either the old or the new complete entry."""
    directory = cache_dir()
    directory.mkdir(parents=True, exist_ok=True)
    payload = table_to_payload(table, n)
    raw = _payload_bytes(payload)
    entry = {
        "version": key.version,
        "key": {
            "family": key.family,
            "n": key.n,
            "gens_fingerprint": key.gens_fingerprint,
        },
        "checksum": hashlib.sha256(raw).hexdigest(),
        "payload": payload,
    }
    target = directory / f"{key.digest()}.json"
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            json.dump(entry, handle, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return target


def store_get(key: CacheKey) -> MonoidTable | None:
    """Look a table up; corrupt or mismatched entries count as absent
    (with a warning for corruption, so silent bit rot is visible)."""
    target = cache_dir() / f"{key.digest()}.json"
    if not target.exists():
        return None
    try:
        with open(target) as handle:
            entry = json.load(handle)
        if entry.get("version") != key.version:
            return None
        raw = _payload_bytes(entry["payload"])
        if hashlib.sha256(raw).hexdigest() != entry.get("checksum"):
            raise ValueError("checksum mismatch")
        return table_from_payload(entry["payload"])
    except (OSError, ValueError, KeyError, TypeError, DomainError) as exc:
        warnings.warn(f"discarding corrupt cache entry {target.name}: {exc}")
        return None
