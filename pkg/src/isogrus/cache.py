"""Optional on-disk cache for normalized products.

The cache lives under ISOGRUS_CACHE_DIR, one JSON file per normalized
word, addressed by a hash of the format version, rank and word key.
Results must be byte-identical with the cache enabled or disabled;
any format change bumps the version and orphans old entries.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .algebra import AlgebraElement, BasisTriple, element_of
from .combinatorics import Weight
from .gaussian import GaussInt

CACHE_VERSION = 1
ENV_VAR = "ISOGRUS_CACHE_DIR"


def cache_dir() -> Path | None:
    val = os.environ.get(ENV_VAR)
    return Path(val) if val else None


def word_key(n: int, word_text: str) -> str:
    payload = f"isogrus:{CACHE_VERSION}:{n}:{word_text}"
    return hashlib.sha256(payload.encode()).hexdigest()


def _path(key: str) -> Path | None:
    base = cache_dir()
    if base is None:
        return None
    return base / f"{key}.json"


def load(key: str) -> AlgebraElement | None:
    path = _path(key)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("version") != CACHE_VERSION:
        return None
    out = AlgebraElement()
    for term in data["terms"]:
        t = BasisTriple(Weight(term["lambda"]), Weight(term["mu"]), Weight(term["nu"]))
        out = out + element_of(t, GaussInt(term["re"], term["im"]))
    return out


def store(key: str, value: AlgebraElement) -> None:
    path = _path(key)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    data = {"version": CACHE_VERSION, "key": key, **value.to_json()}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data, sort_keys=True, indent=1))
    tmp.replace(path)
