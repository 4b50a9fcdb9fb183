"""Content-addressed disk cache for computed payloads and graph families.

The cache directory comes from an explicit path or the HYPERMAP_CACHE
environment variable; with neither set, caching is disabled and every call
recomputes.  Entries are keyed by (family, parameters, code version), and
payload files embed a digest so that corruption is detected and silently
falls back to recomputation.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path
from typing import Callable, Optional

from . import __version__


def resolve_cache_dir(explicit: Optional[str]) -> Optional[Path]:
    path = explicit or os.environ.get("HYPERMAP_CACHE")
    if not path:
        return None
    p = Path(path)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _key(family: str, params: dict) -> str:
    raw = _canonical({"family": family, "params": params, "version": __version__})
    return hashlib.sha256(raw.encode()).hexdigest()[:24]


def memo_json(
    cache_dir: Optional[Path],
    family: str,
    params: dict,
    compute: Callable[[], dict],
) -> tuple:
    """Return (payload, hit).  Payload files carry their own digest; any
    mismatch or parse error triggers recomputation and a rewrite."""
    if cache_dir is None:
        return compute(), False
    path = cache_dir / f"{family}-{_key(family, params)}.json"
    if path.exists():
        try:
            wrapper = json.loads(path.read_text())
            body = _canonical(wrapper["payload"])
            if hashlib.sha256(body.encode()).hexdigest() == wrapper["digest"]:
                return wrapper["payload"], True
        except (KeyError, ValueError, OSError):
            pass  # corrupt entry: fall through to recompute
    payload = compute()
    body = _canonical(payload)
    wrapper = {
        "digest": hashlib.sha256(body.encode()).hexdigest(),
        "family": family,
        "params": params,
        "version": __version__,
        "payload": payload,
    }
    path.write_text(_canonical(wrapper) + "\n")
    return payload, False


def write_family_jsonl(cache_dir: Optional[Path], name: str, records: list) -> None:
    """Write a graph family as JSON-lines (one record per graph) plus a
    digest sidecar, e.g. gamma_ge3_g2.jsonl."""
    if cache_dir is None:
        return
    path = cache_dir / f"{name}.jsonl"
    text = "".join(_canonical(r) + "\n" for r in records)
    path.write_text(text)
    (cache_dir / f"{name}.jsonl.sha256").write_text(
        hashlib.sha256(text.encode()).hexdigest() + "\n"
    )


def read_family_jsonl(cache_dir: Optional[Path], name: str) -> Optional[list]:
    """Read a family file back, or None when absent or corrupt."""
    if cache_dir is None:
        return None
    path = cache_dir / f"{name}.jsonl"
    digest_path = cache_dir / f"{name}.jsonl.sha256"
    if not path.exists() or not digest_path.exists():
        return None
    try:
        text = path.read_text()
        if hashlib.sha256(text.encode()).hexdigest() != digest_path.read_text().strip():
            return None
        return [json.loads(line) for line in text.splitlines() if line]
    except (ValueError, OSError):
        return None
