"""Golden fixtures shipped with the package (hand transcriptions).

Set ``BANDLAB_FIXTURES`` to read them from another directory.
"""
from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .cluster import Quiver
from .exact import LaurentPoly


def fixture_dir() -> Path:
    env = os.environ.get("BANDLAB_FIXTURES")
    if env:
        return Path(env)
    return Path(str(resources.files("bandlab") / "fixtures"))


def read_text(name: str) -> str:
    return (fixture_dir() / name).read_text()


def load_quiver(name: str) -> Quiver:
    return Quiver.from_text(read_text(name))


def load_exprs(name: str) -> dict[str, LaurentPoly]:
    """``key: polynomial`` lines, comments skipped."""
    out = {}
    for line in read_text(name).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, expr = line.partition(":")
        out[key.strip()] = LaurentPoly.parse(expr)
    return out
