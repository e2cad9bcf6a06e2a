"""On-disk cache for the X, Y, L and M matrices.

Files live at ``<cache_dir>/<kind>_d<d>_delta<delta>.json`` and hold exactly
the JSON the CLI would print, so a hit is byte-identical to a rebuild.
Writes go to a temporary file in the same directory followed by a rename.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .linalg import RationalMatrix
from .relations import matrix_L0, matrix_M, matrix_X, matrix_Y0

KINDS = ("X", "Y", "L", "M")
ENV_VAR = "KAPPA_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "kapparing"


def build(kind: str, d: int, delta: int = 0) -> RationalMatrix:
    if kind == "X":
        return matrix_X(d, delta)
    if kind == "M":
        return matrix_M(d, delta)
    if delta != 0:
        raise ValueError(f"{kind} is only defined for delta = 0")
    if kind == "Y":
        return matrix_Y0(d)
    if kind == "L":
        return matrix_L0(d)
    raise ValueError(f"unknown matrix kind {kind!r}; expected one of {KINDS}")


def cache_path(cache_dir: Path, kind: str, d: int, delta: int) -> Path:
    return Path(cache_dir) / f"{kind}_d{d}_delta{delta}.json"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_or_build(kind: str, d: int, delta: int = 0, cache_dir: Path | None = None) -> RationalMatrix:
    """Return the matrix, reading it from the cache or building and storing it."""
    if cache_dir is None:
        return build(kind, d, delta)
    path = cache_path(cache_dir, kind, d, delta)
    if path.exists():
        return RationalMatrix.from_json(path.read_text(encoding="utf-8"))
    m = build(kind, d, delta)
    _atomic_write(path, m.to_json())
    return m


def list_entries(cache_dir: Path) -> list[str]:
    cache_dir = Path(cache_dir)
    if not cache_dir.is_dir():
        return []
    return sorted(p.name for p in cache_dir.glob("*_d*_delta*.json"))


def clear(cache_dir: Path) -> list[str]:
    removed = list_entries(cache_dir)
    for name in removed:
        (Path(cache_dir) / name).unlink()
    return removed
