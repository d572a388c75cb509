"""Plain-text point files: one point per line, space-separated, 17 significant digits."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ConfigError


def format_number(x) -> str:
    s = format(float(x), ".17g")
    return "0" if s == "-0" else s


def format_point(x) -> str:
    return " ".join(format_number(c) for c in np.ravel(x))


def format_points(points) -> str:
    return "".join(format_point(p) + "\n" for p in points)


def parse_points(text: str, source="<text>") -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: not a list of numbers: {line!r}") from None
    if rows and len({len(r) for r in rows}) != 1:
        raise ConfigError(f"{source}: points have differing coordinate counts")
    return np.array(rows, dtype=float)


def read_points(path) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as err:
        raise ConfigError(f"cannot read point file {path}: {err}") from None
    return parse_points(text, str(path))


def write_atomic(path, text: str):
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_points(path, points):
    write_atomic(path, format_points(points))
