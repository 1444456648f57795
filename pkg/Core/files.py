# Core/files.py
from __future__ import annotations

import os
import tempfile
from pathlib import Path

from Core.errors import StorageError


def atomic_write_text(path: str | os.PathLike, text: str) -> Path:
    """Write UTF-8 text with LF endings via a sibling temp file and rename."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    try:
        directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as e:
        raise StorageError(f"{target}: {e}") from e
    return target


def read_text(path: str | os.PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise StorageError(f"{path}: {e}") from e
