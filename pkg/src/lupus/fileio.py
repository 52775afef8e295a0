"""Atomic text-file output: no workflow ever leaves a partial file behind."""

import os
import tempfile
from pathlib import Path


def write_text_atomic(path, content: str) -> None:
    """Write via a temp file in the target directory plus an atomic rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(content)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
