"""Append-only JSON-lines session log.

One object per line, appended atomically under a lock and flushed to disk
per record.  Readers tolerate a truncated final line (a crash mid-append)
by skipping it with a warning.
"""
from __future__ import annotations

import json
import logging
import threading
from pathlib import Path
from typing import Any, Iterator

logger = logging.getLogger(__name__)


class SessionLog:
    def __init__(self, path: Path | str):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, record: dict[str, Any]) -> None:
        """Append one record; IO errors go to the operator log, never up."""
        line = json.dumps(record, separators=(",", ":")) + "\n"
        try:
            with self._lock:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with self.path.open("a", encoding="utf-8") as handle:
                    handle.write(line)
                    handle.flush()
        except OSError as exc:
            logger.error("session log append failed: %s", exc)


def read_entries(path: Path | str) -> Iterator[dict[str, Any]]:
    """Yield parsed log records, skipping malformed lines with a warning."""
    path = Path(path)
    if not path.is_file():
        return
    with path.open("r", encoding="utf-8", errors="replace") as handle:
        for number, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            try:
                record = json.loads(stripped)
            except ValueError:
                logger.warning("skipping malformed log line %d in %s", number, path)
                continue
            if isinstance(record, dict):
                yield record
