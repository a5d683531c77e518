"""TTL response cache with single-flight computation per key.

Concurrent identical requests share one backend fan-out: the first caller
computes under a per-key lock while the others wait and are then served
from the stored entry.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from datetime import datetime
from typing import Any, Callable, Hashable

from ..providers import Clock


@dataclass
class CacheEntry:
    value: Any
    stored_at: datetime
    ttl_s: int


class ResponseCache:
    def __init__(self, ttl_s: int, clock: Clock):
        self._ttl_s = ttl_s
        self._clock = clock
        self._entries: dict[Hashable, CacheEntry] = {}
        self._lock = threading.Lock()
        self._key_locks: dict[Hashable, threading.Lock] = {}

    @property
    def enabled(self) -> bool:
        return self._ttl_s > 0

    def _key_lock(self, key: Hashable) -> threading.Lock:
        with self._lock:
            lock = self._key_locks.get(key)
            if lock is None:
                lock = self._key_locks[key] = threading.Lock()
            return lock

    def _live_entry(self, key: Hashable) -> CacheEntry | None:
        with self._lock:
            entry = self._entries.get(key)
            if entry is None:
                return None
            age = (self._clock() - entry.stored_at).total_seconds()
            if age >= entry.ttl_s:
                del self._entries[key]
                return None
            return entry

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> tuple[Any, bool]:
        """Return (value, was_cached).  ``compute`` exceptions propagate
        without storing anything."""
        if not self.enabled:
            return compute(), False
        with self._key_lock(key):
            entry = self._live_entry(key)
            if entry is not None:
                return entry.value, True
            value = compute()
            with self._lock:
                self._entries[key] = CacheEntry(value=value, stored_at=self._clock(), ttl_s=self._ttl_s)
            return value, False
