"""
Cache utilities for storing and retrieving computed lattice data.
"""
import threading
from collections import OrderedDict

from utils.config import get_setting
from utils.logging import debug_log


class SimpleCache:
    """
    Bounded in-memory cache, safe to share between worker threads.

    Values are immutable results (point patches, inverses), so eviction
    only costs recomputation.
    """
    def __init__(self, max_entries=None):
        self._cache = OrderedDict()
        self._lock = threading.Lock()
        self._max_entries = max_entries or get_setting('cache_entries')
        self._hits = 0
        self._misses = 0

    def get(self, key, default=None):
        """Get cached value if present"""
        with self._lock:
            if key not in self._cache:
                self._misses += 1
                return default
            self._hits += 1
            self._cache.move_to_end(key)
            return self._cache[key]

    def set(self, key, value):
        """Store a value, evicting the oldest entry when full"""
        with self._lock:
            self._cache[key] = value
            self._cache.move_to_end(key)
            while len(self._cache) > self._max_entries:
                evicted, _ = self._cache.popitem(last=False)
                debug_log(f"Cache evicted key: {evicted!r}", "DEBUG", "cache")

    def get_or_compute(self, key, compute):
        value = self.get(key)
        if value is None:
            value = compute()
            self.set(key, value)
        return value

    def clear(self):
        """Clear all cached data"""
        with self._lock:
            self._cache.clear()
            self._hits = 0
            self._misses = 0
        debug_log("Cache cleared", "DEBUG", "cache")

    def get_cache_info(self):
        """Get information about current cache state"""
        with self._lock:
            return {
                'total_entries': len(self._cache),
                'max_entries': self._max_entries,
                'hits': self._hits,
                'misses': self._misses,
            }


# Global cache instance
cache = SimpleCache()
