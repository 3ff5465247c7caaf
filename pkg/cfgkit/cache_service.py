"""
Caching service for normalized grammars
Keeps the Chomsky Normal Form of recently used grammars in an LRU cache
"""

import logging
import threading
from typing import Any, Dict, Optional

from cachetools import LRUCache

from .config import get_config
from .grammar_core import Grammar


class NormalFormCache:
    """
    LRU cache of CNF conversions, keyed by the (immutable, hashable) source grammar

    Safe to share between threads: every cache access and counter update holds
    the instance lock.
    """

    def __init__(self, maxsize: Optional[int] = None):
        """
        Initialize cache

        Args:
            maxsize: Maximum number of grammars kept; defaults to config CNF_CACHE_SIZE
        """
        if maxsize is None:
            maxsize = get_config().CNF_CACHE_SIZE
        self.cache: LRUCache = LRUCache(maxsize=maxsize)
        self.hits = 0
        self.misses = 0
        self._lock = threading.Lock()
        self.logger = logging.getLogger(__name__)

    def get(self, grammar: Grammar) -> Optional[Grammar]:
        """
        Retrieve the cached normal form of a grammar

        Args:
            grammar: Source grammar

        Returns:
            Cached CNF grammar or None if not cached
        """
        with self._lock:
            normal_form = self.cache.get(grammar)
            if normal_form is not None:
                self.hits += 1
            else:
                self.misses += 1

        if normal_form is not None:
            self.logger.debug(f"Cache HIT for grammar: {grammar.summary()}")
        else:
            self.logger.debug(f"Cache MISS for grammar: {grammar.summary()}")
        return normal_form

    def set(self, grammar: Grammar, normal_form: Grammar) -> None:
        """
        Store the normal form of a grammar

        Args:
            grammar: Source grammar (the key)
            normal_form: Its CNF conversion
        """
        with self._lock:
            self.cache[grammar] = normal_form
        self.logger.debug(f"Cached normal form for grammar: {grammar.summary()}")

    def invalidate(self, grammar: Grammar) -> bool:
        """
        Remove a cached normal form

        Returns:
            True if the grammar was in cache, False otherwise
        """
        with self._lock:
            return self.cache.pop(grammar, None) is not None

    def clear(self) -> None:
        """Clear all cached normal forms"""
        with self._lock:
            self.cache.clear()
            self.hits = 0
            self.misses = 0
        self.logger.debug("Normal form cache cleared")

    def get_stats(self) -> Dict[str, Any]:
        """
        Get cache statistics

        Returns:
            Dict with cache stats
        """
        with self._lock:
            return {
                'size': len(self.cache),
                'maxsize': self.cache.maxsize,
                'hits': self.hits,
                'misses': self.misses,
            }


# Global cache instance (singleton pattern)
_cache_instance: Optional[NormalFormCache] = None
_instance_lock = threading.Lock()


def get_cache() -> NormalFormCache:
    """
    Get global cache instance (singleton)

    Returns:
        NormalFormCache instance
    """
    global _cache_instance
    with _instance_lock:
        if _cache_instance is None:
            _cache_instance = NormalFormCache()
    return _cache_instance
