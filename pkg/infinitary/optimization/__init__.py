"""Caching and parallel execution helpers."""

from .caching import CacheManager, memoize, make_hashable, clear_all_caches
from .parallel import parallel_map

__all__ = [
    "CacheManager",
    "memoize",
    "make_hashable",
    "clear_all_caches",
    "parallel_map",
]
