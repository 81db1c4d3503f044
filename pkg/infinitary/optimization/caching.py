"""Memoisation for normalisation constants, series values and pooled entropies."""

import functools
from collections import OrderedDict
from typing import Any, Callable, Dict, Hashable, Optional
import weakref


class MemoCache:
    """Least-recently-used store with hit and miss counters."""

    def __init__(self, maxsize: Optional[int] = 128):
        self.maxsize = maxsize
        self.hits = 0
        self.misses = 0
        self._entries: "OrderedDict[Hashable, Any]" = OrderedDict()

    def __len__(self) -> int:
        return len(self._entries)

    def lookup(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        if key in self._entries:
            self._entries.move_to_end(key)
            self.hits += 1
            return self._entries[key]
        self.misses += 1
        value = compute()
        self._entries[key] = value
        if self.maxsize and len(self._entries) > self.maxsize:
            self._entries.popitem(last=False)
        return value

    def clear(self) -> None:
        self._entries.clear()

    def info(self) -> Dict[str, Any]:
        return {"hits": self.hits, "misses": self.misses, "size": len(self), "maxsize": self.maxsize}


class CacheManager:
    """Registry of live memoisation caches, keyed by module.function."""

    _registry: Dict[str, "weakref.ReferenceType[MemoCache]"] = {}

    @classmethod
    def register_cache(cls, name: str, cache: MemoCache) -> None:
        cls._registry[name] = weakref.ref(cache)

    @classmethod
    def _live(cls) -> Dict[str, MemoCache]:
        live = {name: ref() for name, ref in cls._registry.items()}
        return {name: cache for name, cache in live.items() if cache is not None}

    @classmethod
    def clear_cache(cls, name: str) -> None:
        cache = cls._live().get(name)
        if cache is not None:
            cache.clear()

    @classmethod
    def clear_all_caches(cls) -> None:
        for cache in cls._live().values():
            cache.clear()

    @classmethod
    def get_cache_info(cls) -> Dict[str, Dict[str, Any]]:
        return {name: cache.info() for name, cache in cls._live().items()}


def make_hashable(obj: Any) -> Hashable:
    """Turn nested lists, tuples and dicts of scalars into a hashable key."""
    if isinstance(obj, (list, tuple)):
        return tuple(make_hashable(x) for x in obj)
    if isinstance(obj, dict):
        return tuple(sorted((k, make_hashable(v)) for k, v in obj.items()))
    return obj


def memoize(maxsize: Optional[int] = 128) -> Callable:
    """LRU memoisation decorator registered with CacheManager.

    Args:
        maxsize: Maximum number of entries (None for unlimited)

    Returns:
        Decorator adding ``cache_clear`` and ``cache_info`` to the wrapped function
    """

    def decorator(func: Callable) -> Callable:
        cache = MemoCache(maxsize)
        CacheManager.register_cache(f"{func.__module__}.{func.__qualname__}", cache)

        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            key = make_hashable((args, sorted(kwargs.items())))
            return cache.lookup(key, lambda: func(*args, **kwargs))

        wrapper.cache_clear = cache.clear  # type: ignore[attr-defined]
        wrapper.cache_info = cache.info  # type: ignore[attr-defined]
        return wrapper

    return decorator


def clear_all_caches() -> None:
    CacheManager.clear_all_caches()
