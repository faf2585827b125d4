"""
计算缓存服务
职责：
1. 提供线程安全的 LRU 缓存（态射幂、基群交、有限商群）
2. 按命名空间统计命中率
3. 测试中可整体清空
"""

import logging
import threading
from typing import Any, Callable, Dict, Hashable, Optional

from cachetools import LRUCache

logger = logging.getLogger(__name__)

MORPHISM_POWERS = "morphism_power"
BASE_INTERSECTIONS = "base_intersection"
FINITE_QUOTIENTS = "finite_quotient"


class ComputationCache:
    """
    LRU 计算缓存（线程安全）

    缓存的值都是不可变对象，多个 worker 可以直接共享。

    使用示例：
        cache = get_computation_cache()
        power = cache.get_or_compute(MORPHISM_POWERS, (phi, 3), lambda: compute(phi, 3))
        stats = cache.get_stats()
    """

    def __init__(self, maxsize: int = 2048):
        """
        初始化缓存

        Args:
            maxsize: 每个命名空间的最大条目数
        """
        self.maxsize = maxsize
        self._caches: Dict[str, LRUCache] = {}
        self._hits: Dict[str, int] = {}
        self._misses: Dict[str, int] = {}
        self._lock = threading.RLock()
        logger.debug("计算缓存初始化完成: maxsize=%d", maxsize)

    def _cache_for(self, namespace: str) -> LRUCache:
        cache = self._caches.get(namespace)
        if cache is None:
            cache = LRUCache(maxsize=self.maxsize)
            self._caches[namespace] = cache
            self._hits[namespace] = 0
            self._misses[namespace] = 0
        return cache

    def get(self, namespace: str, key: Hashable) -> Optional[Any]:
        with self._lock:
            cache = self._cache_for(namespace)
            value = cache.get(key)
            if value is not None:
                self._hits[namespace] += 1
            else:
                self._misses[namespace] += 1
            return value

    def set(self, namespace: str, key: Hashable, value: Any) -> None:
        with self._lock:
            self._cache_for(namespace)[key] = value

    def get_or_compute(self, namespace: str, key: Hashable, compute: Callable[[], Any]) -> Any:
        """
        读取缓存，未命中时计算并写入

        计算过程不持锁，并发下可能重复计算同一个键，结果相同。
        """
        value = self.get(namespace, key)
        if value is not None:
            return value
        value = compute()
        self.set(namespace, key, value)
        return value

    def clear(self) -> None:
        with self._lock:
            for cache in self._caches.values():
                cache.clear()
            logger.debug("计算缓存已清空")

    def get_stats(self) -> Dict[str, Dict[str, Any]]:
        """
        获取缓存统计

        Returns:
            {namespace: {"size", "hits", "misses", "hit_rate"}}
        """
        with self._lock:
            stats = {}
            for namespace, cache in self._caches.items():
                hits = self._hits[namespace]
                misses = self._misses[namespace]
                total = hits + misses
                stats[namespace] = {
                    "size": len(cache),
                    "hits": hits,
                    "misses": misses,
                    "hit_rate": f"{hits / total * 100:.1f}%" if total else "0.0%",
                }
            return stats


# 全局单例
_cache_instance: Optional[ComputationCache] = None


def get_computation_cache() -> ComputationCache:
    """
    获取计算缓存单例

    Returns:
        ComputationCache 实例
    """
    global _cache_instance
    if _cache_instance is None:
        _cache_instance = ComputationCache()
    return _cache_instance


def reset_computation_cache():
    """
    重置缓存单例（主要用于测试）
    """
    global _cache_instance
    _cache_instance = None
