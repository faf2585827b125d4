"""
计算缓存单元测试
测试内容：
1. 基本读写与未命中
2. 命名空间统计
3. 线程安全性
4. 单例重置
"""

import threading

from group_kernel.cache_service import (
    MORPHISM_POWERS,
    FINITE_QUOTIENTS,
    ComputationCache,
    get_computation_cache,
    reset_computation_cache,
)
from group_kernel.kernel import morphism_power


class TestComputationCache:
    def test_basic_operations(self):
        """测试基本缓存操作"""
        cache = ComputationCache(maxsize=8)
        cache.set(MORPHISM_POWERS, ("phi", 2), "phi^2")

        assert cache.get(MORPHISM_POWERS, ("phi", 2)) == "phi^2", "缓存数据不匹配"
        assert cache.get(MORPHISM_POWERS, ("phi", 3)) is None, "不存在的键应该返回None"
        assert cache.get(FINITE_QUOTIENTS, ("phi", 2)) is None, "命名空间之间不应共享"

    def test_get_or_compute_calls_once(self):
        """命中后不再计算"""
        cache = ComputationCache()
        calls = []

        def compute():
            calls.append(1)
            return 42

        assert cache.get_or_compute(FINITE_QUOTIENTS, "k", compute) == 42
        assert cache.get_or_compute(FINITE_QUOTIENTS, "k", compute) == 42
        assert len(calls) == 1

    def test_lru_eviction(self):
        cache = ComputationCache(maxsize=2)
        for i in range(3):
            cache.set(MORPHISM_POWERS, i, i + 100)
        assert cache.get(MORPHISM_POWERS, 0) is None, "最旧的条目应被淘汰"
        assert cache.get(MORPHISM_POWERS, 2) == 102

    def test_stats(self):
        """测试缓存统计"""
        cache = ComputationCache()
        cache.set(MORPHISM_POWERS, "a", 1)
        cache.get(MORPHISM_POWERS, "a")
        cache.get(MORPHISM_POWERS, "b")

        stats = cache.get_stats()[MORPHISM_POWERS]
        assert stats["size"] == 1
        assert stats["hits"] == 1
        assert stats["misses"] == 1
        assert stats["hit_rate"] == "50.0%"

    def test_clear(self):
        cache = ComputationCache()
        cache.set(MORPHISM_POWERS, "a", 1)
        cache.clear()
        assert cache.get(MORPHISM_POWERS, "a") is None

    def test_thread_safety(self):
        """并发写入不丢数据"""
        cache = ComputationCache(maxsize=1000)

        def worker(offset):
            for i in range(100):
                cache.set(FINITE_QUOTIENTS, offset * 100 + i, i)

        threads = [threading.Thread(target=worker, args=(n,)) for n in range(5)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()

        assert cache.get_stats()[FINITE_QUOTIENTS]["size"] == 500


class TestCacheSingleton:
    def test_singleton_pattern(self):
        assert get_computation_cache() is get_computation_cache(), "应该返回相同的实例"

    def test_reset_singleton(self):
        first = get_computation_cache()
        reset_computation_cache()
        assert get_computation_cache() is not first, "重置后应返回新实例"

    def test_morphism_powers_are_cached(self, cat_map):
        """态射幂写入全局缓存"""
        morphism_power(cat_map, 5)
        stats = get_computation_cache().get_stats()
        assert stats[MORPHISM_POWERS]["size"] >= 1
        assert morphism_power(cat_map, 5) is morphism_power(cat_map, 5)
