"""
测试共享 fixtures

- 每个测试前后重置配置、指标与计算缓存单例
- 常用群与态射
"""

import pytest

from group_kernel.builders import (
    abelian_group,
    cyclic_group,
    free_group,
    make_morphism,
    matrix_morphism,
    semidirect_product,
    symmetric_group,
)
from group_kernel.cache_service import reset_computation_cache
from group_kernel.notation import parse_element
from monitoring.metrics import reset_metrics
from solvers.config import Budget, reset_solver_settings


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 大规模验收用例（-m 'not slow' 跳过）")


@pytest.fixture(autouse=True)
def reset_singletons():
    """隔离全局单例"""
    reset_solver_settings()
    reset_metrics()
    reset_computation_cache()
    yield
    reset_solver_settings()
    reset_metrics()
    reset_computation_cache()


@pytest.fixture
def budget():
    """测试默认预算（比生产配置小，保证测试快速结束）"""
    return Budget(max_exponent=200, ball_radius=4, max_quotient_size=512, max_steps=20000, max_visited=5000)


@pytest.fixture
def z2():
    return abelian_group(2, name="Z2")


@pytest.fixture
def cat_map(z2):
    """A = [[2,1],[1,1]]"""
    return matrix_morphism(z2, [[2, 1], [1, 1]], name="A")


@pytest.fixture
def shear(z2):
    """A = [[1,1],[0,1]]"""
    return matrix_morphism(z2, [[1, 1], [0, 1]], name="shear")


@pytest.fixture
def shear_product(shear, z2):
    """Z² ⋊_A Z，A = [[1,1],[0,1]]"""
    return semidirect_product(z2, shear, name="Heis")


@pytest.fixture
def cat_product(cat_map, z2):
    return semidirect_product(z2, cat_map, name="Cat")


@pytest.fixture
def f2():
    return free_group(["a", "b"], name="F2")


@pytest.fixture
def swap(f2):
    """a ↔ b（φ² = id）"""
    a, b = (parse_element(f2, x) for x in ("a", "b"))
    return make_morphism(f2, f2, [b, a], [b, a], name="swap")


@pytest.fixture
def z6():
    return cyclic_group(6)


@pytest.fixture
def s3():
    return symmetric_group(3)
