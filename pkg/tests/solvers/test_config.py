"""
测试求解器配置管理
"""

import pytest
from pydantic import ValidationError

from solvers.config import Budget, SolverSettings, get_solver_settings, reset_solver_settings


class TestSolverSettings:
    """测试求解器配置"""

    def teardown_method(self):
        """每个测试后重置配置单例"""
        reset_solver_settings()

    def test_default_values(self, monkeypatch, tmp_path):
        """测试默认配置值"""
        monkeypatch.chdir(tmp_path)
        config = SolverSettings()

        assert config.max_exponent == 1000, "默认最大指数应为1000"
        assert config.ball_radius == 4, "默认球半径应为4"
        assert config.max_quotient_size == 4096
        assert config.max_steps == 100000
        assert config.generic_quotient_fallback is False, "默认不启用通用商回退"
        assert config.workers == 1

    def test_env_override(self, monkeypatch):
        """测试环境变量覆盖配置"""
        monkeypatch.setenv("GBZ_MAX_EXPONENT", "50")
        monkeypatch.setenv("GBZ_BALL_RADIUS", "2")
        monkeypatch.setenv("GBZ_GENERIC_QUOTIENT_FALLBACK", "1")

        config = SolverSettings()

        assert config.max_exponent == 50, "环境变量应生效"
        assert config.ball_radius == 2
        assert config.generic_quotient_fallback is True

    def test_dotenv_file(self, monkeypatch, tmp_path):
        """工作目录下的 .env 也会被读取"""
        monkeypatch.chdir(tmp_path)
        (tmp_path / ".env").write_text("GBZ_MAX_STEPS=77\n", encoding="utf-8")
        assert SolverSettings().max_steps == 77

    def test_singleton_pattern(self):
        """测试配置单例模式"""
        assert get_solver_settings() is get_solver_settings(), "应该返回相同的实例"

    def test_reset_singleton(self):
        """测试重置配置单例"""
        config1 = get_solver_settings()
        reset_solver_settings()
        config2 = get_solver_settings()

        assert config1 is not config2, "重置后应返回新实例"


class TestBudget:
    def test_from_settings(self, monkeypatch):
        monkeypatch.setenv("GBZ_MAX_QUOTIENT_SIZE", "128")
        budget = Budget.from_settings()
        assert budget.max_quotient_size == 128

    def test_override_ignores_none(self):
        budget = Budget()
        assert budget.override(max_exponent=None) is budget
        changed = budget.override(max_exponent=7, ball_radius=None)
        assert changed.max_exponent == 7
        assert changed.ball_radius == budget.ball_radius

    @pytest.mark.parametrize("field", ["max_exponent", "ball_radius", "max_quotient_size", "max_steps"])
    def test_non_positive_rejected(self, field):
        with pytest.raises(ValidationError):
            Budget().override(**{field: 0})

    def test_frozen(self):
        with pytest.raises(ValidationError):
            Budget().max_steps = 5
