"""
求解器配置

统一管理求解预算（轨道指数、球半径、商群规模、引擎步数），
避免上限硬编码分散在各个求解器里。
"""

from typing import Optional

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SolverSettings(BaseSettings):
    """
    求解器配置

    从环境变量 / .env 读取默认预算，CLI 参数与问题文件中的覆盖项优先。
    """

    max_exponent: int = Field(
        default=1000,
        alias="GBZ_MAX_EXPONENT",
        description="轨道搜索的最大 |k|",
    )

    ball_radius: int = Field(
        default=4,
        alias="GBZ_BALL_RADIUS",
        description="共轭元搜索的最大球半径",
    )

    max_quotient_size: int = Field(
        default=4096,
        alias="GBZ_MAX_QUOTIENT_SIZE",
        description="有限商群（及其组合商群）的最大阶",
    )

    max_steps: int = Field(
        default=100000,
        alias="GBZ_MAX_STEPS",
        description="可分性引擎的总步数上限",
    )

    max_visited: int = Field(
        default=200000,
        alias="GBZ_MAX_VISITED",
        description="轨道访问集的最大条目数，超过后降级为 Unknown",
    )

    generic_quotient_fallback: bool = Field(
        default=False,
        alias="GBZ_GENERIC_QUOTIENT_FALLBACK",
        description="是否在同余商群之外枚举到对称群的同态",
    )

    generic_max_degree: int = Field(
        default=4,
        alias="GBZ_GENERIC_MAX_DEGREE",
        description="通用商群回退的最大置换次数 k（S_k）",
    )

    workers: int = Field(
        default=1,
        alias="GBZ_WORKERS",
        description="并行求解问题的线程数",
    )

    log_level: str = Field(
        default="INFO",
        alias="GBZ_LOG_LEVEL",
        description="CLI 日志级别",
    )

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )


# 全局单例
_settings_instance: Optional[SolverSettings] = None


def get_solver_settings() -> SolverSettings:
    """
    获取求解器配置单例

    Returns:
        SolverSettings 实例
    """
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = SolverSettings()
    return _settings_instance


def reset_solver_settings():
    """
    重置配置单例（主要用于测试）
    """
    global _settings_instance
    _settings_instance = None


class Budget(BaseModel):
    """单次求解的预算（全部为正）"""

    max_exponent: int = Field(default=1000, gt=0)
    ball_radius: int = Field(default=4, gt=0)
    max_quotient_size: int = Field(default=4096, gt=0)
    max_steps: int = Field(default=100000, gt=0)
    max_visited: int = Field(default=200000, gt=0)
    generic_quotient_fallback: bool = False
    generic_max_degree: int = Field(default=4, gt=0)

    model_config = {"frozen": True}

    @classmethod
    def from_settings(cls, settings: Optional[SolverSettings] = None) -> "Budget":
        settings = settings or get_solver_settings()
        return cls(
            max_exponent=settings.max_exponent,
            ball_radius=settings.ball_radius,
            max_quotient_size=settings.max_quotient_size,
            max_steps=settings.max_steps,
            max_visited=settings.max_visited,
            generic_quotient_fallback=settings.generic_quotient_fallback,
            generic_max_degree=settings.generic_max_degree,
        )

    def override(self, **changes) -> "Budget":
        """返回覆盖了非 None 字段的新预算（经过校验）"""
        changes = {key: value for key, value in changes.items() if value is not None}
        if not changes:
            return self
        return Budget(**{**self.model_dump(), **changes})
