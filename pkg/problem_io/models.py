"""
问题文件的数据模型

模型只保存文件中的声明（名字、记号字符串、矩阵），不保存行号，
这样 serialize 后重新 parse 得到完全相同的模型。引用解析与对象构造见 builder。
"""

from typing import Dict, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

GroupFamilyName = Literal[
    "free",
    "abelian",
    "finite",
    "cyclic",
    "symmetric",
    "semidirect",
    "virtually-free",
    "free-times-finite",
]

TargetKindName = Literal["finite", "subgroup", "coset"]

ProblemKindName = Literal["CP", "TCP", "BrP", "BrCP", "GCP", "GTCP", "GBrP", "GBrCP"]

MethodName = Literal["auto", "lowering", "separability"]

IntMatrix = Tuple[Tuple[int, ...], ...]


class GroupSpec(BaseModel):
    """[group NAME] 段"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(..., description="群名")
    family: GroupFamilyName = Field(..., description="群族")
    generators: Tuple[str, ...] = Field(default=(), description="生成元名（free / abelian / finite）")
    rank: Optional[int] = Field(None, ge=0, description="自由交换群的秩")
    order: Optional[PositiveInt] = Field(None, description="循环群的阶")
    degree: Optional[PositiveInt] = Field(None, description="对称群的次数")
    table: IntMatrix = Field(default=(), description="有限群乘法表")
    elements: Tuple[str, ...] = Field(default=(), description="有限群元素名（可选）")
    base: Optional[str] = Field(None, description="基群名（semidirect / virtually-free / free-times-finite）")
    morphism: Optional[str] = Field(None, description="半直积的定义自同构")
    t: Optional[str] = Field(None, description="半直积中 t 的名字")
    finite: Optional[str] = Field(None, description="free-times-finite 的有限因子")
    cosets: Tuple[str, ...] = Field(default=(), description="陪集字母，第一个为单位陪集")
    action: Dict[str, Tuple[str, ...]] = Field(default_factory=dict, description="b_i a = u_ia b_i 中的 u_ia")
    products: Dict[str, str] = Field(default_factory=dict, description="b_i b_j = v_ij b_r，键为 'i.j'")

    @model_validator(mode="after")
    def _check_family_fields(self) -> "GroupSpec":
        required = {
            "abelian": ("rank",),
            "finite": ("table",),
            "cyclic": ("order",),
            "symmetric": ("degree",),
            "semidirect": ("base", "morphism"),
            "virtually-free": ("base", "cosets"),
            "free-times-finite": ("base", "finite"),
        }.get(self.family, ())
        missing = [key for key in required if not getattr(self, key)]
        if self.family == "abelian" and self.rank == 0:
            missing = []
        if missing:
            raise ValueError(f"{self.family} 群缺少字段: {', '.join(missing)}")
        return self


class MorphismSpec(BaseModel):
    """[morphism NAME] 段"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(..., description="态射名")
    group: str = Field(..., description="定义域（= 陪域）")
    images: Tuple[str, ...] = Field(default=(), description="生成元像")
    matrix: IntMatrix = Field(default=(), description="自由交换群上的整数矩阵（行 = 生成元像）")
    inverse: Tuple[str, ...] = Field(default=(), description="逆像")
    inverse_matrix: IntMatrix = Field(default=(), description="逆矩阵")
    witness: Optional[str] = Field(None, description="虚内见证 'R : WORD'，表示 φ^R = λ_WORD")
    inner: Optional[str] = Field(None, description="内自同构 λ_x 的 x")
    automorphism: bool = Field(default=False, description="声明为自同构（必须可逆）")

    @model_validator(mode="after")
    def _check_definition(self) -> "MorphismSpec":
        given = sum(bool(x) for x in (self.images, self.matrix, self.inner))
        if given != 1:
            raise ValueError("images / matrix / inner 必须恰好给出一个")
        return self


class TargetSpec(BaseModel):
    """[target NAME] 段"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(..., description="目标名")
    group: str = Field(..., description="所在群")
    kind: TargetKindName = Field(..., description="finite / subgroup / coset")
    elements: Tuple[str, ...] = Field(default=(), description="有限集元素")
    generators: Tuple[str, ...] = Field(default=(), description="子群生成元")
    representative: Optional[str] = Field(None, description="陪集代表元")

    @model_validator(mode="after")
    def _check_kind_fields(self) -> "TargetSpec":
        if self.kind == "coset" and self.representative is None:
            raise ValueError("coset 目标需要 representative")
        if self.kind != "coset" and self.representative is not None:
            raise ValueError(f"{self.kind} 目标不接受 representative")
        if self.kind == "finite" and self.generators:
            raise ValueError("finite 目标使用 elements 而不是 generators")
        if self.kind != "finite" and self.elements:
            raise ValueError(f"{self.kind} 目标使用 generators 而不是 elements")
        return self


class BudgetOverrides(BaseModel):
    """单个问题的预算覆盖（None 表示沿用全局）"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_exponent: Optional[PositiveInt] = None
    ball_radius: Optional[PositiveInt] = None
    max_quotient_size: Optional[PositiveInt] = None
    max_steps: Optional[PositiveInt] = None
    max_visited: Optional[PositiveInt] = None
    generic_quotient_fallback: Optional[bool] = None
    generic_max_degree: Optional[PositiveInt] = None


class ProblemSpec(BaseModel):
    """[problem NAME] 段"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(..., description="问题名")
    kind: ProblemKindName = Field(..., description="问题种类")
    group: str = Field(..., description="所在群")
    subject: str = Field(..., description="元素 g")
    other: Optional[str] = Field(None, description="CP/TCP/BrP/BrCP 的第二个元素 h")
    morphism: Optional[str] = Field(None, description="态射名")
    target: Optional[str] = Field(None, description="广义问题的目标名")
    method: MethodName = Field(default="auto", description="半直积 GCP 的求解路线")
    budget: BudgetOverrides = Field(default_factory=BudgetOverrides, description="预算覆盖")


class ProblemFile(BaseModel):
    """整份问题文件（各段保持文件中的顺序）"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    groups: Tuple[GroupSpec, ...] = ()
    morphisms: Tuple[MorphismSpec, ...] = ()
    targets: Tuple[TargetSpec, ...] = ()
    problems: Tuple[ProblemSpec, ...] = ()
