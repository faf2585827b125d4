"""
群内核异常定义

统一三类错误：
1. GroupInputError：输入不合法（句柄不匹配、表不是群表、态射不满足关系等）
2. CapabilityError：请求的操作超出已实现的判定过程
3. BudgetExceededError：球/商群/访问集等规模上限被触发
"""

from typing import Optional


class GroupInputError(ValueError):
    """输入数据不满足群内核的不变量"""


class CapabilityError(RuntimeError):
    """缺少某项能力（例如半直积求逆缺少逆像、自由基群的 H∩G 不可计算）"""

    def __init__(self, message: str, missing: Optional[str] = None):
        super().__init__(message)
        self.missing = missing or message


class BudgetExceededError(RuntimeError):
    """规模上限被触发"""

    def __init__(self, message: str, limit: int):
        super().__init__(message)
        self.limit = limit


class ErrorMessages:
    """错误消息常量"""

    GROUP_MISMATCH = "元素不属于群 {group}"
    FAMILY_UNSUPPORTED = "群族 {family} 不支持操作 {operation}"
    INVERSE_REQUIRED = "{operation} 需要逆像（态射未给出 inverse_images）"
    NOT_GROUP_TABLE = "乘法表不是群表: {reason}"
    NOT_HOMOMORPHISM = "生成元像不定义同态: {reason}"
    NOT_AUTOMORPHISM = "给定的逆像与态射的复合不是恒等: {reason}"
    BAD_WITNESS = "虚内见证 (r={r}) 不成立: {reason}"
    BAD_PRESENTATION = "虚自由群表示数据不一致: {reason}"
    NOT_FULLY_INVARIANT = "自由子群 F 在态射下不是全不变的: 生成元 {generator}"
    BALL_TOO_LARGE = "球的规模超过上限 {limit}"
    SUBGROUP_PART_UNAVAILABLE = "无法计算 H∩G（需要交换基群或 H ≤ G）"
