"""
问题文件序列化

输出规范文本：段按 group / morphism / target / problem 排列，段内键按模型字段顺序，
只写出非默认值。parse_text(serialize(f)) == f。
"""

from typing import Any, List

from pydantic import BaseModel

from problem_io.models import GroupSpec, ProblemFile, ProblemSpec

_SECTION_FIELDS = (
    ("group", "groups"),
    ("morphism", "morphisms"),
    ("target", "targets"),
    ("problem", "problems"),
)

# 不作为普通键输出的字段
_SPECIAL = {"name", "action", "products", "budget"}


def format_value(value: Any) -> str:
    """单个值的文本形式"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        if value and isinstance(value[0], tuple):
            return "; ".join(" ".join(str(x) for x in row) for row in value)
        return ", ".join(str(x) for x in value)
    return str(value)


def _non_default_items(model: BaseModel):
    for key, info in type(model).model_fields.items():
        if key in _SPECIAL:
            continue
        value = getattr(model, key)
        if value == info.get_default(call_default_factory=True):
            continue
        yield key, value


def _section_lines(kind: str, model: BaseModel) -> List[str]:
    lines = [f"[{kind} {model.name}]"]
    lines.extend(f"{key} = {format_value(value)}" for key, value in _non_default_items(model))
    if isinstance(model, GroupSpec):
        lines.extend(f"action.{letter} = {format_value(images)}" for letter, images in model.action.items())
        lines.extend(f"product.{pair} = {value}" for pair, value in model.products.items())
    if isinstance(model, ProblemSpec):
        lines.extend(f"{key} = {format_value(value)}" for key, value in _non_default_items(model.budget))
    return lines


def serialize(problem_file: ProblemFile) -> str:
    """ProblemFile → 规范文本"""
    blocks = []
    for kind, attribute in _SECTION_FIELDS:
        for model in getattr(problem_file, attribute):
            blocks.append("\n".join(_section_lines(kind, model)))
    if not blocks:
        return ""
    return "\n\n".join(blocks) + "\n"
