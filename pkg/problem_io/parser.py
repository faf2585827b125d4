"""
问题文件解析

格式（按行）：
    # 注释
    [group Z2]
    family = abelian
    rank = 2

    [morphism A]
    group = Z2
    matrix = 2 1; 1 1

    [problem orbit]
    kind = GBrP
    group = Z2
    morphism = A
    subject = (1,0)
    target = hit

段头为 [group|morphism|target|problem NAME]，其余为 key = value。
列表以逗号分隔（括号内的逗号不拆分），矩阵行以分号分隔。
解析错误全部收集后一起抛出，每条带行号与列号。
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from problem_io.models import (
    BudgetOverrides,
    GroupSpec,
    MorphismSpec,
    ProblemFile,
    ProblemSpec,
    TargetSpec,
)

logger = logging.getLogger(__name__)

SECTION_KINDS = ("group", "morphism", "target", "problem")


@dataclass(frozen=True)
class ParseIssue:
    """带位置的解析错误（行列从 1 开始）"""

    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class ProblemFileError(ValueError):
    """问题文件不合法"""

    def __init__(self, issues: List[ParseIssue], source: Optional[str] = None):
        self.issues = list(issues)
        self.source = source
        prefix = f"{source}:" if source else ""
        super().__init__("\n".join(f"{prefix}{issue}" for issue in self.issues))


# 每种段允许的键及其值类型
_GROUP_KEYS = {
    "family": "str",
    "generators": "names",
    "rank": "int",
    "order": "int",
    "degree": "int",
    "table": "matrix",
    "elements": "names",
    "base": "str",
    "morphism": "str",
    "t": "str",
    "finite": "str",
    "cosets": "names",
}
_MORPHISM_KEYS = {
    "group": "str",
    "images": "list",
    "matrix": "matrix",
    "inverse": "list",
    "inverse_matrix": "matrix",
    "witness": "str",
    "inner": "str",
    "automorphism": "bool",
}
_TARGET_KEYS = {
    "group": "str",
    "kind": "str",
    "elements": "list",
    "generators": "list",
    "representative": "str",
}
_PROBLEM_KEYS = {
    "kind": "str",
    "group": "str",
    "subject": "str",
    "other": "str",
    "morphism": "str",
    "target": "str",
    "method": "str",
}
_BUDGET_KEYS = {
    "max_exponent": "int",
    "ball_radius": "int",
    "max_quotient_size": "int",
    "max_steps": "int",
    "max_visited": "int",
    "generic_quotient_fallback": "bool",
    "generic_max_degree": "int",
}
_KEY_ALIASES = {"problem": {"g": "subject", "h": "other"}}


@dataclass
class _Section:
    kind: str
    name: str
    line: int
    values: Dict[str, Any]
    positions: Dict[str, Tuple[int, int]]


# ==================== 值解析 ====================


def split_list(text: str) -> List[str]:
    """按顶层逗号拆分（圆括号内的逗号保留）"""
    items: List[str] = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(current).strip())
            current = []
            continue
        current.append(ch)
    tail = "".join(current).strip()
    if tail or items:
        items.append(tail)
    return items


def parse_matrix(text: str) -> Tuple[Tuple[int, ...], ...]:
    """'2 1; 1 1' → ((2, 1), (1, 1))"""
    rows = [row.strip() for row in text.split(";")]
    if rows == [""]:
        return ()
    return tuple(tuple(int(x) for x in row.replace(",", " ").split()) for row in rows)


def _convert(kind: str, text: str) -> Any:
    if kind == "str":
        if not text:
            raise ValueError("值不能为空")
        return text
    if kind == "int":
        return int(text)
    if kind == "bool":
        lowered = text.lower()
        if lowered in ("true", "yes", "1"):
            return True
        if lowered in ("false", "no", "0"):
            return False
        raise ValueError(f"非法的布尔值: {text}")
    if kind == "names":
        return tuple(text.replace(",", " ").split())
    if kind == "list":
        items = split_list(text)
        if any(not item for item in items):
            raise ValueError("列表中有空项")
        return tuple(items)
    if kind == "matrix":
        return parse_matrix(text)
    raise ValueError(f"未知的值类型 {kind}")


def _key_type(section: str, key: str) -> Optional[str]:
    if section == "group":
        if key.startswith("action."):
            return "list"
        if key.startswith("product."):
            return "str"
        return _GROUP_KEYS.get(key)
    if section == "morphism":
        return _MORPHISM_KEYS.get(key)
    if section == "target":
        return _TARGET_KEYS.get(key)
    return _PROBLEM_KEYS.get(key) or _BUDGET_KEYS.get(key)


# ==================== 扫描 ====================


def _scan(text: str, issues: List[ParseIssue]) -> List[_Section]:
    sections: List[_Section] = []
    seen_names: Dict[Tuple[str, str], int] = {}
    current: Optional[_Section] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        if stripped.startswith("["):
            current = None
            if not stripped.endswith("]"):
                issues.append(ParseIssue(lineno, indent + 1, "段头缺少 ']'"))
                continue
            parts = stripped[1:-1].split()
            if len(parts) != 2:
                issues.append(ParseIssue(lineno, indent + 1, "段头应为 [KIND NAME]"))
                continue
            kind, name = parts
            if kind not in SECTION_KINDS:
                issues.append(ParseIssue(lineno, indent + 2, f"未知的段类型: {kind}"))
                continue
            if (kind, name) in seen_names:
                issues.append(
                    ParseIssue(lineno, indent + 2 + len(kind), f"{kind} {name} 重复定义（首次在第 {seen_names[(kind, name)]} 行）")
                )
                continue
            seen_names[(kind, name)] = lineno
            current = _Section(kind=kind, name=name, line=lineno, values={}, positions={})
            sections.append(current)
            continue
        if current is None:
            issues.append(ParseIssue(lineno, indent + 1, "键值对不在任何段内"))
            continue
        if "=" not in stripped:
            issues.append(ParseIssue(lineno, indent + 1, "缺少 '='"))
            continue
        key_text, value_text = raw.split("=", 1)
        key = key_text.strip()
        key = _KEY_ALIASES.get(current.kind, {}).get(key, key)
        value = value_text.strip()
        value_column = len(key_text) + 2 + (len(value_text) - len(value_text.lstrip()))
        value_type = _key_type(current.kind, key)
        if value_type is None:
            issues.append(ParseIssue(lineno, indent + 1, f"{current.kind} 段不支持键 {key}"))
            continue
        if key in current.values:
            issues.append(ParseIssue(lineno, indent + 1, f"键 {key} 重复"))
            continue
        try:
            current.values[key] = _convert(value_type, value)
        except ValueError as e:
            issues.append(ParseIssue(lineno, value_column, f"{key}: {e}"))
            continue
        current.positions[key] = (lineno, value_column)
    return sections


def _model_for(section: _Section):
    values = dict(section.values)
    if section.kind == "group":
        action = {k.split(".", 1)[1]: values.pop(k) for k in list(values) if k.startswith("action.")}
        products = {k.split(".", 1)[1]: values.pop(k) for k in list(values) if k.startswith("product.")}
        return GroupSpec(name=section.name, action=action, products=products, **values)
    if section.kind == "morphism":
        return MorphismSpec(name=section.name, **values)
    if section.kind == "target":
        return TargetSpec(name=section.name, **values)
    budget = {k: values.pop(k) for k in list(values) if k in _BUDGET_KEYS}
    return ProblemSpec(name=section.name, budget=BudgetOverrides(**budget), **values)


def _issue_from_validation(section: _Section, error: ValidationError) -> List[ParseIssue]:
    issues = []
    for item in error.errors():
        location = item.get("loc") or ()
        key = str(location[0]) if location else None
        if key == "budget" and len(location) > 1:
            key = str(location[1])
        line, column = section.positions.get(key, (section.line, 1))
        label = f"{key}: " if key and key in section.positions else ""
        issues.append(ParseIssue(line, column, f"{section.kind} {section.name}: {label}{item.get('msg')}"))
    return issues


# ==================== 入口 ====================


def parse_text(text: str, source: Optional[str] = None, resolve: bool = True) -> ProblemFile:
    """
    解析问题文件文本

    Args:
        text: 文件内容
        source: 用于错误消息的文件名
        resolve: 是否检查引用并构造全部群、态射与目标

    Raises:
        ProblemFileError: 带行列位置的全部错误
    """
    issues: List[ParseIssue] = []
    sections = _scan(text, issues)
    buckets: Dict[str, list] = {kind: [] for kind in SECTION_KINDS}
    for section in sections:
        try:
            buckets[section.kind].append(_model_for(section))
        except ValidationError as e:
            issues.extend(_issue_from_validation(section, e))
        except TypeError as e:
            issues.append(ParseIssue(section.line, 1, f"{section.kind} {section.name}: {e}"))
    if issues:
        raise ProblemFileError(issues, source)

    problem_file = ProblemFile(
        groups=tuple(buckets["group"]),
        morphisms=tuple(buckets["morphism"]),
        targets=tuple(buckets["target"]),
        problems=tuple(buckets["problem"]),
    )
    if resolve:
        from problem_io.builder import DefinitionError, build

        locations = {(s.kind, s.name): s for s in sections}
        try:
            build(problem_file)
        except DefinitionError as e:
            section = locations.get((e.section, e.name))
            if section is None:
                raise ProblemFileError([ParseIssue(1, 1, str(e))], source) from e
            line, column = section.positions.get(e.key, (section.line, 1)) if e.key else (section.line, 1)
            raise ProblemFileError([ParseIssue(line, column, str(e))], source) from e
    logger.debug(
        "解析完成: %d 个群, %d 个态射, %d 个目标, %d 个问题",
        len(problem_file.groups),
        len(problem_file.morphisms),
        len(problem_file.targets),
        len(problem_file.problems),
    )
    return problem_file


def parse(path: Union[str, Path]) -> ProblemFile:
    """
    读取并解析问题文件

    Raises:
        ProblemFileError: 格式、引用或构造错误
        OSError: 文件不可读
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_text(text, source=str(path))
