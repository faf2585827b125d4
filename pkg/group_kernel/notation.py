"""
元素的文本记号

语法：
- 字：生成元名以空格连接，幂写作 x^2、b^-1；单位元写作 1
- 交换群：也可写向量 (3,-2)
- 有限群：也可写下标 #3
- 半直积：t^R : WORD（WORD 为基群记号），或直接写含 t 的字
- 虚自由群：WORD | COSET（COSET 为陪集字母名）
"""

import re
from typing import List, Tuple

from group_kernel.errors import GroupInputError
from group_kernel.kernel import generators, identity, mul, power
from group_kernel.structures import Element, GroupFamily, GroupHandle

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)(?:\^(-?\d+))?$")
_IDENTITY_TOKENS = {"", "1"}


def parse_element(G: GroupHandle, text: str) -> Element:
    """
    解析元素

    Raises:
        GroupInputError: 记号不合法或含未声明的生成元
    """
    text = text.strip()
    family = G.family
    if family == GroupFamily.SEMIDIRECT and ":" in text:
        t_part, base_part = text.split(":", 1)
        r = _parse_t_power(G, t_part.strip())
        return Element(G, (r, parse_element(G.base, base_part)))
    if family == GroupFamily.VIRTUALLY_FREE and "|" in text:
        word_part, coset_part = text.split("|", 1)
        coset = coset_part.strip()
        if coset not in G.coset_names:
            raise GroupInputError(f"未声明的陪集字母: {coset}")
        return Element(G, (parse_element(G.base, word_part), G.coset_names.index(coset)))
    if family == GroupFamily.ABELIAN and text.startswith("("):
        return Element(G, _parse_vector(G, text))
    if family == GroupFamily.FINITE and text.startswith("#"):
        try:
            index = int(text[1:])
        except ValueError as exc:
            raise GroupInputError(f"非法的元素下标: {text}") from exc
        if not 0 <= index < G.order:
            raise GroupInputError(f"元素下标越界: {text}")
        return Element(G, index)
    if family == GroupFamily.FINITE and text in G.element_names:
        return Element(G, G.element_names.index(text))
    return _parse_word(G, text)


def _parse_vector(G: GroupHandle, text: str) -> Tuple[int, ...]:
    if not text.endswith(")"):
        raise GroupInputError(f"向量缺少右括号: {text}")
    body = text[1:-1].strip()
    try:
        values = tuple(int(x) for x in body.split(",")) if body else ()
    except ValueError as exc:
        raise GroupInputError(f"向量分量必须是整数: {text}") from exc
    if len(values) != G.rank:
        raise GroupInputError(f"向量长度 {len(values)} 与秩 {G.rank} 不符")
    return values


def parse_tokens(text: str) -> List[Tuple[str, int]]:
    """把 'a b^-1 c^2' 拆成 [(name, exponent), ...]"""
    tokens = []
    for token in text.split():
        if token in _IDENTITY_TOKENS:
            continue
        match = _TOKEN.match(token)
        if not match:
            raise GroupInputError(f"非法的字记号: {token}")
        tokens.append((match.group(1), int(match.group(2)) if match.group(2) else 1))
    return tokens


def _parse_word(G: GroupHandle, text: str) -> Element:
    gens = generators(G)
    positions = {name: i for i, name in enumerate(G.generator_names)}
    result = identity(G)
    for name, exponent in parse_tokens(text):
        if name not in positions:
            raise GroupInputError(f"未声明的生成元: {name}")
        result = mul(G, result, power(gens[positions[name]], exponent))
    return result


def _parse_t_power(G: GroupHandle, text: str) -> int:
    t_name = G.generator_names[0]
    total = 0
    for name, exponent in parse_tokens(text):
        if name != t_name:
            raise GroupInputError(f"':' 左侧只能是 {t_name} 的幂: {text}")
        total += exponent
    return total


def format_word(names, letters) -> str:
    """把字母元组写成带幂的记号"""
    if not letters:
        return "1"
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        count = j - i
        letter = letters[i]
        exponent = count if letter > 0 else -count
        name = names[abs(letter) - 1]
        parts.append(name if exponent == 1 else f"{name}^{exponent}")
        i = j
    return " ".join(parts)


def format_element(g: Element) -> str:
    """与 parse_element 互逆的规范记号"""
    G = g.group
    family = G.family
    if family == GroupFamily.FREE:
        return format_word(G.generator_names, g.payload)
    if family == GroupFamily.ABELIAN:
        return "(" + ",".join(str(x) for x in g.payload) + ")"
    if family == GroupFamily.FINITE:
        if G.element_names:
            return G.element_names[g.payload]
        return f"#{g.payload}"
    if family == GroupFamily.SEMIDIRECT:
        r, base = g.payload
        return f"{G.generator_names[0]}^{r} : {format_element(base)}"
    if family == GroupFamily.VIRTUALLY_FREE:
        w, i = g.payload
        return f"{format_element(w)} | {G.coset_names[i]}"
    return repr(g.payload)
