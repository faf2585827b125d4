"""
自由群字操作

字母用非零整数表示：+i 为第 i 个生成元，-i 为其逆。
所有函数只处理元组，不涉及 GroupHandle。
"""

from typing import Iterable, Tuple

Word = Tuple[int, ...]


def reduce_word(letters: Iterable[int]) -> Word:
    """自由约化（栈式消去相邻互逆字母）"""
    stack = []
    for letter in letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def concat(u: Word, v: Word) -> Word:
    """约化字的乘积，只需在接缝处消去"""
    i = 0
    limit = min(len(u), len(v))
    while i < limit and u[len(u) - 1 - i] == -v[i]:
        i += 1
    return u[: len(u) - i] + v[i:]


def invert(u: Word) -> Word:
    return tuple(-letter for letter in reversed(u))


def word_power(u: Word, n: int) -> Word:
    if n < 0:
        return word_power(invert(u), -n)
    result: Word = ()
    base = u
    while n:
        if n & 1:
            result = concat(result, base)
        base = concat(base, base)
        n >>= 1
    return result


def is_reduced(u: Word) -> bool:
    return all(u[i] != -u[i + 1] for i in range(len(u) - 1))


def cyclic_reduce_word(u: Word) -> Tuple[Word, Word]:
    """
    循环约化

    Returns:
        (core, conjugator)，满足 u = conjugator^{-1} · core · conjugator
    """
    k = 0
    n = len(u)
    while k < n - 1 - k and u[k] == -u[n - 1 - k]:
        k += 1
    core = u[k : n - k]
    conjugator = invert(u[:k])
    return core, conjugator


def rotations(u: Word):
    """循环置换 (p, q) 使 u = p q，产出 (offset, q p)"""
    for offset in range(max(len(u), 1)):
        yield offset, u[offset:] + u[:offset]


def letter_order_key(letter: int) -> Tuple[int, int]:
    """字母的确定性顺序：a, a^-1, b, b^-1, ..."""
    return abs(letter), 0 if letter > 0 else 1


def alphabet(rank: int) -> Tuple[int, ...]:
    """按 letter_order_key 排序的全部字母"""
    letters = []
    for i in range(1, rank + 1):
        letters.extend((i, -i))
    return tuple(letters)
