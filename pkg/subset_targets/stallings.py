"""
Stallings 自动机

有限生成子群 H ≤ F 的折叠核心图：确定、逆封闭（p -a-> q 蕴含 q -a^-1-> p），
除基点外每个状态度数 ≥ 2。状态按 BFS（字母序 a, a^-1, b, b^-1, ...）规范编号，
因此同一子群总得到完全相同的自动机，与生成元顺序和折叠顺序无关。
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from group_kernel import words as fw
from group_kernel.errors import ErrorMessages, GroupInputError
from group_kernel.structures import Element, GroupFamily, GroupHandle

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]  # (source, letter, target)


@dataclass(frozen=True)
class StallingsAutomaton:
    """
    折叠后的核心自动机（基点恒为状态 0）

    transitions[p] 为 ((letter, q), ...)，按 letter_order_key 排序，含逆边。
    """

    group: GroupHandle = field(compare=False)
    transitions: Tuple[Tuple[Tuple[int, int], ...], ...]
    _delta: Tuple[Dict[int, int], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_delta", tuple(dict(row) for row in self.transitions))

    def __hash__(self):
        return hash((id(self.group), self.transitions))

    @property
    def base(self) -> int:
        return 0

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    @property
    def num_edges(self) -> int:
        """无向边数（每条边只计一次）"""
        return sum(len(row) for row in self.transitions) // 2

    @property
    def rank(self) -> int:
        """子群的秩 = 边数 - 状态数 + 1"""
        return self.num_edges - self.num_states + 1

    def step(self, state: int, letter: int) -> Optional[int]:
        return self._delta[state].get(letter)

    def read(self, state: Optional[int], letters: Iterable[int]) -> Optional[int]:
        """从 state 读字，途中无边时返回 None"""
        for letter in letters:
            if state is None:
                return None
            state = self._delta[state].get(letter)
        return state

    def accepts(self, word: Sequence[int]) -> bool:
        return self.read(self.base, fw.reduce_word(word)) == self.base

    def edges(self) -> List[Edge]:
        """全部正向边 (p, a, q)，a > 0"""
        return [(p, letter, q) for p, row in enumerate(self.transitions) for letter, q in row if letter > 0]

    def tree_paths(self) -> Tuple[Tuple[int, ...], ...]:
        """BFS 生成树：从基点到每个状态的字"""
        paths: List[Optional[Tuple[int, ...]]] = [None] * self.num_states
        paths[0] = ()
        queue = deque([0])
        while queue:
            p = queue.popleft()
            for letter, q in self.transitions[p]:
                if paths[q] is None:
                    paths[q] = paths[p] + (letter,)
                    queue.append(q)
        return tuple(paths)

    def path_to(self, state: int) -> Tuple[int, ...]:
        return self.tree_paths()[state]

    def generator_words(self) -> List[Tuple[int, ...]]:
        """生成树之外的每条正向边给出一个自由生成元"""
        paths = self.tree_paths()
        tree = set()
        for q in range(1, self.num_states):
            p = self.read(0, paths[q][:-1])
            letter = paths[q][-1]
            tree.add((p, letter, q) if letter > 0 else (q, -letter, p))
        result = []
        for p, letter, q in self.edges():
            if (p, letter, q) in tree:
                continue
            result.append(fw.concat(fw.concat(paths[p], (letter,)), fw.invert(paths[q])))
        return result

    def generators(self) -> List[Element]:
        return [Element(self.group, w) for w in self.generator_words()]

    def is_trivial(self) -> bool:
        return self.num_states == 1 and not self.transitions[0]


# ==================== 折叠 ====================


class _Folder:
    """并查集折叠（合并到较小的下标，使基点保持为根）"""

    def __init__(self, num_states: int):
        self.parent = list(range(num_states))
        self.out: List[Dict[int, int]] = [dict() for _ in range(num_states)]
        self.pending: List[Tuple[int, int]] = []

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def add_state(self) -> int:
        self.parent.append(len(self.parent))
        self.out.append({})
        return len(self.parent) - 1

    def add_edge(self, p: int, letter: int, q: int) -> None:
        p, q = self.find(p), self.find(q)
        for source, label, target in ((p, letter, q), (q, -letter, p)):
            existing = self.out[source].get(label)
            if existing is None:
                self.out[source][label] = target
            else:
                self.pending.append((existing, target))
        self.fold()

    def fold(self) -> None:
        while self.pending:
            a, b = self.pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            moved = self.out[b]
            self.out[b] = {}
            for label, target in moved.items():
                existing = self.out[a].get(label)
                if existing is None:
                    self.out[a][label] = target
                else:
                    self.pending.append((existing, target))

    def add_path(self, start: int, word: Sequence[int], end: int) -> None:
        """从 start 到 end 读 word 的路径（中间状态新建）"""
        if not word:
            self.pending.append((start, end))
            self.fold()
            return
        current = start
        for i, letter in enumerate(word):
            target = end if i == len(word) - 1 else self.add_state()
            self.add_edge(current, letter, target)
            current = target

    def graph(self) -> Dict[int, Dict[int, int]]:
        roots = {}
        for x in range(len(self.parent)):
            if self.find(x) == x:
                roots[x] = {label: self.find(t) for label, t in self.out[x].items()}
        return roots


def _core(group: GroupHandle, graph: Dict[int, Dict[int, int]], base: int) -> StallingsAutomaton:
    """剪去非基点的悬挂状态，再按 BFS 规范编号"""
    graph = {p: dict(row) for p, row in graph.items()}
    queue = deque(p for p in graph if p != base and len(graph[p]) <= 1)
    while queue:
        p = queue.popleft()
        if p not in graph or p == base or len(graph[p]) > 1:
            continue
        for label, q in graph.pop(p).items():
            if q in graph:
                graph[q].pop(-label, None)
                if q != base and len(graph[q]) <= 1:
                    queue.append(q)

    numbering = {base: 0}
    order = [base]
    queue = deque([base])
    while queue:
        p = queue.popleft()
        for label in sorted(graph[p], key=fw.letter_order_key):
            q = graph[p][label]
            if q not in numbering:
                numbering[q] = len(order)
                order.append(q)
                queue.append(q)
    transitions = tuple(
        tuple(
            (label, numbering[graph[p][label]])
            for label in sorted(graph[p], key=fw.letter_order_key)
        )
        for p in order
    )
    return StallingsAutomaton(group=group, transitions=transitions)


def stallings_core(gens: Sequence[Element], group: Optional[GroupHandle] = None) -> StallingsAutomaton:
    """
    生成元的折叠核心自动机

    Args:
        gens: 自由群元素（空列表表示平凡子群，此时需给出 group）

    Raises:
        GroupInputError: 元素不在同一个自由群中
    """
    if gens:
        group = gens[0].group
    if group is None or group.family != GroupFamily.FREE:
        raise GroupInputError(ErrorMessages.FAMILY_UNSUPPORTED.format(family=getattr(group, "family", None), operation="stallings_core"))
    folder = _Folder(1)
    for g in gens:
        if g.group is not group:
            raise GroupInputError(ErrorMessages.GROUP_MISMATCH.format(group=group))
        if g.payload:
            folder.add_path(0, g.payload, 0)
    automaton = _core(group, folder.graph(), folder.find(0))
    logger.debug("Stallings 折叠完成: %d 个状态, 秩 %d", automaton.num_states, automaton.rank)
    return automaton


def fold_edges(group: GroupHandle, num_states: int, edges: Sequence[Edge], order: Optional[Sequence[int]] = None) -> StallingsAutomaton:
    """按给定顺序插入边并折叠（用于检查折叠顺序无关性）"""
    folder = _Folder(num_states)
    sequence = [edges[i] for i in order] if order is not None else list(edges)
    for p, letter, q in sequence:
        folder.add_edge(p, letter, q)
    return _core(group, folder.graph(), folder.find(0))


def bouquet_edges(gens: Sequence[Element]) -> Tuple[int, List[Edge]]:
    """未折叠的花束图：每个生成元一条从基点出发回到基点的环"""
    edges: List[Edge] = []
    count = 1
    for g in gens:
        word = g.payload
        if not word:
            continue
        current = 0
        for i, letter in enumerate(word):
            if i == len(word) - 1:
                target = 0
            else:
                target = count
                count += 1
            edges.append((current, letter, target))
            current = target
    return count, edges


# ==================== 由自动机派生的构造 ====================


def intersect(A: StallingsAutomaton, B: StallingsAutomaton) -> StallingsAutomaton:
    """H1 ∩ H2：乘积自动机在 (基点, 基点) 所在分支的核心"""
    start = (0, 0)
    index = {start: 0}
    graph: Dict[int, Dict[int, int]] = {0: {}}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        source = index[(p, q)]
        for letter, p2 in A.transitions[p]:
            q2 = B.step(q, letter)
            if q2 is None:
                continue
            pair = (p2, q2)
            if pair not in index:
                index[pair] = len(index)
                graph[index[pair]] = {}
                queue.append(pair)
            graph[source][letter] = index[pair]
    return _core(A.group, graph, 0)


def conjugate_by(A: StallingsAutomaton, c: Element) -> StallingsAutomaton:
    """c^{-1} H c 的自动机"""
    word = c.payload
    gens = [Element(A.group, fw.concat(fw.concat(fw.invert(word), g), word)) for g in A.generator_words()]
    return stallings_core(gens, A.group)


def coset_meeting_point(H1: StallingsAutomaton, x: Element, H2: StallingsAutomaton) -> Optional[Element]:
    """
    求 y ∈ H2 ∩ x·H1（不存在时返回 None）

    在 Γ(H1) 上接一条从新点 o 读 x 到基点的毛发并折叠，x·H1 即从 o 到基点的路径标签；
    与 Γ(H2) 做乘积搜索，最短路径即给出 y。
    """
    folder = _Folder(H1.num_states)
    for p, letter, q in H1.edges():
        folder.add_edge(p, letter, q)
    origin = folder.add_state()
    folder.add_path(origin, x.payload, 0)
    graph = folder.graph()
    start_a, goal_a = folder.find(origin), folder.find(0)

    start = (start_a, 0)
    goal = (goal_a, 0)
    previous: Dict[Tuple[int, int], Optional[Tuple[Tuple[int, int], int]]] = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if node == goal:
            letters = []
            while previous[node] is not None:
                node, letter = previous[node]
                letters.append(letter)
            return Element(x.group, fw.reduce_word(reversed(letters)))
        p, q = node
        for letter in sorted(graph[p], key=fw.letter_order_key):
            q2 = H2.step(q, letter)
            if q2 is None:
                continue
            nxt = (graph[p][letter], q2)
            if nxt not in previous:
                previous[nxt] = (node, letter)
                queue.append(nxt)
    return None
