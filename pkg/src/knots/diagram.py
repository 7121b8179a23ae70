"""
平面图（PD码）

X(a,b,c,d) 按逆时针列出，从进入的下行线开始；下行线 a → c。
上行线 d → b 为正交叉，b → d 为负交叉。符号在解析时由定向传播算出。
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from src.utils.errors import ParseError, ValidationError

logger = logging.getLogger(__name__)

Crossing = Tuple[int, int, int, int]

_CROSSING = re.compile(r'X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]')

# 槽位编号
A, B, C, D = 0, 1, 2, 3


class _UnionFind:
    def __init__(self):
        self.parent: Dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


@dataclass(frozen=True)
class PlanarDiagram:
    """
    带定向的平面图

    free_loops 为不参与任何交叉的平凡圈个数（空PD码即平凡纽结）。
    """
    crossings: Tuple[Crossing, ...]
    signs: Tuple[int, ...]
    free_loops: int = 0

    def __post_init__(self):
        if len(self.crossings) != len(self.signs):
            raise ValidationError("交叉个数与符号个数不符")
        counts: Dict[int, int] = {}
        for crossing in self.crossings:
            for label in crossing:
                counts[label] = counts.get(label, 0) + 1
        bad = sorted(label for label, c in counts.items() if c != 2)
        if bad:
            raise ParseError(f"弧标签必须恰好出现两次，出错的标签: {bad}")

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def arc_count(self) -> int:
        return len({label for crossing in self.crossings for label in crossing})

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @property
    def component_count(self) -> int:
        uf = _UnionFind()
        for a, b, c, d in self.crossings:
            uf.union(a, c)
            uf.union(b, d)
        roots = {uf.find(label) for crossing in self.crossings for label in crossing}
        return len(roots) + self.free_loops

    def is_knot(self) -> bool:
        return self.component_count == 1

    def over_in_slot(self, index: int) -> int:
        """上行线进入的槽位"""
        return D if self.signs[index] > 0 else B

    def over_out_slot(self, index: int) -> int:
        return B if self.signs[index] > 0 else D

    def to_pd(self) -> str:
        return ";".join(f"X({a},{b},{c},{d})" for a, b, c, d in self.crossings)

    def to_dict(self) -> dict:
        return {
            'pd': self.to_pd(),
            'signs': list(self.signs),
            'free_loops': self.free_loops,
            'components': self.component_count,
        }


def orient_crossings(crossings: Sequence[Crossing]) -> Tuple[int, ...]:
    """
    由下行线方向传播出每条弧的定向，返回交叉符号

    完全不经过下方的分支没有约束，任取一个方向。
    """
    slots: Dict[int, List[Tuple[int, int]]] = {}
    for index, crossing in enumerate(crossings):
        for slot, label in enumerate(crossing):
            slots.setdefault(label, []).append((index, slot))

    # True 表示该槽位是弧进入交叉的一端
    incoming: Dict[Tuple[int, int], bool] = {}
    queue: List[Tuple[Tuple[int, int], bool]] = []
    for index in range(len(crossings)):
        queue.append(((index, A), True))
        queue.append(((index, C), False))

    def partner(slot_key: Tuple[int, int]) -> Tuple[int, int]:
        label = crossings[slot_key[0]][slot_key[1]]
        first, second = slots[label]
        return second if first == slot_key else first

    def drain():
        while queue:
            key, value = queue.pop()
            if key in incoming:
                if incoming[key] != value:
                    raise ParseError(f"交叉 {key[0] + 1} 处的定向不一致")
                continue
            incoming[key] = value
            queue.append((partner(key), not value))
            index, slot = key
            if slot in (B, D):
                queue.append(((index, D if slot == B else B), not value))

    drain()
    for index in range(len(crossings)):
        if (index, B) not in incoming:
            logger.debug(f"交叉 {index + 1} 的上行线分支没有约束，任取定向")
            queue.append(((index, D), True))
            drain()

    return tuple(1 if incoming[(index, D)] else -1 for index in range(len(crossings)))


def from_crossings(crossings: Sequence[Crossing], free_loops: int = 0) -> PlanarDiagram:
    crossings = tuple(tuple(c) for c in crossings)
    # 先做标签计数检查，再传播定向
    PlanarDiagram(crossings, (1,) * len(crossings), free_loops)
    return PlanarDiagram(crossings, orient_crossings(crossings), free_loops)


def parse_pd(text: str) -> PlanarDiagram:
    """解析 `X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)`，空串为平凡纽结"""
    body = (text or '').strip()
    if not body:
        return PlanarDiagram((), (), free_loops=1)
    crossings = []
    position = 0
    for match in _CROSSING.finditer(body):
        gap = body[position:match.start()].strip(' ;,\n\t')
        if gap:
            raise ParseError(f"PD码中无法识别的内容: {gap!r}")
        crossings.append(tuple(int(x) for x in match.groups()))
        position = match.end()
    if body[position:].strip(' ;,\n\t'):
        raise ParseError(f"PD码中无法识别的内容: {body[position:]!r}")
    if not crossings:
        raise ParseError(f"PD码中没有交叉: {text!r}")
    return from_crossings(crossings)


def _relabel(crossings: Sequence[Crossing], uf: _UnionFind) -> Tuple[Crossing, ...]:
    return tuple(tuple(uf.find(label) for label in crossing) for crossing in crossings)


def _closed_loops(labels: Sequence[int], remaining: Sequence[Crossing], uf: _UnionFind) -> int:
    """删去交叉后不再出现的标签类即为新产生的平凡圈"""
    present = {uf.find(label) for crossing in remaining for label in crossing}
    classes = {uf.find(label) for label in labels}
    return len(classes - present)


def crossing_change(diagram: PlanarDiagram, index: int) -> PlanarDiagram:
    """在第 index 个交叉处交换上下"""
    a, b, c, d = diagram.crossings[index]
    sign = diagram.signs[index]
    changed = (d, a, b, c) if sign > 0 else (b, c, d, a)
    crossings = list(diagram.crossings)
    crossings[index] = changed
    signs = list(diagram.signs)
    signs[index] = -sign
    return PlanarDiagram(tuple(crossings), tuple(signs), diagram.free_loops)


def oriented_smoothing(diagram: PlanarDiagram, index: int) -> PlanarDiagram:
    """按定向消去第 index 个交叉"""
    a, b, c, d = diagram.crossings[index]
    uf = _UnionFind()
    if diagram.signs[index] > 0:
        uf.union(a, b)
        uf.union(d, c)
    else:
        uf.union(a, d)
        uf.union(b, c)
    remaining = diagram.crossings[:index] + diagram.crossings[index + 1:]
    loops = _closed_loops((a, b, c, d), remaining, uf)
    signs = diagram.signs[:index] + diagram.signs[index + 1:]
    return PlanarDiagram(_relabel(remaining, uf), signs, diagram.free_loops + loops)


def _kink_index(diagram: PlanarDiagram) -> Optional[int]:
    for index, crossing in enumerate(diagram.crossings):
        for slot in range(4):
            if crossing[slot] == crossing[(slot + 1) % 4]:
                return index
    return None


def remove_kinks(diagram: PlanarDiagram) -> PlanarDiagram:
    """反复做第一类Reidemeister移动，去掉所有单交叉小圈"""
    while True:
        index = _kink_index(diagram)
        if index is None:
            return diagram
        crossing = diagram.crossings[index]
        slot = next(s for s in range(4) if crossing[s] == crossing[(s + 1) % 4])
        others = [crossing[(slot + 2) % 4], crossing[(slot + 3) % 4]]
        uf = _UnionFind()
        uf.union(others[0], others[1])
        remaining = diagram.crossings[:index] + diagram.crossings[index + 1:]
        loops = _closed_loops(others, remaining, uf)
        signs = diagram.signs[:index] + diagram.signs[index + 1:]
        diagram = PlanarDiagram(_relabel(remaining, uf), signs, diagram.free_loops + loops)


def braid_closure(word: Sequence[int], strands: Optional[int] = None) -> PlanarDiagram:
    """
    辫子 σ_{i}^{±1} 的闭包

    辫子向上走；σ_i 的正幂交换第 i、i+1 条线，左下的线从上方穿过。
    """
    if any(g == 0 for g in word):
        raise ParseError("辫子生成元不能为 0")
    needed = max((abs(g) for g in word), default=0) + 1
    strands = strands or max(needed, 1)
    if strands < needed:
        raise ParseError(f"辫子用到 σ_{needed - 1}，至少需要 {needed} 条线")

    labels = list(range(1, strands + 1))
    next_label = strands + 1
    crossings: List[Crossing] = []
    for generator in word:
        i = abs(generator) - 1
        x, y = labels[i], labels[i + 1]
        p, q = next_label, next_label + 1
        next_label += 2
        if generator > 0:
            crossings.append((y, q, p, x))
        else:
            crossings.append((x, y, q, p))
        labels[i], labels[i + 1] = p, q

    # 顶端与底端粘合
    uf = _UnionFind()
    for position, final in enumerate(labels):
        uf.union(position + 1, final)
    free_loops = sum(1 for position, final in enumerate(labels) if final == position + 1)
    glued = _relabel(crossings, uf)

    order: Dict[int, int] = {}
    for crossing in glued:
        for label in crossing:
            order.setdefault(label, len(order) + 1)
    compact = tuple(tuple(order[label] for label in crossing) for crossing in glued)
    logger.debug(f"辫子闭包: {len(word)} 个交叉，{strands} 条线")
    return from_crossings(compact, free_loops)


def torus_knot_2(crossing_count: int) -> PlanarDiagram:
    """T(2, m) 作为 σ₁^m 的闭包"""
    if crossing_count == 0:
        raise ParseError("T(2, 0) 不是纽结")
    generator = 1 if crossing_count > 0 else -1
    return braid_closure([generator] * abs(crossing_count), 2)


def traverse(diagram: PlanarDiagram, start: int) -> List[Tuple[int, bool, int]]:
    """
    从弧 start 沿定向走一圈

    返回依次经过的 (交叉, 是否从上方经过, 离开时的弧)，最后一条弧是 start。
    """
    heads: Dict[int, Tuple[int, int]] = {}
    for index, crossing in enumerate(diagram.crossings):
        heads[crossing[A]] = (index, A)
        heads[crossing[diagram.over_in_slot(index)]] = (index, diagram.over_in_slot(index))

    path = []
    label = start
    for _ in range(2 * len(diagram.crossings) + 1):
        index, slot = heads[label]
        over = slot != A
        out_slot = C if not over else diagram.over_out_slot(index)
        label = diagram.crossings[index][out_slot]
        path.append((index, over, label))
        if label == start:
            return path
    raise ValidationError(f"从弧 {start} 出发的遍历没有闭合")
