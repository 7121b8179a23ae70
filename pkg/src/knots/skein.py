"""
Alexander/Conway多项式的两条计算路线

1. 矩阵路线：Wirtinger表示的Fox导数矩阵，删去一行一列求行列式；
2. 拆解树路线：按 Θ(K₊) = Θ(K₋) + z·Θ(K₀) 递推，再代入 z² = t − 2 + t⁻¹。
"""

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import logging

import sympy

from src.algebra.laurent_ring import LaurentPolynomial, expand_z_square
from src.config.constants import CoefficientRing
from src.homology.matrices import PolyMatrix
from src.homology.smith import SmithForm, smith_normal_form
from src.knots.diagram import (
    PlanarDiagram,
    _UnionFind,
    crossing_change,
    oriented_smoothing,
    remove_kinks,
    traverse,
)
from src.utils.errors import DomainError, ParityError, ParseError, ValidationError

logger = logging.getLogger(__name__)

_T = sympy.Symbol('t')


def _symmetrize(poly: LaurentPolynomial) -> LaurentPolynomial:
    """平移成对称形式，并取 Δ(1) = 1 的符号"""
    terms = poly.univariate_terms()
    low, high = min(terms), max(terms)
    if (high - low) % 2:
        raise ParityError(f"多项式 {poly} 的次数跨度为奇数，不是纽结的Alexander多项式")
    centered = poly.shift((-(low + high) // 2,))
    value = centered.augmentation()
    if value not in (1, -1):
        raise DomainError(f"Δ(1) = {value}，不是纽结的Alexander多项式")
    return centered if value == 1 else -centered


def alexander_matrix(diagram: PlanarDiagram) -> sympy.Matrix:
    """Fox导数交换化后的 Alexander 矩阵（行为交叉，列为Wirtinger弧）"""
    uf = _UnionFind()
    for a, b, c, d in diagram.crossings:
        uf.union(b, d)
    arcs: Dict[int, int] = {}
    for a, b, c, d in diagram.crossings:
        arcs.setdefault(uf.find(b), len(arcs))
    size = len(diagram.crossings)
    if len(arcs) != size:
        raise DomainError(f"Wirtinger弧数 {len(arcs)} 与交叉数 {size} 不符（某个分支从不在下方经过）")

    matrix = sympy.zeros(size, size)
    for row, (a, b, c, d) in enumerate(diagram.crossings):
        over = arcs[uf.find(b)]
        incoming = arcs[uf.find(a)]
        outgoing = arcs[uf.find(c)]
        if diagram.signs[row] > 0:
            matrix[row, over] += 1 - _T
            matrix[row, incoming] += _T
            matrix[row, outgoing] += -1
        else:
            matrix[row, over] += _T - 1
            matrix[row, incoming] += 1
            matrix[row, outgoing] += -_T
    return matrix


def alexander_from_diagram(diagram: PlanarDiagram) -> LaurentPolynomial:
    """矩阵路线：对称化且 Δ(1) = 1 的Alexander多项式"""
    if not diagram.is_knot():
        raise DomainError(f"矩阵路线只接受纽结，输入有 {diagram.component_count} 个分支，请用拆解树路线")
    diagram = remove_kinks(diagram)
    if not diagram.crossings:
        return LaurentPolynomial.one(("t",))

    matrix = alexander_matrix(diagram)
    minor = matrix[:-1, :-1]
    det = sympy.expand(minor.det(method='berkowitz'))
    if det == 0:
        raise DomainError("Alexander矩阵的子式为零")
    coefficients = sympy.Poly(det, _T).as_dict()
    poly = LaurentPolynomial.from_univariate(
        {exp[0]: int(c) for exp, c in coefficients.items()}, "t"
    )
    logger.debug(f"矩阵路线: {diagram.crossing_count} 个交叉，行列式 {poly}")
    return _symmetrize(poly)


def alexander_module_smith(diagram: PlanarDiagram) -> SmithForm:
    """Alexander矩阵在 ℚ[t^±] 上的Smith标准形（不变因子之积即 Δ，差一个单位）"""
    diagram = remove_kinks(diagram)
    if not diagram.crossings:
        raise DomainError("没有交叉的图，Alexander矩阵为空")
    matrix = alexander_matrix(diagram)
    rows = [
        [
            LaurentPolynomial.from_univariate(
                {exp[0]: int(c) for exp, c in sympy.Poly(matrix[i, j], _T).as_dict().items()},
                "t", CoefficientRing.RATIONALS
            )
            for j in range(matrix.cols)
        ]
        for i in range(matrix.rows)
    ]
    return smith_normal_form(PolyMatrix.from_rows(rows))


@dataclass(frozen=True)
class Leaf:
    """标准叶子：c 个分支的平凡链环"""
    components: int


@dataclass(frozen=True)
class Branch:
    """
    在一个交叉处的拆解

    negative_child 非空表示当前是 K₊，positive_child 非空表示当前是 K₋；
    resolved_child 为定向消解 K₀。
    """
    crossing: int
    resolved_child: "ResolutionTree"
    positive_child: Optional["ResolutionTree"] = None
    negative_child: Optional["ResolutionTree"] = None


ResolutionTree = Union[Leaf, Branch]


def _check_branch(node: Branch):
    if (node.positive_child is None) == (node.negative_child is None):
        raise ValidationError(f"交叉 {node.crossing} 处的分支必须恰好有一个正/负子树")


def conway_from_tree(tree: ResolutionTree) -> LaurentPolynomial:
    """按拆解树计算 z 的多项式（链环也适用）"""
    z = LaurentPolynomial.variable("z", ("z",))
    # 显式栈，避免深树递归
    results: Dict[int, LaurentPolynomial] = {}
    stack: List[Tuple[ResolutionTree, bool]] = [(tree, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Leaf):
            if node.components < 1:
                raise ValidationError(f"叶子的分支数必须为正: {node.components}")
            results[id(node)] = LaurentPolynomial.one(("z",)) if node.components == 1 \
                else LaurentPolynomial.zero(("z",))
            continue
        if not isinstance(node, Branch):
            raise ValidationError(f"无法识别的树节点: {node!r}")
        _check_branch(node)
        switched = node.negative_child if node.negative_child is not None else node.positive_child
        if not expanded:
            stack.append((node, True))
            stack.append((switched, False))
            stack.append((node.resolved_child, False))
            continue
        resolved = results[id(node.resolved_child)]
        other = results[id(switched)]
        if node.negative_child is not None:
            results[id(node)] = other + z * resolved
        else:
            results[id(node)] = other - z * resolved
    return results[id(tree)]


def theta_from_tree(tree: ResolutionTree) -> LaurentPolynomial:
    """拆解树路线得到的对称Alexander多项式"""
    return expand_z_square(conway_from_tree(tree))


def tree_size(tree: ResolutionTree) -> int:
    if isinstance(tree, Leaf):
        return 1
    switched = tree.negative_child if tree.negative_child is not None else tree.positive_child
    return 1 + tree_size(switched) + tree_size(tree.resolved_child)


def _components_of(diagram: PlanarDiagram) -> List[List[int]]:
    """每个有交叉的分支上的弧标签（按遍历顺序）"""
    seen = set()
    components = []
    for crossing in diagram.crossings:
        for label in crossing:
            if label in seen:
                continue
            labels = [label] + [out for _, _, out in traverse(diagram, label)][:-1]
            seen.update(labels)
            components.append(labels)
    return components


def _first_bad_crossing(diagram: PlanarDiagram, starts: Sequence[int]) -> Tuple[int, Optional[int]]:
    """按给定起点依次遍历；返回 (先从下方遇到的交叉数, 第一个这样的交叉)"""
    met = set()
    bad_count = 0
    first_bad = None
    for start in starts:
        for index, over, _ in traverse(diagram, start):
            if index in met:
                continue
            met.add(index)
            if not over:
                bad_count += 1
                if first_bad is None:
                    first_bad = index
    return bad_count, first_bad


def _best_traversal(diagram: PlanarDiagram) -> List[int]:
    """搜索分支顺序与起点，使先从下方遇到的交叉最少；返回各分支的起点"""
    components = _components_of(diagram)
    best_count = len(diagram.crossings) + 1
    best_starts: List[int] = []
    orders = itertools.islice(itertools.permutations(range(len(components))), 24)
    for order in orders:
        starts: List[int] = []
        for position in order:
            candidates = components[position]
            choice = min(
                candidates,
                key=lambda s: _first_bad_crossing(diagram, starts + [s])[0]
            )
            starts.append(choice)
        count, _ = _first_bad_crossing(diagram, starts)
        if count < best_count:
            best_count, best_starts = count, starts
        if best_count == 0:
            break
    return best_starts


def _descend(diagram: PlanarDiagram, starts: Sequence[int]) -> ResolutionTree:
    """固定起点，逐个改变先从下方遇到的交叉，直到图变成下降图"""
    _, index = _first_bad_crossing(diagram, starts)
    if index is None:
        return Leaf(diagram.component_count)
    # 改变交叉不改标签，起点仍然有效
    switched = _descend(crossing_change(diagram, index), starts)
    resolved = resolution_tree(oriented_smoothing(diagram, index))
    if diagram.signs[index] > 0:
        return Branch(index, resolved, negative_child=switched)
    return Branch(index, resolved, positive_child=switched)


def resolution_tree(diagram: PlanarDiagram) -> ResolutionTree:
    """
    用下降图构造拆解树

    在第一个先从下方遇到的交叉处改变交叉并做定向消解；
    图变成下降图时即为平凡链环。
    """
    diagram = remove_kinks(diagram)
    if not diagram.crossings:
        return Leaf(diagram.component_count)
    return _descend(diagram, _best_traversal(diagram))


def tree_to_dict(tree: ResolutionTree) -> Dict[str, Any]:
    if isinstance(tree, Leaf):
        return {'leaf': True, 'components': tree.components}
    data: Dict[str, Any] = {'crossing': tree.crossing, 'resolved_child': tree_to_dict(tree.resolved_child)}
    if tree.positive_child is not None:
        data['positive_child'] = tree_to_dict(tree.positive_child)
    if tree.negative_child is not None:
        data['negative_child'] = tree_to_dict(tree.negative_child)
    return data


def tree_from_dict(data: Dict[str, Any]) -> ResolutionTree:
    if not isinstance(data, dict):
        raise ParseError(f"树节点必须是JSON对象: {data!r}")
    if data.get('leaf'):
        try:
            return Leaf(int(data['components']))
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"叶子缺少 components 字段: {data!r}")
    if 'resolved_child' not in data:
        raise ValidationError(f"分支缺少 resolved_child: {data!r}")
    node = Branch(
        int(data.get('crossing', 0)),
        tree_from_dict(data['resolved_child']),
        tree_from_dict(data['positive_child']) if 'positive_child' in data else None,
        tree_from_dict(data['negative_child']) if 'negative_child' in data else None,
    )
    _check_branch(node)
    return node


def load_tree(path: Union[str, Path]) -> ResolutionTree:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return tree_from_dict(json.load(f))
    except json.JSONDecodeError as e:
        raise ParseError(f"拆解树文件不是合法JSON: {e}")
    except OSError as e:
        raise ParseError(f"无法读取拆解树文件 {path}: {e}")


def mod2_class_key(poly: LaurentPolynomial) -> str:
    """模2约化再规范化到单位元代表"""
    return str(poly.reduce_mod2().normalize_up_to_unit())


def mod2_partition(polys: Sequence[LaurentPolynomial]) -> List[List[int]]:
    """按模2规范形分类，返回各类的下标（按首次出现顺序）"""
    classes: Dict[str, List[int]] = {}
    for index, poly in enumerate(polys):
        classes.setdefault(mod2_class_key(poly), []).append(index)
    return list(classes.values())
