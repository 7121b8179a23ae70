"""
边缘手术曲面的光滑区分判定

流程：爆破到 1−2g、确认 Y_{2g−1} 上 HF⁻ 顶端是秩1自由模、
计算各纽结的模2 Alexander 规范形、逐对比较。只会给出"可区分"或
"此不变量无法区分"，从不断言等价。
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import logging

from src.algebra.laurent_ring import LaurentPolynomial
from src.config.constants import CoefficientRing, Verdict
from src.config.settings import get_config
from src.homology.circle_bundle import FreeRankOne, hf_minus_large_positive
from src.knots.corpus import knot_alexander, load_corpus, resolve_knot
from src.knots.diagram import PlanarDiagram
from src.knots.skein import mod2_class_key, mod2_partition
from src.surgery.invariants import FormalInvariant, knot_surgery_multiply, unit_equivalent
from src.utils.errors import DomainError, ValidationError

logger = logging.getLogger(__name__)

KnotInput = Union[str, Tuple[str, PlanarDiagram]]


@dataclass
class PairVerdict:
    pair: Tuple[str, str]
    verdict: Verdict
    mod2_class_a: str
    mod2_class_b: str
    invariants_unit_equivalent: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'pair': list(self.pair),
            'verdict': self.verdict.value,
            'mod2_class_a': self.mod2_class_a,
            'mod2_class_b': self.mod2_class_b,
            'invariants_unit_equivalent': self.invariants_unit_equivalent,
        }


@dataclass
class RimSurgeryReport:
    genus: int
    self_intersection: int
    blowups_applied: int
    blowup_sequence: List[int]
    hf_top_structure: Dict[str, Any]
    alexander: Dict[str, str]
    classes: List[List[str]]
    pairs: List[PairVerdict] = field(default_factory=list)

    @property
    def all_distinct(self) -> bool:
        return all(p.verdict is Verdict.DISTINCT for p in self.pairs)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'genus': self.genus,
            'self_intersection': self.self_intersection,
            'blowups_applied': self.blowups_applied,
            'blowup_sequence': self.blowup_sequence,
            'hf_top_structure': self.hf_top_structure,
            'alexander': dict(self.alexander),
            'mod2_classes': self.classes,
            'pairs': [
                dict(p.to_dict(), blowups_applied=self.blowups_applied, hf_top_structure=self.hf_top_structure)
                for p in self.pairs
            ],
            'all_distinct': self.all_distinct,
        }


def blowup_sequence(g: int, n: int) -> List[int]:
    """从 Σ·Σ = n 逐次爆破到 1−2g 经过的自交数"""
    if g < 1:
        raise DomainError(f"亏格必须为正整数: g={g}")
    if n < 2 - 2 * g:
        raise DomainError(
            f"定理要求曲面自交数 n ≥ 2−2g = {2 - 2 * g}，实际 n={n}；"
            f"此时无法爆破到 1−2g 并使用 Y_{2 * g - 1} 的计算"
        )
    return list(range(n, -2 * g, -1))


def top_structure(g: int) -> Dict[str, Any]:
    """Y_{2g−1} 在 k = ±(g−1) 处 HF⁻ 的顶端直和项，必须是秩1自由模"""
    n = 2 * g - 1
    result = {}
    for k in sorted({g - 1, -(g - 1)}):
        description = hf_minus_large_positive(n, g, k)
        top = description.top_summand()
        if not isinstance(top, FreeRankOne):
            raise ValidationError(f"Y_{n} 在 k={k} 处 HF⁻ 的顶端不是秩1自由模: {top}")
        result[str(k)] = top.to_dict()
    return {'n': n, 'spinc': result}


def _named_diagrams(knots: Sequence[KnotInput]) -> List[Tuple[str, PlanarDiagram]]:
    corpus = None
    named = []
    for item in knots:
        if isinstance(item, str):
            if corpus is None:
                corpus = load_corpus()
            named.append((item, resolve_knot(item, corpus)))
        else:
            name, diagram = item
            named.append((str(name), diagram))
    names = [name for name, _ in named]
    if len(set(names)) != len(names):
        raise ValidationError(f"纽结名称重复: {names}")
    return named


def rim_surgery_verdict(
    g: int,
    n: int,
    knots: Sequence[KnotInput],
    workers: Optional[int] = None
) -> RimSurgeryReport:
    """对一族纽结做的边缘手术逐对给出判定"""
    sequence = blowup_sequence(g, n)
    blowups = len(sequence) - 1
    logger.info(f"爆破 {blowups} 次: {n} → {1 - 2 * g}")

    structure = top_structure(g)
    logger.info(f"Y_{2 * g - 1} 的 HF⁻ 顶端为秩1自由模")

    named = _named_diagrams(knots)
    if len(named) < 2:
        raise ValidationError("至少需要两个纽结才能比较")
    workers = workers or get_config().get('skein', {}).get('workers', 4)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        polys: List[LaurentPolynomial] = list(executor.map(lambda item: knot_alexander(item[1]), named))
    logger.info(f"已计算 {len(polys)} 个Alexander多项式")

    names = [name for name, _ in named]
    keys = [mod2_class_key(p) for p in polys]
    classes = [[names[i] for i in group] for group in mod2_partition(polys)]

    base = FormalInvariant.generator(("t",), CoefficientRing.MOD2)
    surgered = [knot_surgery_multiply(base, p, "t") for p in polys]

    pairs = []
    for i, j in combinations(range(len(named)), 2):
        equivalent = unit_equivalent(surgered[i], surgered[j])
        verdict = Verdict.DISTINCT if keys[i] != keys[j] else Verdict.NOT_DISTINGUISHED
        if equivalent == (verdict is Verdict.DISTINCT):
            raise ValidationError(f"{names[i]} 与 {names[j]} 的模2类比较与不变量比较不一致")
        pairs.append(PairVerdict((names[i], names[j]), verdict, keys[i], keys[j], equivalent))

    distinct = sum(1 for p in pairs if p.verdict is Verdict.DISTINCT)
    logger.info(f"判定完成: {distinct}/{len(pairs)} 对可区分")
    return RimSurgeryReport(
        g, n, blowups, sequence, structure,
        {name: str(p) for name, p in zip(names, polys)}, classes, pairs
    )
