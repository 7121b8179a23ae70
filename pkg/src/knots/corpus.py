"""内置纽结表：按名称取图、期望多项式与批量报告"""

import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union
import logging

import pandas as pd

from src.algebra.laurent_ring import LaurentPolynomial, contract_to_z_square
from src.config.settings import get_config
from src.knots.diagram import PlanarDiagram, braid_closure, torus_knot_2
from src.knots.skein import (
    alexander_from_diagram,
    mod2_class_key,
    resolution_tree,
    theta_from_tree,
    tree_size,
)
from src.utils.errors import ParseError, ValidationError

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent

_TORUS = re.compile(r'^T\(\s*2\s*,\s*(-?\d+)\s*\)$')
_ALIASES = {
    'unknot': '0_1',
    'trefoil': '3_1',
    'figure-eight': '4_1',
    'figure_eight': '4_1',
}


@dataclass(frozen=True)
class KnotRecord:
    """纽结表中的一条记录"""
    name: str
    braid: tuple
    strands: int
    alexander: str
    tree: bool = True

    def diagram(self) -> PlanarDiagram:
        return braid_closure(list(self.braid), self.strands)

    def expected(self) -> LaurentPolynomial:
        return LaurentPolynomial.parse(self.alexander, ("t",))


def _resolve_path(path: Union[str, Path, None]) -> Path:
    if path is None:
        path = get_config().get('corpus', {}).get('path', './data/knots/corpus.json')
    candidate = Path(path)
    if not candidate.exists() and not candidate.is_absolute():
        candidate = PROJECT_ROOT / candidate
    return candidate


def load_corpus(path: Union[str, Path, None] = None) -> Dict[str, KnotRecord]:
    """读取纽结表，返回 名称 → 记录"""
    corpus_file = _resolve_path(path)
    try:
        with open(corpus_file, 'r', encoding='utf-8') as f:
            payload = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"纽结表不是合法JSON: {e}")
    except OSError as e:
        raise ParseError(f"无法读取纽结表 {corpus_file}: {e}")

    records: Dict[str, KnotRecord] = {}
    for item in payload.get('data', []):
        try:
            record = KnotRecord(
                name=str(item['name']),
                braid=tuple(int(g) for g in item['braid']),
                strands=int(item['strands']),
                alexander=str(item['alexander']),
                tree=bool(item.get('tree', True)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"纽结表记录格式错误: {item!r} ({e})")
        records[record.name] = record

    logger.debug(f"纽结表已加载: {len(records)} 个纽结 ({corpus_file})")
    return records


def resolve_knot(name: str, corpus: Optional[Dict[str, KnotRecord]] = None) -> PlanarDiagram:
    """按名称取纽结图：纽结表中的名称、常用别名或 T(2,m)"""
    key = name.strip()
    torus = _TORUS.match(key.replace(' ', ''))
    if torus:
        m = int(torus.group(1))
        if m % 2 == 0:
            raise ParseError(f"T(2,{m}) 是链环，不是纽结")
        return torus_knot_2(m)
    key = _ALIASES.get(key.lower(), key)
    corpus = corpus if corpus is not None else load_corpus()
    if key not in corpus:
        raise ParseError(f"纽结表中没有 {name!r}，可用: {', '.join(sorted(corpus))}")
    return corpus[key].diagram()


def knot_alexander(diagram: PlanarDiagram, use_tree: bool = False) -> LaurentPolynomial:
    """纽结的对称Alexander多项式；use_tree 时走拆解树路线"""
    if use_tree:
        return theta_from_tree(resolution_tree(diagram))
    return alexander_from_diagram(diagram)


def _report_row(record: KnotRecord, max_tree_crossings: int) -> dict:
    diagram = record.diagram()
    alexander = alexander_from_diagram(diagram)
    row = {
        'name': record.name,
        'crossings': diagram.crossing_count,
        'alexander': str(alexander),
        'conway': str(contract_to_z_square(alexander)),
        'mod2_class': mod2_class_key(alexander),
        'expected_ok': alexander == record.expected(),
        'tree_ok': None,
        'tree_size': None,
    }
    if record.tree and diagram.crossing_count <= max_tree_crossings:
        tree = resolution_tree(diagram)
        row['tree_ok'] = theta_from_tree(tree) == alexander
        row['tree_size'] = tree_size(tree)
    return row


def corpus_report(
    names: Optional[Sequence[str]] = None,
    corpus: Optional[Dict[str, KnotRecord]] = None,
    workers: Optional[int] = None
) -> pd.DataFrame:
    """
    对纽结表逐个计算两条路线并汇总成表

    列: name, crossings, alexander, conway, mod2_class, expected_ok, tree_ok, tree_size
    """
    config = get_config()
    corpus = corpus if corpus is not None else load_corpus()
    names = list(names) if names is not None else list(corpus)
    missing = [n for n in names if n not in corpus]
    if missing:
        raise ValidationError(f"纽结表中没有: {', '.join(missing)}")

    skein_cfg = config.get('skein', {})
    workers = workers or skein_cfg.get('workers', 4)
    max_tree = skein_cfg.get('max_tree_crossings', 10)

    with ThreadPoolExecutor(max_workers=workers) as executor:
        rows: List[dict] = list(executor.map(lambda n: _report_row(corpus[n], max_tree), names))

    df = pd.DataFrame(rows, columns=[
        'name', 'crossings', 'alexander', 'conway', 'mod2_class', 'expected_ok', 'tree_ok', 'tree_size'
    ])
    logger.info(f"纽结表报告: {len(df)} 个纽结，模2类 {df['mod2_class'].nunique()} 个")
    return df
