#!/usr/bin/env python3
"""
扭曲Floer同调计算工具主程序
Twisted Floer Calculus

圆丛的扭曲Floer同调、分次与格算术、Alexander多项式、
对数变换与边缘手术判定。所有输出为可复现的JSON或文本报告。
"""

import argparse
import re
import sys
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

# 添加src目录到Python路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.algebra.laurent_ring import LaurentPolynomial, contract_to_z_square, expand_z_square
from src.config.constants import ExitCode
from src.config.settings import load_config, reset_config
from src.homology.chain_complex import (
    Region,
    fraction_field_homology_ranks,
    koszul_complex,
    syzygy_presentation,
)
from src.homology.circle_bundle import (
    hf_minus_large_positive,
    hf_plus_large_negative,
    hf_plus_large_positive,
    spinc_enumerate,
)
from src.homology.knot_floer_model import (
    DeltaData,
    delta_for_genus_one,
    e1_page,
    knot_floer_ranks,
    validate_zseq,
    zseq_presentations,
)
from src.homology.matrices import RankEvaluator
from src.knots.corpus import resolve_knot
from src.knots.diagram import PlanarDiagram, braid_closure, parse_pd
from src.knots.skein import (
    alexander_from_diagram,
    alexander_module_smith,
    conway_from_tree,
    load_tree,
    mod2_class_key,
    resolution_tree,
    tree_size,
    tree_to_dict,
)
from src.report.message_builder import ReportBuilder
from src.surgery.invariants import FormalInvariant, log_transform_combination
from src.surgery.torus import (
    T3Class,
    cylinder_action,
    h1_contraction,
    is_primitive,
    log_transform_vector,
    t3_theta_image,
)
from src.surgery.verdict import rim_surgery_verdict
from src.topology.grading import (
    CobordismData,
    adjunction,
    blowup_degree_profile,
    blowup_lattice,
    degree_profile_table,
    degree_shift,
    relative_invariant_degree,
    spinc_family_c1,
    tau,
)
from src.utils.errors import DomainError, ParseError, TopologyCalcError
from src.utils.formatting import format_fraction, parse_fraction
from src.utils.logger import setup_from_config

logger = logging.getLogger(__name__)


# ---------- 参数解析辅助 ----------

def _parse_int_list(text: str, name: str, expected: Optional[int] = None) -> List[int]:
    """解析 "1,1,-2" 或 "1 1 -2" """
    parts = [p for p in text.replace(',', ' ').split() if p]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"{name} 必须是整数列表: {text!r}")
    if expected is not None and len(values) != expected:
        raise ParseError(f"{name} 需要 {expected} 个整数，实际 {len(values)} 个")
    return values


def _require(args: argparse.Namespace, *names: str):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise ParseError(f"缺少参数: {', '.join(missing)}")


def _diagram_from_args(args: argparse.Namespace) -> Tuple[str, PlanarDiagram]:
    if args.pd is not None:
        return 'pd', parse_pd(args.pd)
    if args.braid is not None:
        return 'braid', braid_closure(_parse_int_list(args.braid, "--braid"), args.strands)
    return args.knot, resolve_knot(args.knot)


# ---------- 子命令 ----------

def cmd_hf(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    """圆丛 Y_n 的 HF⁺ / HF⁻"""
    n, g, k = args.degree, args.genus, args.spinc
    delta = DeltaData.load(args.delta) if args.delta else None
    if delta is None and g == 1:
        delta = delta_for_genus_one()

    if args.minus:
        description = hf_minus_large_positive(n, g, k)
    elif n <= 1 - 2 * g:
        description = hf_plus_large_negative(n, g, k, delta)
    elif n >= 2 * g - 1:
        description = hf_plus_large_positive(n, g, k, delta)
    else:
        raise DomainError(f"|n| < 2g−1 的情形不在计算范围内: n={n}, g={g}")

    result = description.to_dict()
    if args.all_spinc:
        result['spinc_structures'] = [s.to_dict() for s in spinc_enumerate(n, g)]
    return result


def cmd_grading(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    """分次与格算术"""
    if args.dminus or args.dplus:
        _require(args, 'n', 'genus')
        d_minus, d_plus = relative_invariant_degree(args.n, args.genus)
        value = d_minus if args.dminus else d_plus
        return {'quantity': 'dminus' if args.dminus else 'dplus', 'value': format_fraction(value)}
    if args.tau:
        _require(args, 'n', 'spinc')
        return {'quantity': 'tau', 'value': format_fraction(tau(args.n, args.spinc))}
    if args.shift:
        _require(args, 'c1_square', 'signature', 'euler')
        data = CobordismData(parse_fraction(args.c1_square), args.signature, args.euler)
        return {'quantity': 'shift', 'value': format_fraction(degree_shift(data))}
    if args.lattice:
        _require(args, 'n')
        lattice = blowup_lattice(args.n, args.genus)
        return dict(lattice.to_dict(), quantity='lattice', valid=lattice.valid)
    if args.c1:
        _require(args, 'ell', 'm', 'genus')
        return {'quantity': 'c1', 'value': spinc_family_c1(args.ell, args.m, args.genus)}
    if args.profile:
        _require(args, 'genus')
        profile = blowup_degree_profile(args.genus)
        result = dict(profile.to_dict(), quantity='profile')
        result['rows'] = degree_profile_table(profile).to_dict(orient='records')
        return result
    _require(args, 'genus', 'n')
    return {'quantity': 'adjunction', 'value': adjunction(args.genus, args.n)}


def cmd_alexander(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    """矩阵路线的Alexander多项式"""
    name, diagram = _diagram_from_args(args)
    delta = alexander_from_diagram(diagram)
    result = {
        'name': name,
        'alexander': str(delta),
        'conway': str(contract_to_z_square(delta)),
        'mod2_class': mod2_class_key(delta),
        'diagram': diagram.to_dict(),
    }
    if args.smith:
        form = alexander_module_smith(diagram)
        result['smith'] = form.to_dict()
    return result


def cmd_skein_tree(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    """拆解树路线的Conway多项式，纽结时与矩阵路线对照"""
    name, diagram = _diagram_from_args(args)
    if args.tree:
        tree = load_tree(args.tree)
    else:
        limit = config.get('skein', {}).get('max_tree_crossings', 10)
        if diagram.crossing_count > limit:
            raise DomainError(f"{diagram.crossing_count} 个交叉超过拆解树上限 {limit}，请用 --tree 提供拆解树")
        tree = resolution_tree(diagram)

    conway = conway_from_tree(tree)
    result: Dict[str, Any] = {
        'name': name,
        'conway': str(conway),
        'tree_size': tree_size(tree),
        'components': diagram.component_count,
    }
    if diagram.is_knot():
        theta = expand_z_square(conway)
        alexander = alexander_from_diagram(diagram)
        result.update({
            'theta': str(theta),
            'alexander': str(alexander),
            'routes_agree': theta == alexander,
            'mod2_class': mod2_class_key(theta),
        })
    if args.emit_tree:
        result['tree'] = tree_to_dict(tree)
    return result


def _basis_invariants(text: str) -> List[FormalInvariant]:
    parts = [p.strip() for p in text.split(';')]
    if len(parts) != 3:
        raise ParseError(f"--basis 需要三个以 ; 分隔的多项式: {text!r}")
    polys = [LaurentPolynomial.parse(p, ("t",)) for p in parts]
    return [FormalInvariant.build({'s0': (p,)}) for p in polys]


def cmd_log_transform(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    """对数变换：T³ 模型中的像与不变量的线性组合"""
    if args.vector is None and args.phi is None:
        raise ParseError("需要 --vector 或 --phi")
    result: Dict[str, Any] = {}
    if args.phi is not None:
        values = _parse_int_list(args.phi, "--phi", 9)
        phi = [values[0:3], values[3:6], values[6:9]]
        vector = list(log_transform_vector(phi))
        result['phi'] = phi
        result['cylinder_image'] = cylinder_action(phi, T3Class(lambda2_part=(0, 0, 1))).to_dict()
        if args.vector is not None and _parse_int_list(args.vector, "--vector", 3) != vector:
            raise DomainError(f"--vector 与 φ(e₃) = {vector} 不一致")
    else:
        vector = _parse_int_list(args.vector, "--vector", 3)
    p, q, r = vector
    result['vector'] = vector

    if is_primitive(vector):
        image = t3_theta_image(vector)
        result['theta_image'] = image.to_dict()
        result['contraction_with_vector'] = h1_contraction(image, vector).to_dict()
    else:
        result['theta_image'] = None
        result['notes'] = [f"向量 {vector} 不是原始的，没有对应的 Θ 像"]

    if args.basis:
        combination = log_transform_combination(p, q, r, _basis_invariants(args.basis))
        result['combination'] = combination.to_dict()
    return result


def cmd_rim_distinguish(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    """边缘手术判定"""
    knots: List[Any] = []
    if args.knots:
        # 括号内的逗号属于 T(2,m)
        knots.extend(n.strip() for n in re.split(r',(?![^()]*\))', args.knots) if n.strip())
    for index, text in enumerate(args.pd or [], 1):
        knots.append((f"pd{index}", parse_pd(text)))
    if not knots:
        raise ParseError("需要 --knots 或 --pd")
    report = rim_surgery_verdict(args.genus, args.self_intersection, knots)
    return report.to_dict()


def cmd_koszul(args: argparse.Namespace, config: Dict[str, Any]) -> Dict[str, Any]:
    """Koszul复形、合冲模与截断区域的 E₁ 页"""
    g = args.genus
    evaluator = RankEvaluator(seed=config['arithmetic']['seed'])
    complex_ = koszul_complex(g)
    result: Dict[str, Any] = {
        'genus': g,
        'ranks': {str(p): complex_.rank_at(p) for p in complex_.positions()},
        'd_squared_zero': True,
        'fraction_field_homology': {
            str(p): r for p, r in fraction_field_homology_ranks(complex_, evaluator).items()
        },
        'knot_floer_ranks': {str(j): r for j, r in knot_floer_ranks(g).items()},
    }
    if args.syzygy is not None:
        result['syzygy'] = syzygy_presentation(args.syzygy, g).to_dict()
    if args.region is not None:
        region = Region.parse(args.region, args.k)
        result['e1_page'] = e1_page(g, region).to_dict()
    if args.delta is not None:
        delta = delta_for_genus_one() if args.delta == 'builtin' else DeltaData.load(args.delta)
        result['zseq'] = validate_zseq(g, delta, evaluator).to_dict()
        result['presentations'] = zseq_presentations(g, delta).to_dict()
    return result


COMMANDS: Dict[str, Callable[[argparse.Namespace, Dict[str, Any]], Dict[str, Any]]] = {
    'hf': cmd_hf,
    'grading': cmd_grading,
    'alexander': cmd_alexander,
    'skein-tree': cmd_skein_tree,
    'log-transform': cmd_log_transform,
    'rim-distinguish': cmd_rim_distinguish,
    'koszul': cmd_koszul,
}


# ---------- 命令行 ----------

def _add_diagram_inputs(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument('--pd', type=str, help='PD码，如 "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"')
    group.add_argument('--braid', type=str, help='辫子字，如 "1,1,1"')
    group.add_argument('--knot', type=str, help='纽结表中的名称，或 T(2,m)')
    parser.add_argument('--strands', type=int, default=None, help='辫子的线数')


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='输出JSON')
    common.add_argument('--seed', type=int, default=None, help='分式域求值点的随机种子')
    common.add_argument('--config', '-c', type=str, default='./config/config.yaml', help='配置文件路径')
    common.add_argument('--verbose', '-v', action='store_true', help='输出调试日志')

    parser = argparse.ArgumentParser(
        description='扭曲Floer同调计算工具',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  python -m src.main hf --degree -3 --genus 2 --spinc 1 --json
  python -m src.main alexander --pd "X(1,4,2,5);X(3,6,4,1);X(5,2,6,3)"
  python -m src.main grading --dminus --n -2 --genus 2
  python -m src.main rim-distinguish --genus 2 --self-intersection 0 --knots 0_1,3_1
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    hf = sub.add_parser('hf', parents=[common], help='圆丛的扭曲Floer同调')
    hf.add_argument('--degree', type=int, required=True, help='圆丛的欧拉数 n')
    hf.add_argument('--genus', type=int, required=True)
    hf.add_argument('--spinc', type=int, required=True, help='spin^c 标签 k')
    hf.add_argument('--minus', action='store_true', help='计算 HF⁻（n ≥ 2g−1, |k| = g−1）')
    hf.add_argument('--delta', type=str, default=None, help='δ数据JSON文件')
    hf.add_argument('--all-spinc', action='store_true', help='同时列出全部 spin^c 结构')

    grading = sub.add_parser('grading', parents=[common], help='分次与格算术')
    which = grading.add_mutually_exclusive_group(required=True)
    for flag in ('dminus', 'dplus', 'tau', 'shift', 'lattice', 'c1', 'profile', 'adjunction'):
        which.add_argument(f'--{flag}', action='store_true')
    grading.add_argument('--n', type=int, default=None)
    grading.add_argument('--genus', type=int, default=None)
    grading.add_argument('--spinc', type=int, default=None)
    grading.add_argument('--c1-square', type=str, default=None)
    grading.add_argument('--signature', type=int, default=None)
    grading.add_argument('--euler', type=int, default=None)
    grading.add_argument('--ell', type=int, default=None)
    grading.add_argument('--m', type=int, default=None)

    alexander = sub.add_parser('alexander', parents=[common], help='Alexander多项式（矩阵路线）')
    _add_diagram_inputs(alexander)
    alexander.add_argument('--smith', action='store_true', help='同时给出Alexander矩阵的Smith标准形')

    skein = sub.add_parser('skein-tree', parents=[common], help='拆解树路线')
    _add_diagram_inputs(skein)
    skein.add_argument('--tree', type=str, default=None, help='拆解树JSON文件')
    skein.add_argument('--emit-tree', action='store_true', help='输出拆解树')

    log_transform = sub.add_parser('log-transform', parents=[common], help='对数变换')
    log_transform.add_argument('--vector', type=str, default=None, help='p,q,r')
    log_transform.add_argument('--phi', type=str, default=None, help='按行给出的9个整数')
    log_transform.add_argument('--basis', type=str, default=None, help='三个基不变量 "a;b;c"')

    rim = sub.add_parser('rim-distinguish', parents=[common], help='边缘手术判定')
    rim.add_argument('--genus', type=int, required=True)
    rim.add_argument('--self-intersection', type=int, required=True)
    rim.add_argument('--knots', type=str, default=None, help='以逗号分隔的纽结名称')
    rim.add_argument('--pd', type=str, action='append', default=None, help='PD码（可重复）')

    koszul = sub.add_parser('koszul', parents=[common], help='Koszul复形与合冲模')
    koszul.add_argument('--genus', type=int, required=True)
    koszul.add_argument('--syzygy', type=int, default=None, help='给出 Z_L 的表示')
    koszul.add_argument('--region', type=str, default=None, help='截断区域，如 upper-and')
    koszul.add_argument('--k', type=int, default=0)
    koszul.add_argument('--delta', type=str, default=None, help='δ数据JSON文件，或 builtin（g=1）')

    return parser


def _load(args: argparse.Namespace) -> Dict[str, Any]:
    reset_config()
    config = load_config(args.config)
    if args.seed is not None:
        config['arithmetic']['seed'] = args.seed
    return config


def run(argv: Optional[Sequence[str]] = None) -> int:
    """执行一次命令，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.PARSE.value if e.code else ExitCode.SUCCESS.value

    config = _load(args)
    setup_from_config(config, verbose=args.verbose)
    builder = ReportBuilder(args.command, config)

    try:
        logger.info(f"执行子命令 {args.command}")
        payload = builder.build_payload(COMMANDS[args.command](args, config))
        code = ExitCode.SUCCESS.value
    except TopologyCalcError as e:
        logger.error(f"{args.command} 失败: {e}", exc_info=True)
        payload = builder.build_error(e)
        code = e.exit_code
    except Exception as e:
        logger.error(f"{args.command} 出现未预期的错误: {e}", exc_info=True)
        payload = builder.build_error(e)
        code = ExitCode.DOMAIN.value

    print(builder.render_json(payload) if args.json else builder.render_text(payload))
    return code


def main():
    """主函数"""
    sys.exit(run())


if __name__ == "__main__":
    main()
