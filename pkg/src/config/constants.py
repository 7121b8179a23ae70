"""常量定义模块"""

from enum import Enum
from fractions import Fraction


class CoefficientRing(Enum):
    """系数环枚举"""
    INTEGERS = "integers"    # ℤ
    MOD2 = "mod2"            # 𝔽₂
    RATIONALS = "rationals"  # ℚ，仅内部使用


class NovikovDirection(Enum):
    """Novikov完备化方向"""
    POSITIVE = "positive"  # 允许t的正幂无限延伸
    NEGATIVE = "negative"


class RegionKind(Enum):
    """双分级截断区域"""
    LOWER_AND = "i<0 and j<k"   # 子复形
    UPPER_OR = "i>=0 or j>=k"   # 商复形
    LOWER_OR = "i<0 or j<k"     # 子复形
    UPPER_AND = "i>=0 and j>=k" # 商复形
    FULL = "full"
    EMPTY = "empty"


class HomologyKind(Enum):
    """E1页同调标签"""
    INTEGERS = "Z"
    SYZYGY = "syzygy"
    FREE = "free"
    ZERO = "zero"


class SummandKind(Enum):
    """分次模直和项类型"""
    TOWER = "tower"
    FREE_RANK_ONE = "free_rank_one"
    SYZYGY_QUOTIENT = "syzygy_quotient"
    SYZYGY_KERNEL = "syzygy_kernel"
    CYCLIC_U_TOWER = "cyclic_u_tower"


class Verdict(Enum):
    """边缘手术判定结果"""
    DISTINCT = "smoothly distinct"
    NOT_DISTINGUISHED = "not distinguished by this invariant"


class ExitCode(Enum):
    """命令行退出码"""
    SUCCESS = 0
    DOMAIN = 1
    PARSE = 2


# HF⁻(T³, s₀) 中 Λ² 与 Λ¹ 部分的绝对分次
T3_LAMBDA2_DEGREE = Fraction(-3, 2)
T3_LAMBDA1_DEGREE = Fraction(-5, 2)
U_DEGREE = -2

# 爆破配边 W 的符号差与欧拉示性数
BLOWUP_SIGNATURE = -1
BLOWUP_EULER = 1

SCHEMA_VERSION = "1.0"

# CLI子命令名称
SUBCOMMANDS = (
    "hf", "grading", "alexander", "skein-tree",
    "log-transform", "rim-distinguish", "koszul",
)
