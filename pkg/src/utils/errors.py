"""错误类型定义"""

from dataclasses import dataclass


@dataclass
class TopologyCalcError(Exception):
    """计算错误基类"""
    message: str
    error_type: str = "topology_error"
    exit_code: int = 1

    def __str__(self) -> str:
        return self.message

    def to_dict(self) -> dict:
        return {'type': self.error_type, 'message': self.message}


@dataclass
class ParseError(TopologyCalcError):
    """输入文本格式错误"""
    error_type: str = "parse_error"
    exit_code: int = 2


@dataclass
class DomainError(TopologyCalcError):
    """定理假设或取值范围不满足"""
    error_type: str = "domain_error"


@dataclass
class RingMismatchError(DomainError):
    """运算对象不在同一个环中"""
    error_type: str = "ring_mismatch"


@dataclass
class UnsupportedRingError(DomainError):
    """系数环不支持该运算"""
    error_type: str = "unsupported_ring"


@dataclass
class ParityError(DomainError):
    """z的奇数次幂出现在纽结结果中"""
    error_type: str = "parity_error"


@dataclass
class RegionValidityError(DomainError):
    """截断区域在微分下不封闭"""
    error_type: str = "region_validity"


@dataclass
class ValidationError(TopologyCalcError):
    """数据结构不合法（维数、d²、树结构）"""
    error_type: str = "validation_error"


@dataclass
class RetryExhaustedError(TopologyCalcError):
    """随机求值点多次重试仍不一致"""
    error_type: str = "retry_exhausted"
