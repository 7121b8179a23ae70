"""配置加载：内置默认值 < config.yaml < 环境变量 (.env)"""

import copy
import os
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import yaml
from dotenv import load_dotenv

DEFAULT_CONFIG_PATH = './config/config.yaml'

DEFAULTS: Dict[str, Any] = {
    'arithmetic': {
        'seed': 20240611,
        'evaluation_points': 3,  # 必须一致的求值点个数
        'max_retries': 8,
        'sample_bound': 1000003,
    },
    'novikov': {'direction': 'positive', 'order': 20},
    'skein': {'max_tree_crossings': 10, 'workers': 4},
    'corpus': {'path': './data/knots/corpus.json'},
    'output': {'schema_version': '1.0', 'indent': 2},
    'logging': {
        'level': 'INFO',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        'file': './logs/twisted_floer.log',
    },
}

# 环境变量 -> (配置段, 键, 转换)
ENV_OVERRIDES: Dict[str, Tuple[str, str, Callable[[str], Any]]] = {
    'TFC_SEED': ('arithmetic', 'seed', int),
    'TFC_LOG_LEVEL': ('logging', 'level', str.upper),
}

_config: Optional[Dict[str, Any]] = None


def _warn(message: str):
    # 日志尚未初始化；stdout 只留给报告
    print(f"警告: {message}", file=sys.stderr)


def _read_yaml(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    try:
        data = yaml.safe_load(path.read_text(encoding='utf-8'))
    except (OSError, yaml.YAMLError) as e:
        _warn(f"读取 {path} 失败 ({e})，使用默认值")
        return {}
    if data is None:
        return {}
    if not isinstance(data, dict):
        _warn(f"{path} 顶层不是映射，已忽略")
        return {}
    return data


def _deep_merge(base: Dict, override: Dict) -> Dict:
    """把 override 递归并入 base（原地修改并返回 base）"""
    for key, value in override.items():
        current = base.get(key)
        if isinstance(current, dict) and isinstance(value, dict):
            _deep_merge(current, value)
        else:
            base[key] = value
    return base


def _apply_env(config: Dict[str, Any]):
    for name, (section, key, convert) in ENV_OVERRIDES.items():
        raw = os.getenv(name)
        if not raw:
            continue
        try:
            config.setdefault(section, {})[key] = convert(raw.strip())
        except ValueError:
            _warn(f"环境变量 {name}={raw!r} 无效，已忽略")


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """加载并缓存配置；已加载时直接返回缓存"""
    global _config
    if _config is not None:
        return _config

    load_dotenv()
    config = copy.deepcopy(DEFAULTS)
    _deep_merge(config, _read_yaml(Path(config_path or DEFAULT_CONFIG_PATH)))
    _apply_env(config)

    _config = config
    return _config


def get_config() -> Dict[str, Any]:
    return _config if _config is not None else load_config()


def reset_config():
    """清除缓存（测试与每次命令执行前使用）"""
    global _config
    _config = None
