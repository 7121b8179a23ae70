"""日志工具模块：控制台输出走 stderr，stdout 只留给报告"""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def _resolve_level(level: Union[int, str]) -> int:
    if isinstance(level, int):
        return level
    value = logging.getLevelName(str(level).upper())
    return value if isinstance(value, int) else logging.INFO


def _build_handlers(log_file: Optional[str], console: bool) -> List[logging.Handler]:
    handlers: List[logging.Handler] = []
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, encoding='utf-8'))
    if console:
        handlers.append(logging.StreamHandler(sys.stderr))
    return handlers


def setup_logger(
    name: Optional[str] = None,
    level: Union[int, str] = logging.INFO,
    log_file: Optional[str] = None,
    console: bool = True,
    fmt: str = DEFAULT_FORMAT,
) -> logging.Logger:
    """重建指定 logger 的处理器（name 为 None 时为根 logger）"""
    logger = logging.getLogger(name)
    logger.setLevel(_resolve_level(level))

    for old in list(logger.handlers):
        logger.removeHandler(old)
        old.close()

    formatter = logging.Formatter(fmt, datefmt=DATE_FORMAT)
    for handler in _build_handlers(log_file, console):
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    return logger


def setup_from_config(config: Dict[str, Any], verbose: bool = False) -> logging.Logger:
    """按配置中的 logging 段初始化根 logger；verbose 时强制 DEBUG"""
    section = config.get('logging', {})
    return setup_logger(
        level='DEBUG' if verbose else section.get('level', 'INFO'),
        log_file=section.get('file') or None,
        fmt=section.get('format', DEFAULT_FORMAT),
    )
