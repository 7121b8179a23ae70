"""配置管理模块"""

from .settings import load_config, get_config, reset_config

__all__ = ['load_config', 'get_config', 'reset_config']
