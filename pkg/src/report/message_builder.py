"""报告构建器：JSON 载荷与文本形式"""

import json
from typing import Any, Dict, List, Optional
import logging

import pandas as pd

from src.config.constants import SCHEMA_VERSION
from src.utils.errors import TopologyCalcError

logger = logging.getLogger(__name__)


class ReportBuilder:
    """报告构建器"""

    TITLES = {
        'hf': '圆丛的扭曲Floer同调',
        'grading': '分次与格算术',
        'alexander': 'Alexander多项式',
        'skein-tree': '拆解树与Conway多项式',
        'log-transform': '对数变换',
        'rim-distinguish': '边缘手术判定',
        'koszul': 'Koszul复形与合冲模',
    }

    def __init__(self, command: str, config: Optional[Dict[str, Any]] = None):
        config = config or {}
        output = config.get('output', {})
        self.command = command
        self.schema_version = str(output.get('schema_version', SCHEMA_VERSION))
        self.indent = output.get('indent', 2)
        self.seed = config.get('arithmetic', {}).get('seed')

    def build_payload(self, result: Dict[str, Any]) -> Dict[str, Any]:
        """成功结果的载荷"""
        return {
            'schema_version': self.schema_version,
            'command': self.command,
            'seed': self.seed,
            'result': result,
        }

    def build_error(self, error: Exception) -> Dict[str, Any]:
        """错误载荷"""
        if isinstance(error, TopologyCalcError):
            detail = error.to_dict()
        else:
            detail = {'type': 'internal_error', 'message': str(error)}
        return {'schema_version': self.schema_version, 'command': self.command, 'error': detail}

    def render_json(self, payload: Dict[str, Any]) -> str:
        return json.dumps(payload, ensure_ascii=False, indent=self.indent, sort_keys=True)

    def render_text(self, payload: Dict[str, Any]) -> str:
        """Markdown 风格的文本报告"""
        title = self.TITLES.get(self.command, self.command)
        if 'error' in payload:
            error = payload['error']
            return f"# ❌ {title}\n\n- **错误类型**：{error['type']}\n- **信息**：{error['message']}\n"

        message = f"# {title}\n\n"
        result = payload.get('result', {})
        scalars = {k: v for k, v in result.items() if not isinstance(v, (dict, list))}
        if scalars:
            message += self._build_scalar_section(scalars)
        for key, value in result.items():
            if isinstance(value, dict):
                message += self._build_dict_section(key, value)
            elif isinstance(value, list):
                message += self._build_list_section(key, value)
        return message

    def _build_scalar_section(self, values: Dict[str, Any]) -> str:
        message = ""
        for key, value in values.items():
            message += f"- **{key}**：{value}\n"
        return message + "\n"

    def _build_dict_section(self, key: str, value: Dict[str, Any]) -> str:
        message = f"## {key}\n\n"
        for name, item in value.items():
            if isinstance(item, (dict, list)):
                item = json.dumps(item, ensure_ascii=False, sort_keys=True)
            message += f"- {name}：{item}\n"
        return message + "\n"

    def _build_list_section(self, key: str, value: List[Any]) -> str:
        message = f"## {key}\n\n"
        if value and all(isinstance(row, dict) for row in value):
            df = pd.DataFrame(value)
            for column in df.columns:
                df[column] = df[column].map(
                    lambda x: json.dumps(x, ensure_ascii=False) if isinstance(x, (dict, list)) else x
                )
            message += "```\n" + df.to_string(index=False) + "\n```\n\n"
            return message
        for item in value:
            message += f"- {item}\n"
        return message + "\n"
