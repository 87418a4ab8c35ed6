"""
工具函数模块
"""

import json
import math
import re
from typing import Any, Dict, Optional

from .config import get_setting


# ─────────────────────────────────────────────
# 数值格式化
# ─────────────────────────────────────────────

def format_float(value: float, spec: Optional[str] = None) -> str:
    """按 output.float_format 输出浮点数（CSV 使用，至少 12 位有效数字）。

    -0.0 统一输出为 0，保证相同输入字节级一致。
    """
    spec = spec or get_setting("output", "float_format")
    value = float(value)
    if value == 0.0:
        value = 0.0
    return format(value, spec)


def format_table_float(value: float) -> str:
    """终端表格用的定点格式，例如 1.000000000000"""
    return format_float(value, get_setting("output", "table_format"))


# ─────────────────────────────────────────────
# 状态文件 JSON 解析
# ─────────────────────────────────────────────

_PYTHON_COMMENT_RE = re.compile(r'(?m)#[^\n]*')
_ASSIGNMENT_RE = re.compile(r'^\s*\w+\s*=\s*')  # 匹配 "state = " 这类赋值前缀


def parse_json_object(text: str) -> Optional[Dict[str, Any]]:
    """解析状态文件文本，返回 dict 或 None（空输入时）。

    宽松策略（按顺序应用）：
    1. 剥离 ``state =`` 等赋值前缀
    2. 移除 ``#`` 行注释（手写夹具常带注释）
    3. 用 json.loads 解析，结果必须是 dict

    抛出 ValueError（含友好提示）；空字符串返回 None。
    """
    raw = (text or "").strip()
    if not raw:
        return None

    raw = _ASSIGNMENT_RE.sub('', raw, count=1).strip()
    raw = _PYTHON_COMMENT_RE.sub('', raw)
    raw = '\n'.join(line for line in raw.splitlines() if line.strip()).strip()

    if not raw:
        return None

    try:
        parsed = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"状态文件不是有效的 JSON:\n{exc}") from exc

    if not isinstance(parsed, dict):
        raise ValueError(
            f'状态文件必须是一个 JSON 对象，例如 {{"dims": [2, 2], "kind": "pure", "data": [...]}}，'
            f'当前类型: {type(parsed).__name__}'
        )

    return parsed


def format_json_object(data: Dict[str, Any]) -> str:
    """将 dict 格式化为 JSON 文本。浮点使用 repr 精度（json 默认），保证往返无损。"""
    return json.dumps(data, ensure_ascii=False, indent=1)


# ─────────────────────────────────────────────
# 角度解析
# ─────────────────────────────────────────────

_ANGLE_RE = re.compile(r'^\s*([0-9.]*)\s*\*?\s*(?:pi|π)\s*(?:/\s*([0-9.]+))?\s*$', re.IGNORECASE)


def parse_angle(text: str) -> float:
    """解析弧度：接受普通浮点数，或 pi/4、3pi/8、π/3 这类写法。"""
    raw = str(text).strip()
    try:
        return float(raw)
    except ValueError:
        pass
    match = _ANGLE_RE.match(raw)
    if not match:
        raise ValueError(f"无法解析角度: {text!r}（示例: 0.785、pi/4、3pi/8）")
    factor = float(match.group(1)) if match.group(1) else 1.0
    divisor = float(match.group(2)) if match.group(2) else 1.0
    if divisor == 0:
        raise ValueError(f"角度分母不能为 0: {text!r}")
    return factor * math.pi / divisor
