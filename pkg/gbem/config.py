"""
配置管理模块
负责加载 YAML 配置文件、应用环境变量覆盖并提供运行期读取接口
"""

import os
from typing import Any, Dict

import yaml

from .env_utils import collect_overrides, env_key


# ---------------- 配置常量 ----------------

CONFIG_FILE_NAME = "gbem_cfg.yaml"

CONVENTIONS = ("multiset", "distinct")


# ---------------- 配置加载 ----------------

def _cast_like(default: Any, raw: str, name: str) -> Any:
    """按 YAML 默认值的类型转换环境变量字符串。"""
    try:
        if isinstance(default, bool):
            lowered = raw.lower()
            if lowered in ("1", "true", "yes"):
                return True
            if lowered in ("0", "false", "no"):
                return False
            raise ValueError(raw)
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
        if isinstance(default, list):
            return [float(x) for x in raw.split(",") if x.strip()]
        return raw
    except ValueError as exc:
        raise ValueError(f"环境变量 {name} 的值无效: {raw!r}") from exc


def _validate(settings: Dict[str, Any]) -> None:
    eps = settings["numerics"]["rank_eps"]
    if not (0.0 < eps <= 1e-6):
        raise ValueError(f"numerics.rank_eps 必须位于 (0, 1e-6]，当前为 {eps}")
    convention = str(settings["bounds"]["convention"]).lower()
    if convention not in CONVENTIONS:
        raise ValueError(f"bounds.convention 必须是 {CONVENTIONS} 之一，当前为 {convention!r}")
    settings["bounds"]["convention"] = convention


def load_settings() -> Dict[str, Any]:
    """从 YAML 文件加载默认配置，并应用 GBEM_* 环境变量覆盖。"""
    config_path = os.path.join(os.path.dirname(__file__), CONFIG_FILE_NAME)
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"GBEM:默认配置文件 '{config_path}' 不存在")

    with open(config_path, "r", encoding="utf-8") as f:
        settings = yaml.safe_load(f) or {}

    for section, values in collect_overrides(settings).items():
        for key, raw in values.items():
            settings[section][key] = _cast_like(settings[section][key], raw, env_key(section, key))

    _validate(settings)
    return settings


def reload_settings() -> Dict[str, Any]:
    """重新加载配置，并原地更新 SETTINGS 字典"""
    global SETTINGS
    new_settings = load_settings()
    if isinstance(SETTINGS, dict):
        SETTINGS.clear()
        SETTINGS.update(new_settings)
    else:
        SETTINGS = new_settings
    return SETTINGS


def get_setting(section: str, key: str) -> Any:
    """运行期读取单个配置项（每次调用都读取当前 SETTINGS）。"""
    try:
        return SETTINGS[section][key]
    except KeyError as exc:
        raise KeyError(f"未知配置项: {section}.{key}") from exc


def resolve_eps(eps: Any = None) -> float:
    """eps 为空时回退到 numerics.rank_eps，并检查取值范围。"""
    value = get_setting("numerics", "rank_eps") if eps is None else float(eps)
    if not (0.0 < value <= 1e-6):
        raise ValueError(f"eps 必须位于 (0, 1e-6]，当前为 {value}")
    return value


SETTINGS: Dict[str, Any] = load_settings()
