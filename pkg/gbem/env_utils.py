"""
环境变量工具模块
统一管理 .env 文件的读取，以及 GBEM_* 覆盖项的收集
"""
import os
from pathlib import Path
from typing import Dict
from dotenv import load_dotenv

# .env 文件唯一读取路径（gbem 包目录）
_ENV_PATH: Path = Path(__file__).parent / ".env"

# 覆盖项前缀：GBEM_<SECTION>_<KEY>
ENV_PREFIX = "GBEM_"


def load_env() -> None:
    """加载 .env 文件到环境变量（文件不存在时跳过，不主动创建）"""
    if _ENV_PATH.exists() and _ENV_PATH.is_dir():
        raise IsADirectoryError(f".env 路径异常（是目录而非文件）: {_ENV_PATH}")
    if _ENV_PATH.exists():
        load_dotenv(_ENV_PATH, override=False)


def env_key(section: str, key: str) -> str:
    """配置项对应的环境变量名，例如 numerics.rank_eps → GBEM_NUMERICS_RANK_EPS"""
    return f"{ENV_PREFIX}{section}_{key}".upper()


def collect_overrides(sections: Dict[str, Dict[str, object]]) -> Dict[str, Dict[str, str]]:
    """
    收集当前环境中针对已知配置项的覆盖值（原始字符串）。

    只识别 YAML 中已存在的 section/key，未知变量忽略。
    """
    load_env()
    found: Dict[str, Dict[str, str]] = {}
    for section, values in sections.items():
        if not isinstance(values, dict):
            continue
        for key in values:
            raw = os.environ.get(env_key(section, key))
            if raw is not None and raw.strip() != "":
                found.setdefault(section, {})[key] = raw.strip()
    return found
