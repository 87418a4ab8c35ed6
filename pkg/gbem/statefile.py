"""
状态文件模块
JSON 形式的态文件读写：{"dims": [...], "kind": "pure" | "density", "data": [[re, im], ...]}

- pure：长度为 Πdims 的振幅
- density：按行主序展开的 (Πdims)² 个矩阵元
浮点以 repr 精度写出，读回后逐位一致。
"""

import os
from dataclasses import dataclass
from typing import Any, Dict, Tuple, Union

import numpy as np

from .hilbert import DensityMatrix, PartyDims, PureState
from .states import is_named_state, parse_named_state
from .utils import format_json_object, parse_json_object

KINDS = ("pure", "density")

AnyState = Union[PureState, DensityMatrix]


@dataclass(frozen=True)
class StateFile:
    dims: Tuple[int, ...]
    kind: str
    data: Tuple[Tuple[float, float], ...]

    @classmethod
    def from_state(cls, state: AnyState) -> "StateFile":
        if isinstance(state, PureState):
            flat, kind = state.amplitudes, "pure"
        elif isinstance(state, DensityMatrix):
            flat, kind = state.entries.reshape(-1), "density"
        else:
            raise TypeError(f"不支持的态类型: {type(state).__name__}")
        data = tuple((float(z.real), float(z.imag)) for z in flat)
        return cls(tuple(state.dims.dims), kind, data)

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "StateFile":
        missing = [k for k in ("dims", "kind", "data") if k not in obj]
        if missing:
            raise ValueError(f"状态文件缺少字段: {missing}")
        kind = str(obj["kind"]).lower()
        if kind not in KINDS:
            raise ValueError(f"状态文件 kind 必须是 {KINDS} 之一，当前 {obj['kind']!r}")
        try:
            dims = tuple(int(d) for d in obj["dims"])
            data = tuple((float(re), float(im)) for re, im in obj["data"])
        except (TypeError, ValueError) as exc:
            raise ValueError(f"状态文件格式错误: dims 需为整数列表，data 需为 [re, im] 对的列表 ({exc})") from exc
        return cls(dims, kind, data)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dims": list(self.dims),
            "kind": self.kind,
            "data": [[re, im] for re, im in self.data],
        }

    def to_state(self) -> AnyState:
        """按 kind 构造 PureState / DensityMatrix，违反不变量时抛出 ValueError。"""
        dims = PartyDims(self.dims)
        values = np.array([complex(re, im) for re, im in self.data], dtype=complex)
        if self.kind == "pure":
            if values.size != dims.total:
                raise ValueError(f"dimension mismatch: pure 数据长度 {values.size} ≠ {dims.total}")
            return PureState(dims, values)
        if values.size != dims.total ** 2:
            raise ValueError(f"dimension mismatch: density 数据长度 {values.size} ≠ {dims.total ** 2}")
        return DensityMatrix(dims, values.reshape(dims.total, dims.total))

    def to_json(self) -> str:
        return format_json_object(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "StateFile":
        obj = parse_json_object(text)
        if obj is None:
            raise ValueError("状态文件为空")
        return cls.from_dict(obj)


def read_state(path: str) -> AnyState:
    with open(path, "r", encoding="utf-8") as f:
        return StateFile.from_json(f.read()).to_state()


def write_state(path: str, state: AnyState) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(StateFile.from_state(state).to_json())
        f.write("\n")


def load_state_arg(value: str) -> AnyState:
    """命令行参数：存在的文件路径优先，否则按命名态解析。"""
    if os.path.isfile(value):
        return read_state(value)
    if is_named_state(value):
        return parse_named_state(value)
    raise ValueError(f"找不到态文件，也不是命名态: {value!r}")

