"""
常用态构造模块
GHZ / 广义 GHZ / W 态、三比特对照态 |φ⟩ 与 W 噪声混合 ρ₂(p)，以及命令行使用的命名态解析
"""

import math
from typing import Callable, Dict, List, Sequence, Union

import numpy as np

from .hilbert import DensityMatrix, PartyDims, PureState, basis_state

AnyState = Union[PureState, DensityMatrix]


def generalized_ghz(coeffs: Sequence[float], n: int) -> PureState:
    """Σ_k c_k |k k … k⟩，局部维数 d = len(coeffs)；系数会被归一化。"""
    coeffs = np.asarray(coeffs, dtype=complex).reshape(-1)
    d = coeffs.size
    if d < 2:
        raise ValueError(f"广义 GHZ 至少需要 2 个系数，当前 {d}")
    if int(n) < 2:
        raise ValueError(f"GHZ 态至少需要 2 个子系统，当前 n={n}")
    dims = PartyDims((d,) * int(n))
    amps = np.zeros(dims.total, dtype=complex)
    # |k…k⟩ 的下标为 k·(d^n − 1)/(d − 1)
    stride = (dims.total - 1) // (d - 1)
    for k, c in enumerate(coeffs):
        amps[k * stride] = c
    return PureState.from_vector(dims, amps)


def ghz(n: int, d: int = 2) -> PureState:
    return generalized_ghz(np.ones(int(d)), n)


def w_state(n: int) -> PureState:
    """n 比特 W 态：单激发的均匀叠加。"""
    n = int(n)
    if n < 2:
        raise ValueError(f"W 态至少需要 2 个比特，当前 n={n}")
    dims = PartyDims.qubits(n)
    amps = np.zeros(dims.total, dtype=complex)
    for k in range(n):
        amps[1 << (n - 1 - k)] = 1.0
    return PureState.from_vector(dims, amps)


def zero_state(n: int, d: int = 2) -> PureState:
    return basis_state((int(d),) * int(n), [0] * int(n))


def example2_phi() -> PureState:
    """½(|100⟩ + |010⟩) + 2^{−1/2}|001⟩"""
    dims = PartyDims.qubits(3)
    amps = np.zeros(dims.total, dtype=complex)
    amps[0b100] = 0.5
    amps[0b010] = 0.5
    amps[0b001] = 1.0 / math.sqrt(2.0)
    return PureState(dims, amps)


def example2_rho(p: float) -> DensityMatrix:
    """ρ₂(p) = p|W₃⟩⟨W₃| + (1−p) I/8"""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p 必须位于 [0, 1]，当前 {p!r}")
    w = w_state(3)
    return DensityMatrix(w.dims, p * w.projector() + (1.0 - p) * np.eye(8) / 8.0)


# ---------------- 命名态 ----------------

def _int_args(args: List[str], name: str, low: int, high: int) -> List[int]:
    if not low <= len(args) <= high:
        raise ValueError(f"命名态 {name!r} 需要 {low}~{high} 个参数，当前 {len(args)}")
    try:
        return [int(a) for a in args]
    except ValueError as exc:
        raise ValueError(f"命名态 {name!r} 的参数必须是整数: {args}") from exc


_BUILDERS: Dict[str, Callable[[List[str]], AnyState]] = {
    "ghz": lambda args: ghz(*_int_args(args, "ghz", 1, 2)),
    "w": lambda args: w_state(*_int_args(args, "w", 1, 1)),
    "zero": lambda args: zero_state(*_int_args(args, "zero", 1, 2)),
    "example2-phi": lambda args: example2_phi(),
}


def parse_named_state(text: str) -> AnyState:
    """
    解析命名态，例如 ghz:3、ghz:3:3、w:3、zero:3、example2-phi、example2-rho:0.9。
    """
    parts = [p.strip() for p in str(text).strip().split(":")]
    name, args = parts[0].lower(), parts[1:]
    if name == "example2-rho":
        if len(args) != 1:
            raise ValueError("命名态 'example2-rho' 需要一个参数 p，例如 example2-rho:0.9")
        try:
            p = float(args[0])
        except ValueError as exc:
            raise ValueError(f"example2-rho 的参数不是数字: {args[0]!r}") from exc
        return example2_rho(p)
    if name not in _BUILDERS:
        raise ValueError(f"未知的命名态: {text!r}，可选 ghz / w / zero / example2-phi / example2-rho")
    return _BUILDERS[name](args)


def is_named_state(text: str) -> bool:
    name = str(text).strip().split(":")[0].lower()
    return name in _BUILDERS or name == "example2-rho"
