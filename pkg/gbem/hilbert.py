"""
Hilbert 空间基础模块
负责纯态 / 密度矩阵表示、偏迹、Schmidt 谱、保真度和 Hermitian 特征值内核

约定
----
- 振幅按子系统行主序排列（第 0 方变化最慢），与状态文件格式一致
- 所有值构造后不可变（numpy 数组设为只读）
- 容差统一来自 gbem_cfg.yaml 的 numerics 段
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from .bipartition import Bipartition
from .config import get_setting, resolve_eps

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=complex, copy=True)
    out.setflags(write=False)
    return out


# ==================== 类型 ====================

@dataclass(frozen=True)
class PartyDims:
    """各子系统的局部维数 d_k ≥ 2。"""
    dims: Tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1:
            raise ValueError("PartyDims 至少包含一个子系统")
        if any(d < 2 for d in dims):
            raise ValueError(f"每个子系统维数必须 ≥ 2，当前 {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def qubits(cls, n: int) -> "PartyDims":
        return cls((2,) * int(n))

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return int(np.prod(self.dims))

    def dim_of(self, parties: Iterable[int]) -> int:
        return int(np.prod([self.dims[k] for k in parties], dtype=int))

    def sub(self, parties: Iterable[int]) -> "PartyDims":
        return PartyDims(tuple(self.dims[k] for k in parties))

    def __len__(self) -> int:
        return len(self.dims)

    def __getitem__(self, index: int) -> int:
        return self.dims[index]


DimsLike = Union[PartyDims, Sequence[int]]


def as_dims(dims: DimsLike) -> PartyDims:
    return dims if isinstance(dims, PartyDims) else PartyDims(tuple(dims))


@dataclass(frozen=True, eq=False)
class PureState:
    """多方纯态：振幅向量 + 局部维数。构造时检查范数为 1。"""
    dims: PartyDims
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = as_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != dims.total:
            raise ValueError(f"dimension mismatch: 振幅数 {amps.size} ≠ 总维数 {dims.total}")
        norm = float(np.linalg.norm(amps))
        tol = get_setting("numerics", "norm_tol")
        if abs(norm - 1.0) > tol:
            raise ValueError(f"PureState 的 Euclidean norm 必须为 1（容差 {tol}），当前 {norm!r}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def from_vector(cls, dims: DimsLike, vector: Sequence[complex]) -> "PureState":
        """先归一化再构造。"""
        return cls(as_dims(dims), normalize(vector))

    @property
    def n(self) -> int:
        return self.dims.n

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims.dims)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(self.dims, self.projector())


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """密度矩阵：Hermitian、半正定、迹为 1。"""
    dims: PartyDims
    entries: np.ndarray

    def __post_init__(self):
        dims = as_dims(self.dims)
        rho = np.asarray(self.entries, dtype=complex)
        if rho.shape != (dims.total, dims.total):
            raise ValueError(f"dimension mismatch: 矩阵形状 {rho.shape} 与总维数 {dims.total} 不符")
        eigs = hermitian_eigenvalues(rho)
        psd_tol = get_setting("numerics", "psd_tol")
        if eigs[0] < -psd_tol:
            raise ValueError(f"DensityMatrix 不是半正定（最小特征值 {eigs[0]!r} < −{psd_tol}）")
        trace = complex(np.trace(rho))
        trace_tol = get_setting("numerics", "trace_tol")
        if abs(trace - 1.0) > trace_tol:
            raise ValueError(f"DensityMatrix trace != 1（容差 {trace_tol}），当前 {trace!r}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "entries", _frozen(rho))

    @property
    def n(self) -> int:
        return self.dims.n

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.entries)


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    """Schmidt 谱：非增排列的概率向量（长度为 d_min），以及判定秩的容差。"""
    probabilities: np.ndarray
    rank_epsilon: float

    def __post_init__(self):
        probs = np.asarray(self.probabilities, dtype=float).reshape(-1)
        if probs.size == 0:
            raise ValueError("SchmidtSpectrum 不能为空")
        if np.any(np.diff(probs) > 1e-12):
            raise ValueError("SchmidtSpectrum 必须非增排列")
        if abs(probs.sum() - 1.0) > get_setting("numerics", "trace_tol"):
            raise ValueError(f"SchmidtSpectrum 之和必须为 1，当前 {probs.sum()!r}")
        probs = probs.copy()
        probs.setflags(write=False)
        object.__setattr__(self, "probabilities", probs)

    @property
    def rank(self) -> int:
        """m_γ：大于 rank_epsilon 的系数个数。"""
        return int(np.count_nonzero(self.probabilities > self.rank_epsilon))

    @property
    def largest(self) -> float:
        """λ₀^γ"""
        return float(self.probabilities[0])

    def padded(self, length: int) -> np.ndarray:
        out = np.zeros(max(int(length), self.probabilities.size))
        out[: self.probabilities.size] = self.probabilities
        return out

    def __len__(self) -> int:
        return self.probabilities.size


# ==================== 基础运算 ====================

def normalize(vector: Sequence[complex]) -> np.ndarray:
    """归一化复向量，方向不变；零向量报错。"""
    v = np.asarray(vector, dtype=complex).reshape(-1)
    norm = float(np.linalg.norm(v))
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("degenerate state: 零向量（或非有限向量）无法归一化")
    return v / norm


def hermitian_eigenvalues(matrix: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    """Hermitian 矩阵的全部特征值（升序）。非 Hermitian 超出容差时报错。"""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"hermitian_eigenvalues 需要方阵，当前形状 {m.shape}")
    tol = get_setting("numerics", "hermitian_tol") if tol is None else tol
    deviation = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if deviation > tol:
        raise ValueError(f"matrix is not Hermitian（偏差 {deviation!r} > {tol}）")
    return scipy.linalg.eigvalsh((m + m.conj().T) / 2)


def trace_norm(matrix: np.ndarray) -> float:
    """Hermitian 矩阵的迹范数 Σ|eig|。"""
    return float(np.sum(np.abs(hermitian_eigenvalues(matrix))))


def fidelity(psi: PureState, rho: Union[DensityMatrix, PureState]) -> float:
    """⟨ψ|ρ|ψ⟩；rho 为纯态时等于 |⟨ψ|φ⟩|²。"""
    if psi.dims.dims != rho.dims.dims:
        raise ValueError(f"dimension mismatch: {psi.dims.dims} vs {rho.dims.dims}")
    if isinstance(rho, PureState):
        value = abs(np.vdot(psi.amplitudes, rho.amplitudes)) ** 2
        return float(value)
    value = np.vdot(psi.amplitudes, rho.entries @ psi.amplitudes)
    if abs(value.imag) > get_setting("numerics", "hermitian_tol"):
        raise ValueError(f"fidelity 虚部过大: {value!r}")
    return max(0.0, float(value.real))


def _reduced_matrix(psi: PureState, keep: Sequence[int]) -> np.ndarray:
    keep = list(keep)
    rest = [k for k in range(psi.n) if k not in keep]
    block = np.transpose(psi.tensor, keep + rest).reshape(psi.dims.dim_of(keep), -1)
    return block @ block.conj().T


def reduced_density(psi: PureState, gamma: Bipartition) -> DensityMatrix:
    """Tr_γ̄ |ψ⟩⟨ψ|，子系统顺序按 γ 的成员升序。"""
    if gamma.n != psi.n:
        raise ValueError(f"invalid bipartition: γ 属于 n={gamma.n}，态有 {psi.n} 个子系统")
    return DensityMatrix(psi.dims.sub(gamma.members), _reduced_matrix(psi, gamma.members))


def schmidt_spectrum(psi: PureState, gamma: Bipartition, eps: Optional[float] = None) -> SchmidtSpectrum:
    """γ|γ̄ 下的 Schmidt 谱（从维数较小的一侧计算，长度 d_min）。"""
    eps = resolve_eps(eps)
    if gamma.n != psi.n:
        raise ValueError(f"invalid bipartition: γ 属于 n={gamma.n}，态有 {psi.n} 个子系统")
    d_gamma, d_bar = gamma.side_dims(psi.dims.dims)
    side = gamma.members if d_gamma <= d_bar else gamma.complement
    eigs = hermitian_eigenvalues(_reduced_matrix(psi, side))
    probs = np.clip(eigs[::-1], 0.0, 1.0)
    return SchmidtSpectrum(probs, eps)


def partial_trace(rho: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """保留 keep 中的子系统（按升序），对其余子系统求迹。"""
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("partial_trace: keep 不能为空")
    n = rho.n
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"partial_trace: keep={keep} 越界（n={n}）")
    if len(keep) == n:
        return rho
    traced = [k for k in range(n) if k not in keep]
    d = rho.dims
    dk, dt = d.dim_of(keep), d.dim_of(traced)
    perm = keep + traced + [n + k for k in keep] + [n + k for k in traced]
    t = rho.entries.reshape(d.dims + d.dims).transpose(perm).reshape(dk, dt, dk, dt)
    return DensityMatrix(d.sub(keep), np.einsum("ijkj->ik", t))


def partial_transpose(rho: Union[DensityMatrix, np.ndarray], parties: Iterable[int],
                      dims: Optional[DimsLike] = None) -> np.ndarray:
    """对 parties 做部分转置，返回普通矩阵（结果一般不是密度矩阵）。"""
    if isinstance(rho, DensityMatrix):
        d = rho.dims
        matrix = rho.entries
    else:
        if dims is None:
            raise ValueError("partial_transpose: 传入裸矩阵时必须给出 dims")
        d = as_dims(dims)
        matrix = np.asarray(rho, dtype=complex)
    n = d.n
    perm = list(range(2 * n))
    for k in parties:
        perm[k], perm[n + k] = n + k, k
    return matrix.reshape(d.dims + d.dims).transpose(perm).reshape(d.total, d.total)


# ==================== 局部操作 ====================

def apply_local_isometry(psi: PureState, party: int, isometry: np.ndarray,
                         out_dims: Sequence[int]) -> PureState:
    """
    对单个子系统施加等距映射 V: C^{d_party} → ⊗out_dims。

    输出子系统按 out_dims 顺序插入原位置，例如把 C 拆成 (C₁, C₂)。
    """
    if not 0 <= party < psi.n:
        raise ValueError(f"party={party} 越界（n={psi.n}）")
    out_dims = tuple(int(d) for d in out_dims)
    v = np.asarray(isometry, dtype=complex)
    d_in = psi.dims[party]
    if v.shape != (int(np.prod(out_dims)), d_in):
        raise ValueError(f"dimension mismatch: 等距矩阵形状 {v.shape} 与 ({np.prod(out_dims)}, {d_in}) 不符")
    tol = get_setting("numerics", "unitary_tol")
    deviation = float(np.max(np.abs(v.conj().T @ v - np.eye(d_in))))
    if deviation > tol:
        raise ValueError(f"matrix is not an isometry（V†V 偏差 {deviation!r} > {tol}）")
    moved = np.moveaxis(np.tensordot(v, psi.tensor, axes=([1], [party])), 0, party)
    new_dims = psi.dims.dims[:party] + out_dims + psi.dims.dims[party + 1:]
    return PureState.from_vector(new_dims, moved.reshape(-1))


def apply_local_unitary(psi: PureState, party: int, unitary: np.ndarray) -> PureState:
    """对单个子系统施加酉变换；Schmidt 谱在任意二分下不变。"""
    u = np.asarray(unitary, dtype=complex)
    d = psi.dims[party] if 0 <= party < psi.n else None
    if d is None or u.shape != (d, d):
        raise ValueError(f"dimension mismatch: 酉矩阵形状 {u.shape} 与子系统 {party} 不符")
    tol = get_setting("numerics", "unitary_tol")
    deviation = float(np.max(np.abs(u.conj().T @ u - np.eye(d))))
    if deviation > tol:
        raise ValueError(f"matrix is not unitary（偏差 {deviation!r} > {tol}）")
    return apply_local_isometry(psi, party, u, (d,))


def apply_local_channel(rho: DensityMatrix, party: int, kraus: Sequence[np.ndarray]) -> DensityMatrix:
    """对单个子系统施加 Kraus 形式的信道 Σ K ρ K†。"""
    n = rho.n
    if not 0 <= party < n:
        raise ValueError(f"party={party} 越界（n={n}）")
    d = rho.dims[party]
    ops = [np.asarray(k, dtype=complex) for k in kraus]
    if any(k.shape != (d, d) for k in ops):
        raise ValueError(f"dimension mismatch: Kraus 算符必须是 {d}×{d}")
    completeness = sum(k.conj().T @ k for k in ops)
    if float(np.max(np.abs(completeness - np.eye(d)))) > get_setting("numerics", "unitary_tol"):
        raise ValueError("Kraus 算符不满足完备性 Σ K†K = I")

    t = rho.entries.reshape(rho.dims.dims + rho.dims.dims)
    out = np.zeros_like(t)
    for k in ops:
        left = np.moveaxis(np.tensordot(k, t, axes=([1], [party])), 0, party)
        both = np.moveaxis(np.tensordot(left, k.conj(), axes=([n + party], [1])), -1, n + party)
        out = out + both
    total = rho.dims.total
    return DensityMatrix(rho.dims, out.reshape(total, total))


# ==================== 构造工具 ====================

def basis_state(dims: DimsLike, digits: Sequence[int]) -> PureState:
    """计算基矢 |digits⟩。"""
    d = as_dims(dims)
    if len(digits) != d.n or any(not 0 <= int(x) < d[k] for k, x in enumerate(digits)):
        raise ValueError(f"basis_state: digits={tuple(digits)} 与 dims={d.dims} 不符")
    amps = np.zeros(d.total, dtype=complex)
    amps[int(np.ravel_multi_index(tuple(int(x) for x in digits), d.dims))] = 1.0
    return PureState(d, amps)


def tensor(*states: PureState) -> PureState:
    """纯态张量积，子系统顺序按参数顺序拼接。"""
    if not states:
        raise ValueError("tensor 至少需要一个态")
    amps = states[0].amplitudes
    dims: List[int] = list(states[0].dims.dims)
    for s in states[1:]:
        amps = np.kron(amps, s.amplitudes)
        dims.extend(s.dims.dims)
    return PureState.from_vector(dims, amps)
