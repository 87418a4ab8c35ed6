"""
二分划分模块
负责按补集等价枚举所有二分划分 γ|γ̄，以及计数函数 c(γ)

规范形式：代表元总是包含第 0 方，因此 γ 与 γ̄ 只出现一次。
枚举顺序按位掩码升序（第 k 方对应第 k 位）。
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence, Tuple

from .config import get_setting


def _check_party_count(n: int) -> int:
    n = int(n)
    if n < 2:
        raise ValueError(f"二分划分至少需要 2 个子系统，当前 n={n}")
    max_parties = int(get_setting("numerics", "max_parties"))
    if n > max_parties:
        raise ValueError(f"子系统数超过上限 {max_parties}，当前 n={n}")
    return n


def _party_name(k: int, n: int) -> str:
    return chr(ord("A") + k) if n <= 26 else f"[{k}]"


@dataclass(frozen=True)
class Bipartition:
    """规范二分划分：members 为包含第 0 方的非空真子集（升序）。"""
    n: int
    members: Tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(k) for k in self.members)))
        n = int(self.n)
        if n < 2:
            raise ValueError(f"invalid bipartition: n={n} < 2")
        if not members or len(members) >= n:
            raise ValueError(f"invalid bipartition: {members} 必须是 {{0..{n - 1}}} 的非空真子集")
        if members[0] < 0 or members[-1] >= n:
            raise ValueError(f"invalid bipartition: {members} 越界（n={n}）")
        if members[0] != 0:
            raise ValueError(f"invalid bipartition: {members} 不是规范形式（必须包含第 0 方）")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, n: int, parties: Sequence[int]) -> "Bipartition":
        """由任意一侧构造规范二分划分（不含第 0 方时自动取补集）。"""
        parties = set(int(k) for k in parties)
        if 0 not in parties:
            parties = set(range(int(n))) - parties
        return cls(n, tuple(parties))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Bipartition":
        return cls.of(n, [k for k in range(n) if mask >> k & 1])

    @property
    def complement(self) -> Tuple[int, ...]:
        return tuple(k for k in range(self.n) if k not in self.members)

    @property
    def mask(self) -> int:
        return sum(1 << k for k in self.members)

    @property
    def label(self) -> str:
        left = "".join(_party_name(k, self.n) for k in self.members)
        right = "".join(_party_name(k, self.n) for k in self.complement)
        return f"{left}|{right}"

    def side_dims(self, dims: Sequence[int]) -> Tuple[int, int]:
        """返回 (d_γ, d_γ̄)。"""
        if len(dims) != self.n:
            raise ValueError(f"invalid bipartition: n={self.n} 与 dims 长度 {len(dims)} 不一致")
        d_gamma = 1
        for k in self.members:
            d_gamma *= int(dims[k])
        d_bar = 1
        for k in self.complement:
            d_bar *= int(dims[k])
        return d_gamma, d_bar

    def d_min(self, dims: Sequence[int]) -> int:
        """较小子系统的维数 d_min^γ。"""
        return min(self.side_dims(dims))

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class BipartitionSet:
    """某个 n 下全部规范二分划分。"""
    n: int
    items: Tuple[Bipartition, ...]

    def __iter__(self) -> Iterator[Bipartition]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, index: int) -> Bipartition:
        return self.items[index]


@lru_cache(maxsize=None)
def enumerate_bipartitions(n: int) -> BipartitionSet:
    """枚举全部 2^(n−1) − 1 个规范二分划分，按位掩码升序。"""
    n = _check_party_count(n)
    full = (1 << n) - 1
    items = tuple(
        Bipartition.from_mask(n, mask)
        for mask in range(1, full, 2)  # 奇数掩码即包含第 0 方
    )
    return BipartitionSet(n, items)


def count_bipartitions(n: int) -> int:
    """c(γ)：按 n 奇偶分两支求和的二分划分数目。"""
    n = _check_party_count(n)
    if n % 2 == 1:
        return sum(comb(n, m) for m in range(1, (n - 1) // 2 + 1))
    return sum(comb(n, m) for m in range(1, (n - 2) // 2 + 1)) + comb(n, n // 2) // 2
